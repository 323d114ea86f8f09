#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "roekms/tree.hpp"

namespace roekms::io {

/// Shortest representation that round-trips a double ("%.17g", '.' decimal).
std::string format_double(double v);

/// {kind, params, points:[{id,label}], dist: "formula" or the dense lower
/// triangle for custom spaces}.
nlohmann::json space_to_json(const FiniteSpace& space);

/// {domain:[ids], image:[ids]} parallel arrays.
nlohmann::json translation_to_json(const PartialTranslation& f);
PartialTranslation translation_from_json(const SpacePtr& space, const nlohmann::json& j);

/// Sparse triplets {rows, cols, re, im} in entry order.
nlohmann::json operator_to_json(const BandOperator& a);
BandOperator operator_from_json(const SpacePtr& space, const nlohmann::json& j);

/// Matrix Market coordinate format (1-based indices, complex general).
void write_matrix_market(std::ostream& os, const BandOperator& a);

nlohmann::json kms_report_to_json(const KmsReport& rep);

/// CSV with header id,label,weight; a trailing comment row carries the mass
/// at infinity when it is nonzero.
void write_state_csv(std::ostream& os, const DiagonalState& phi);

/// CSV pairs (depth,value) under the given column names.
void write_profile_csv(std::ostream& os, const std::string& key_name,
                       const std::string& value_name,
                       const std::vector<std::pair<long long, double>>& rows);

nlohmann::json phase_report_to_json(const tree::PhaseReport& rep);
void write_phase_report_csv(std::ostream& os, const tree::PhaseReport& rep);

nlohmann::json critical_result_to_json(const CriticalBetaResult& res);

}  // namespace roekms::io
