#include "roekms/io.hpp"

#include <cstdio>
#include <ostream>

namespace roekms::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json space_to_json(const FiniteSpace& space) {
  json j;
  j["kind"] = to_string(space.kind());
  json params = json::object();
  switch (space.kind()) {
    case SpaceKind::tree:
      params["branching"] = space.tree_branching();
      params["depth"] = space.tree_depth();
      break;
    default:
      params["size"] = space.size();
      break;
  }
  j["params"] = params;
  json points = json::array();
  for (long long x = 0; x < space.size(); ++x)
    points.push_back({{"id", x}, {"label", space.label(x)}});
  j["points"] = points;
  if (space.kind() == SpaceKind::custom) {
    json rows = json::array();
    for (long long x = 0; x < space.size(); ++x) {
      json row = json::array();
      for (long long y = 0; y <= x; ++y) row.push_back(space.dist(x, y));
      rows.push_back(row);
    }
    j["dist"] = rows;
  } else {
    j["dist"] = "formula";
  }
  return j;
}

json translation_to_json(const PartialTranslation& f) {
  json dom = json::array(), img = json::array();
  for (auto& [x, y] : f.pairs()) {
    dom.push_back(x);
    img.push_back(y);
  }
  return {{"domain", dom}, {"image", img}};
}

PartialTranslation translation_from_json(const SpacePtr& space, const json& j) {
  const auto& dom = j.at("domain");
  const auto& img = j.at("image");
  if (dom.size() != img.size())
    throw validation_error("translation json: domain/image length mismatch");
  std::vector<std::pair<long long, long long>> pairs;
  pairs.reserve(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i)
    pairs.emplace_back(dom[i].get<long long>(), img[i].get<long long>());
  return PartialTranslation::from_pairs(space, std::move(pairs));
}

json operator_to_json(const BandOperator& a) {
  json rows = json::array(), cols = json::array(), re = json::array(), im = json::array();
  for (auto& [xy, v] : a.entries()) {
    rows.push_back(xy.first);
    cols.push_back(xy.second);
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"rows", rows}, {"cols", cols}, {"re", re}, {"im", im}};
}

BandOperator operator_from_json(const SpacePtr& space, const json& j) {
  const auto& rows = j.at("rows");
  const auto& cols = j.at("cols");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (rows.size() != cols.size() || rows.size() != re.size() || rows.size() != im.size())
    throw validation_error("operator json: triplet arrays must have equal length");
  BandOperator::EntryMap entries;
  for (std::size_t i = 0; i < rows.size(); ++i)
    entries[{rows[i].get<long long>(), cols[i].get<long long>()}] =
        Complex{re[i].get<double>(), im[i].get<double>()};
  return BandOperator::from_entries(space, std::move(entries));
}

void write_matrix_market(std::ostream& os, const BandOperator& a) {
  os << "%%MatrixMarket matrix coordinate complex general\n";
  os << a.space()->size() << ' ' << a.space()->size() << ' ' << a.entries().size() << '\n';
  for (auto& [xy, v] : a.entries())
    os << (xy.first + 1) << ' ' << (xy.second + 1) << ' ' << format_double(v.real()) << ' '
       << format_double(v.imag()) << '\n';
}

json kms_report_to_json(const KmsReport& rep) {
  json j;
  j["beta"] = rep.beta;
  if (rep.defect_direct) j["defect_direct"] = *rep.defect_direct;
  if (rep.defect_criterion) j["defect_criterion"] = *rep.defect_criterion;
  j["max_defect"] = rep.max_defect();
  j["samples"] = rep.samples;
  j["worst_witness"] = rep.worst_witness;
  return j;
}

void write_state_csv(std::ostream& os, const DiagonalState& phi) {
  os << "id,label,weight\n";
  for (long long x = 0; x < phi.space->size(); ++x)
    os << x << ',' << phi.space->label(x) << ',' << format_double(phi.weight(x)) << '\n';
  if (phi.mass_at_infinity != 0.0)
    os << "# mass_at_infinity," << format_double(phi.mass_at_infinity) << '\n';
}

void write_profile_csv(std::ostream& os, const std::string& key_name,
                       const std::string& value_name,
                       const std::vector<std::pair<long long, double>>& rows) {
  os << key_name << ',' << value_name << '\n';
  for (auto& [k, v] : rows) os << k << ',' << format_double(v) << '\n';
}

json phase_report_to_json(const tree::PhaseReport& rep) {
  json j;
  j["n"] = rep.n;
  j["depths"] = rep.depths;
  json rows = json::array();
  for (const auto& r : rep.rows) {
    json row;
    row["beta"] = r.beta;
    row["verdict"] = r.verdict;
    row["Z_tail"] = std::isfinite(r.z_tail) ? json(r.z_tail) : json("inf");
    row["escaped_mass"] = std::isnan(r.escaped_mass) ? json(nullptr) : json(r.escaped_mass);
    row["kms_defect"] = std::isnan(r.kms_defect) ? json(nullptr) : json(r.kms_defect);
    row["witness"] = r.witness;
    rows.push_back(row);
  }
  j["rows"] = rows;
  if (rep.boundary_lower) j["boundary_lower"] = *rep.boundary_lower;
  if (rep.boundary_upper) j["boundary_upper"] = *rep.boundary_upper;
  return j;
}

void write_phase_report_csv(std::ostream& os, const tree::PhaseReport& rep) {
  os << "beta,verdict,Z_tail,escaped_mass,kms_defect\n";
  for (const auto& r : rep.rows)
    os << format_double(r.beta) << ',' << r.verdict << ',' << format_double(r.z_tail) << ','
       << format_double(r.escaped_mass) << ',' << format_double(r.kms_defect) << '\n';
}

json critical_result_to_json(const CriticalBetaResult& res) {
  json j;
  j["monotone"] = res.monotone;
  if (res.estimate) j["estimate"] = *res.estimate;
  if (res.last_divergent) j["last_divergent"] = *res.last_divergent;
  if (res.first_convergent) j["first_convergent"] = *res.first_convergent;
  json per = json::array();
  for (const auto& cv : res.per_beta) {
    json row;
    row["beta"] = cv.beta;
    row["verdict"] = to_string(cv.verdict);
    json ev = json::array();
    for (auto& [d, s] : cv.evidence) ev.push_back({{"depth", d}, {"log_sum", s}});
    row["evidence"] = ev;
    per.push_back(row);
  }
  j["per_beta"] = per;
  return j;
}

}  // namespace roekms::io
