#pragma once

#include <optional>
#include <string>
#include <vector>

#include "roekms/flow.hpp"

namespace roekms {

/// A state factored through the conditional expectation E: nonnegative
/// diagonal weights, plus the mass a truncation sequence has pushed past the
/// finite stage. Weights + mass_at_infinity must sum to 1.
struct DiagonalState {
  SpacePtr space;
  std::vector<double> weights;
  double mass_at_infinity = 0.0;

  double weight(long long x) const { return weights[static_cast<std::size_t>(x)]; }
  /// phi(a) = sum_x w(x) a_{x,x}; this is phi = phi o E by construction.
  Complex eval(const BandOperator& a) const;
  double eval_diag(const std::vector<double>& diag) const;
  double mass_of(const PointSet& a) const;
  void validate(double tol = 1e-12) const;
};

DiagonalState uniform_state(SpacePtr space);
DiagonalState state_from_weights(SpacePtr space, std::vector<double> w,
                                 double mass_at_infinity = 0.0);

/// A not-necessarily-diagonal state phi(a) = sum_{x,y} rho_{y,x} a_{x,y},
/// used to probe the factor-through-E theorem rather than assume it.
struct MatrixState {
  BandOperator density;

  Complex eval(const BandOperator& a) const;
  double offdiagonal_mass() const;
  void validate(double tol = 1e-12) const;
};

struct KmsReport {
  double beta = 0.0;
  std::optional<double> defect_direct;
  std::optional<double> defect_criterion;
  long long samples = 0;
  std::string worst_witness;

  double max_defect() const {
    double d = 0.0;
    if (defect_direct) d = std::max(d, *defect_direct);
    if (defect_criterion) d = std::max(d, *defect_criterion);
    return d;
  }
};

/// Z(beta) = sum_x e^{-beta h(x)}, summed in ascending id order with a
/// max-exponent shift. Reports a magnitude error if the result itself is not
/// representable.
double partition_function(const Potential& h, double beta);

/// log Z(beta); never overflows on a finite space.
double log_partition_function(const Potential& h, double beta);

/// w(x) = e^{-beta h(x)} / Z(beta).
DiagonalState gibbs_state(const Potential& h, double beta);

/// Direct KMS check: max over pairs of |phi(a sigma_{i beta}(b)) - phi(b a)|.
KmsReport kms_defect_direct(const DiagonalState& phi, const Potential& h, double beta,
                            const std::vector<std::pair<BandOperator, BandOperator>>& pairs);
KmsReport kms_defect_direct(const MatrixState& phi, const Potential& h, double beta,
                            const std::vector<std::pair<BandOperator, BandOperator>>& pairs);

/// Criterion check: max over translations f of
/// |phi(chi_{Im f}) - phi(chi_{Dom f} e^{beta(h - h o f)})|.
KmsReport kms_defect_criterion(const DiagonalState& phi, const Potential& h, double beta,
                               const std::vector<PartialTranslation>& translations);

/// tau -> phi with density e^{-beta h} against the trace, normalized.
DiagonalState trace_to_kms(const DiagonalState& tau, const Potential& h, double beta);
/// Inverse transform; the round trip is the identity up to rounding.
DiagonalState kms_to_trace(const DiagonalState& phi, const Potential& h, double beta);

/// phi_c(a) = phi(a c) / phi(c) for a nonnegative diagonal c.
DiagonalState condition_state(const DiagonalState& phi, const std::vector<double>& c);

/// Pointwise limit of weights across a truncation sequence. The limit profile
/// lives on the core (the first space); residual is the mass that escapes.
struct ScPartResult {
  std::vector<double> core_limits;
  double residual = 0.0;
  bool stabilized = false;
  double worst_increment = 0.0;
};

ScPartResult sc_part(const std::vector<DiagonalState>& states_per_depth, double tol = 1e-9);

/// Seeded population for the direct verifier: matrix units, isometries of
/// random translations, and random band operators with |entries| <= 1.
std::vector<std::pair<BandOperator, BandOperator>> operator_pair_population(SpacePtr space,
                                                                            int count,
                                                                            std::uint64_t seed);

/// Seeded population for the criterion verifier.
std::vector<PartialTranslation> translation_population(SpacePtr space, int count,
                                                       std::uint64_t seed);

}  // namespace roekms
