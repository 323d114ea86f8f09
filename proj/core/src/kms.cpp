#include "roekms/kms.hpp"

#include <algorithm>
#include <cmath>

namespace roekms {

Complex DiagonalState::eval(const BandOperator& a) const {
  KahanSum sr, si;
  for (auto& [xy, v] : a.entries()) {
    if (xy.first != xy.second) continue;
    double w = weight(xy.first);
    sr.add(w * v.real());
    si.add(w * v.imag());
  }
  return {sr.value(), si.value()};
}

double DiagonalState::eval_diag(const std::vector<double>& diag) const {
  KahanSum s;
  for (std::size_t x = 0; x < weights.size(); ++x) s.add(weights[x] * diag[x]);
  return s.value();
}

double DiagonalState::mass_of(const PointSet& a) const {
  KahanSum s;
  for (long long x : a) s.add(weight(x));
  return s.value();
}

void DiagonalState::validate(double tol) const {
  KahanSum s;
  for (double w : weights) {
    if (w < 0.0) throw validation_error("diagonal state: negative weight");
    s.add(w);
  }
  if (mass_at_infinity < -tol || mass_at_infinity > 1.0 + tol)
    throw validation_error("diagonal state: mass at infinity outside [0,1]");
  if (std::abs(s.value() + mass_at_infinity - 1.0) > tol)
    throw validation_error("diagonal state: total mass " +
                           std::to_string(s.value() + mass_at_infinity) + " != 1");
}

DiagonalState uniform_state(SpacePtr space) {
  DiagonalState phi;
  auto n = static_cast<std::size_t>(space->size());
  phi.space = std::move(space);
  phi.weights.assign(n, 1.0 / static_cast<double>(n));
  return phi;
}

DiagonalState state_from_weights(SpacePtr space, std::vector<double> w, double mass_at_infinity) {
  DiagonalState phi;
  phi.space = std::move(space);
  phi.weights = std::move(w);
  phi.mass_at_infinity = mass_at_infinity;
  phi.validate();
  return phi;
}

Complex MatrixState::eval(const BandOperator& a) const {
  Complex s{};
  for (auto& [yx, r] : density.entries()) s += r * a.at(yx.second, yx.first);
  return s;
}

double MatrixState::offdiagonal_mass() const {
  double m = 0.0;
  for (auto& [xy, v] : density.entries())
    if (xy.first != xy.second) m += std::abs(v);
  return m;
}

void MatrixState::validate(double tol) const {
  Complex tr{};
  for (auto& [xy, v] : density.entries())
    if (xy.first == xy.second) {
      if (v.real() < -tol) throw validation_error("matrix state: negative diagonal entry");
      tr += v;
    }
  if (std::abs(tr - Complex{1.0, 0.0}) > tol)
    throw validation_error("matrix state: trace != 1");
}

namespace {
// Max of -beta*h and the shifted sum; shared by Z, log Z and Gibbs.
struct ShiftedSum {
  double max_exp;
  double sum;  // sum of e^{-beta h - max_exp}
};

ShiftedSum shifted_boltzmann_sum(const Potential& h, double beta) {
  double m = -beta * h(0);
  for (long long x = 1; x < h.space->size(); ++x) m = std::max(m, -beta * h(x));
  KahanSum s;
  bool kahan = h.space->size() > 10000;
  double plain = 0.0;
  for (long long x = 0; x < h.space->size(); ++x) {
    double t = std::exp(-beta * h(x) - m);
    if (kahan)
      s.add(t);
    else
      plain += t;
  }
  return {m, kahan ? s.value() : plain};
}
}  // namespace

double partition_function(const Potential& h, double beta) {
  auto [m, s] = shifted_boltzmann_sum(h, beta);
  double log_z = m + std::log(s);
  if (log_z > kExpLimit)
    throw overflow_error("partition function: log Z = " + std::to_string(log_z) +
                         " (max exponent " + std::to_string(m) + ") exceeds the double range");
  return std::exp(m) * s;
}

double log_partition_function(const Potential& h, double beta) {
  auto [m, s] = shifted_boltzmann_sum(h, beta);
  return m + std::log(s);
}

DiagonalState gibbs_state(const Potential& h, double beta) {
  auto [m, s] = shifted_boltzmann_sum(h, beta);
  DiagonalState phi;
  phi.space = h.space;
  phi.weights.resize(static_cast<std::size_t>(h.space->size()));
  for (long long x = 0; x < h.space->size(); ++x)
    phi.weights[static_cast<std::size_t>(x)] = std::exp(-beta * h(x) - m) / s;
  return phi;
}

namespace {
template <typename State>
KmsReport defect_direct_impl(const State& phi, const Potential& h, double beta,
                             const std::vector<std::pair<BandOperator, BandOperator>>& pairs) {
  KmsReport rep;
  rep.beta = beta;
  double worst = 0.0;
  long long i = 0;
  for (auto& [a, b] : pairs) {
    Complex lhs = phi.eval(a * analytic_evolve(b, h, beta));
    Complex rhs = phi.eval(b * a);
    double d = std::abs(lhs - rhs);
    if (d >= worst) {
      worst = d;
      rep.worst_witness = "pair " + std::to_string(i);
    }
    ++i;
  }
  rep.defect_direct = worst;
  rep.samples = i;
  return rep;
}
}  // namespace

KmsReport kms_defect_direct(const DiagonalState& phi, const Potential& h, double beta,
                            const std::vector<std::pair<BandOperator, BandOperator>>& pairs) {
  return defect_direct_impl(phi, h, beta, pairs);
}

KmsReport kms_defect_direct(const MatrixState& phi, const Potential& h, double beta,
                            const std::vector<std::pair<BandOperator, BandOperator>>& pairs) {
  return defect_direct_impl(phi, h, beta, pairs);
}

KmsReport kms_defect_criterion(const DiagonalState& phi, const Potential& h, double beta,
                               const std::vector<PartialTranslation>& translations) {
  KmsReport rep;
  rep.beta = beta;
  double worst = 0.0;
  long long i = 0;
  for (const auto& f : translations) {
    KahanSum lhs, rhs;
    for (auto& [x, y] : f.pairs()) {
      rhs.add(phi.weight(y));
      double e = beta * (h(x) - h(y));
      if (std::abs(e) > kExpLimit)
        throw overflow_error("kms criterion: exponent exceeds the double range");
      lhs.add(phi.weight(x) * std::exp(e));
    }
    double d = std::abs(rhs.value() - lhs.value());
    if (d >= worst) {
      worst = d;
      rep.worst_witness = "translation " + std::to_string(i);
    }
    ++i;
  }
  rep.defect_criterion = worst;
  rep.samples = i;
  return rep;
}

namespace {
DiagonalState reweigh(const DiagonalState& in, const Potential& h, double beta_sign) {
  double m = beta_sign * h(0);
  for (long long x = 1; x < h.space->size(); ++x) m = std::max(m, beta_sign * h(x));
  DiagonalState out;
  out.space = in.space;
  out.weights.resize(in.weights.size());
  KahanSum z;
  for (long long x = 0; x < h.space->size(); ++x) {
    double q = in.weight(x) * std::exp(beta_sign * h(x) - m);
    out.weights[static_cast<std::size_t>(x)] = q;
    z.add(q);
  }
  if (z.value() == 0.0) throw validation_error("trace/KMS transform: zero normalizer");
  for (double& w : out.weights) w /= z.value();
  return out;
}
}  // namespace

DiagonalState trace_to_kms(const DiagonalState& tau, const Potential& h, double beta) {
  return reweigh(tau, h, -beta);
}

DiagonalState kms_to_trace(const DiagonalState& phi, const Potential& h, double beta) {
  return reweigh(phi, h, beta);
}

DiagonalState condition_state(const DiagonalState& phi, const std::vector<double>& c) {
  KahanSum z;
  for (std::size_t x = 0; x < phi.weights.size(); ++x) {
    if (c[x] < 0.0) throw validation_error("condition_state: conditioning diagonal must be >= 0");
    z.add(phi.weights[x] * c[x]);
  }
  if (z.value() <= 0.0) throw validation_error("condition_state: phi(c) = 0, conditioning undefined");
  DiagonalState out;
  out.space = phi.space;
  out.weights.resize(phi.weights.size());
  for (std::size_t x = 0; x < phi.weights.size(); ++x)
    out.weights[x] = phi.weights[x] * c[x] / z.value();
  return out;
}

ScPartResult sc_part(const std::vector<DiagonalState>& states_per_depth, double tol) {
  if (states_per_depth.size() < 2)
    throw validation_error("sc_part: need at least two truncation stages");
  const auto& core = states_per_depth.front();
  const auto& last = states_per_depth.back();
  ScPartResult res;
  res.core_limits.resize(core.weights.size());
  double worst = 0.0;
  for (std::size_t x = 0; x < core.weights.size(); ++x) {
    res.core_limits[x] = last.weights[x];
    const auto& prev = states_per_depth[states_per_depth.size() - 2];
    worst = std::max(worst, std::abs(last.weights[x] - prev.weights[x]));
  }
  res.worst_increment = worst;
  res.stabilized = worst <= tol;
  KahanSum s;
  for (double w : res.core_limits) s.add(w);
  res.residual = 1.0 - s.value();
  return res;
}

std::vector<std::pair<BandOperator, BandOperator>> operator_pair_population(SpacePtr space,
                                                                            int count,
                                                                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<BandOperator, BandOperator>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  long long n = space->size();
  for (int i = 0; i < count; ++i) {
    switch (i % 3) {
      case 0: {  // matrix units e_{x,y}, e_{y,x}
        long long x = rng.next_int(static_cast<int>(n));
        long long y = rng.next_int(static_cast<int>(n));
        pairs.emplace_back(BandOperator::matrix_unit(space, x, y),
                           BandOperator::matrix_unit(space, y, x));
        break;
      }
      case 1: {  // isometries of random translations
        auto f = random_partial_translation(space, 3.0, rng);
        pairs.emplace_back(BandOperator::isometry_of(f),
                           BandOperator::isometry_of(f).adjoint());
        break;
      }
      default: {  // random band operators
        pairs.emplace_back(random_band_operator(space, 2.0, 0.4, rng),
                           random_band_operator(space, 2.0, 0.4, rng));
        break;
      }
    }
  }
  return pairs;
}

std::vector<PartialTranslation> translation_population(SpacePtr space, int count,
                                                       std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PartialTranslation> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(random_partial_translation(space, 3.0, rng));
  return out;
}

}  // namespace roekms
