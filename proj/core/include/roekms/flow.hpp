#pragma once

#include <string>
#include <vector>

#include "roekms/band_operator.hpp"

namespace roekms {

/// A real potential h on the points of a space. The induced flow is
/// conjugation by the diagonal exponential of h.
struct Potential {
  SpacePtr space;
  std::vector<double> values;

  double operator()(long long x) const { return values[static_cast<std::size_t>(x)]; }
};

/// Named potentials used by the CLI and the test harness:
///   word-length     tree only, h = |x|
///   log-label       h = log(1 + label)
///   log-sqrt-label  h = log(sqrt(label)), labels must be >= 1
///   label           h = label
///   zero            h = 0
Potential named_potential(SpacePtr space, const std::string& name);

Potential potential_from_values(SpacePtr space, std::vector<double> values);

/// Pairs (r, w(r)) with w(r) = max{|h(x)-h(y)| : d(x,y) <= r}.
struct CoarsenessProfile {
  std::vector<std::pair<double, double>> pairs;
};

CoarsenessProfile coarseness_modulus(const Potential& h, const std::vector<double>& radii);

/// sigma_{h,t}: entry (x,y) is multiplied by e^{it(h(x)-h(y))}. Support and
/// propagation are untouched; entry magnitudes are preserved.
BandOperator evolve(const BandOperator& a, const Potential& h, double t);

/// sigma_{h,i*beta}: entry (x,y) is multiplied by e^{-beta(h(x)-h(y))}.
/// Reports a magnitude error when an exponent would exceed the double range.
BandOperator analytic_evolve(const BandOperator& a, const Potential& h, double beta);

}  // namespace roekms
