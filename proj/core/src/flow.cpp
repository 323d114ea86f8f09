#include "roekms/flow.hpp"

#include <cmath>

namespace roekms {

Potential named_potential(SpacePtr space, const std::string& name) {
  Potential h;
  auto n = static_cast<std::size_t>(space->size());
  h.values.resize(n);
  if (name == "word-length") {
    if (space->kind() != SpaceKind::tree)
      throw validation_error("potential word-length: tree spaces only");
    for (long long x = 0; x < space->size(); ++x)
      h.values[static_cast<std::size_t>(x)] = static_cast<double>(space->word_length(x));
  } else if (name == "log-label") {
    for (long long x = 0; x < space->size(); ++x)
      h.values[static_cast<std::size_t>(x)] =
          std::log(1.0 + static_cast<double>(space->numeric_label(x)));
  } else if (name == "log-sqrt-label") {
    for (long long x = 0; x < space->size(); ++x) {
      auto lbl = space->numeric_label(x);
      if (lbl < 1) throw validation_error("potential log-sqrt-label: labels must be >= 1");
      h.values[static_cast<std::size_t>(x)] = 0.5 * std::log(static_cast<double>(lbl));
    }
  } else if (name == "label") {
    for (long long x = 0; x < space->size(); ++x)
      h.values[static_cast<std::size_t>(x)] = static_cast<double>(space->numeric_label(x));
  } else if (name == "zero") {
    // already zero
  } else {
    throw validation_error("unknown potential: " + name);
  }
  h.space = std::move(space);
  return h;
}

Potential potential_from_values(SpacePtr space, std::vector<double> values) {
  if (static_cast<long long>(values.size()) != space->size())
    throw validation_error("potential: value count does not match space size");
  Potential h;
  h.space = std::move(space);
  h.values = std::move(values);
  return h;
}

CoarsenessProfile coarseness_modulus(const Potential& h, const std::vector<double>& radii) {
  const FiniteSpace& X = *h.space;
  CoarsenessProfile prof;
  prof.pairs.reserve(radii.size());
  for (double r : radii) {
    double w = 0.0;
    for (long long x = 0; x < X.size(); ++x)
      for (long long y = x + 1; y < X.size(); ++y)
        if (X.dist(x, y) <= r) w = std::max(w, std::abs(h(x) - h(y)));
    prof.pairs.emplace_back(r, w);
  }
  return prof;
}

BandOperator evolve(const BandOperator& a, const Potential& h, double t) {
  if (!a.space()->same_as(*h.space)) throw validation_error("evolve: potential on another space");
  BandOperator::EntryMap out;
  for (auto& [xy, v] : a.entries()) {
    double arg = t * (h(xy.first) - h(xy.second));
    out[xy] = v * Complex{std::cos(arg), std::sin(arg)};
  }
  return BandOperator::from_entries(a.space(), std::move(out));
}

BandOperator analytic_evolve(const BandOperator& a, const Potential& h, double beta) {
  if (!a.space()->same_as(*h.space))
    throw validation_error("analytic_evolve: potential on another space");
  BandOperator::EntryMap out;
  for (auto& [xy, v] : a.entries()) {
    double e = -beta * (h(xy.first) - h(xy.second));
    if (std::abs(e) > kExpLimit)
      throw overflow_error("analytic_evolve: exponent " + std::to_string(e) + " at entry (" +
                           std::to_string(xy.first) + "," + std::to_string(xy.second) +
                           ") exceeds the double range");
    out[xy] = v * std::exp(e);
  }
  return BandOperator::from_entries(a.space(), std::move(out));
}

}  // namespace roekms
