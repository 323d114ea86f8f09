#include "roekms/band_operator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace roekms {

BandOperator BandOperator::zero(SpacePtr space) {
  BandOperator a;
  a.space_ = std::move(space);
  return a;
}

BandOperator BandOperator::identity(SpacePtr space) {
  BandOperator a;
  for (long long x = 0; x < space->size(); ++x) a.entries_[{x, x}] = 1.0;
  a.space_ = std::move(space);
  return a;
}

BandOperator BandOperator::matrix_unit(SpacePtr space, long long x, long long y, Complex v) {
  BandOperator a;
  a.space_ = std::move(space);
  if (v != Complex{}) {
    a.entries_[{x, y}] = v;
    a.propagation_ = a.space_->dist(x, y);
  }
  return a;
}

BandOperator BandOperator::from_diagonal(const Diagonal& d) {
  BandOperator a;
  a.space_ = d.space;
  for (long long x = 0; x < a.space_->size(); ++x)
    if (d[x] != Complex{}) a.entries_[{x, x}] = d[x];
  return a;
}

BandOperator BandOperator::from_entries(SpacePtr space, EntryMap entries) {
  BandOperator a;
  a.space_ = std::move(space);
  for (auto it = entries.begin(); it != entries.end();)
    it = (it->second == Complex{}) ? entries.erase(it) : std::next(it);
  a.entries_ = std::move(entries);
  a.recompute_propagation();
  return a;
}

BandOperator BandOperator::isometry_of(const PartialTranslation& f) {
  BandOperator a;
  a.space_ = f.space();
  for (auto& [x, y] : f.pairs()) a.entries_[{y, x}] = 1.0;
  a.recompute_propagation();
  return a;
}

void BandOperator::recompute_propagation() {
  propagation_ = 0.0;
  for (auto& [xy, v] : entries_)
    propagation_ = std::max(propagation_, space_->dist(xy.first, xy.second));
}

Complex BandOperator::at(long long x, long long y) const {
  auto it = entries_.find({x, y});
  return it == entries_.end() ? Complex{} : it->second;
}

Diagonal BandOperator::expectation() const {
  Diagonal d = Diagonal::zero(space_);
  for (auto& [xy, v] : entries_)
    if (xy.first == xy.second) d[xy.first] = v;
  return d;
}

BandOperator BandOperator::adjoint() const {
  EntryMap out;
  for (auto& [xy, v] : entries_) out[{xy.second, xy.first}] = std::conj(v);
  return from_entries(space_, std::move(out));
}

BandOperator BandOperator::scaled(Complex c) const {
  EntryMap out;
  if (c != Complex{})
    for (auto& [xy, v] : entries_) out[xy] = c * v;
  return from_entries(space_, std::move(out));
}

double BandOperator::norm_bound() const {
  std::unordered_map<long long, double> row, col;
  for (auto& [xy, v] : entries_) {
    double m = std::abs(v);
    row[xy.first] += m;
    col[xy.second] += m;
  }
  double r = 0.0;
  for (auto& [k, s] : row) r = std::max(r, s);
  for (auto& [k, s] : col) r = std::max(r, s);
  return r;
}

double BandOperator::max_entry_magnitude() const {
  double m = 0.0;
  for (auto& [xy, v] : entries_) m = std::max(m, std::abs(v));
  return m;
}

namespace {
void check_same(const BandOperator& a, const BandOperator& b) {
  if (!a.space()->same_as(*b.space()))
    throw validation_error("band operator arithmetic: dimension mismatch");
}
}  // namespace

BandOperator operator+(const BandOperator& a, const BandOperator& b) {
  check_same(a, b);
  BandOperator::EntryMap out = a.entries();
  for (auto& [xy, v] : b.entries()) out[xy] += v;
  return BandOperator::from_entries(a.space(), std::move(out));
}

BandOperator operator-(const BandOperator& a, const BandOperator& b) {
  check_same(a, b);
  BandOperator::EntryMap out = a.entries();
  for (auto& [xy, v] : b.entries()) out[xy] -= v;
  return BandOperator::from_entries(a.space(), std::move(out));
}

BandOperator operator*(const BandOperator& a, const BandOperator& b) {
  check_same(a, b);
  BandOperator::EntryMap out;
  const auto& be = b.entries();
  for (auto& [xy, v] : a.entries()) {
    auto it = be.lower_bound({xy.second, std::numeric_limits<long long>::min()});
    for (; it != be.end() && it->first.first == xy.second; ++it)
      out[{xy.first, it->first.second}] += v * it->second;
  }
  return BandOperator::from_entries(a.space(), std::move(out));
}

BandOperator diag_times(const Diagonal& d, const BandOperator& a) {
  BandOperator::EntryMap out;
  for (auto& [xy, v] : a.entries()) {
    Complex w = d[xy.first] * v;
    if (w != Complex{}) out[xy] = w;
  }
  return BandOperator::from_entries(a.space(), std::move(out));
}

BandOperator times_diag(const BandOperator& a, const Diagonal& d) {
  BandOperator::EntryMap out;
  for (auto& [xy, v] : a.entries()) {
    Complex w = v * d[xy.second];
    if (w != Complex{}) out[xy] = w;
  }
  return BandOperator::from_entries(a.space(), std::move(out));
}

std::vector<std::pair<Diagonal, PartialTranslation>> band_decompose(const BandOperator& a) {
  // Each class holds entries (x, y) forming a partial bijection y -> x.
  struct Slot {
    std::unordered_map<long long, bool> rows, cols;
    std::vector<std::pair<long long, long long>> map_pairs;  // (y, x) = (domain, image)
    Diagonal diag;
  };
  std::vector<Slot> slots;
  for (auto& [xy, v] : a.entries()) {
    auto [x, y] = xy;
    std::size_t k = 0;
    for (; k < slots.size(); ++k)
      if (!slots[k].rows.count(x) && !slots[k].cols.count(y)) break;
    if (k == slots.size()) {
      slots.emplace_back();
      slots.back().diag = Diagonal::zero(a.space());
    }
    slots[k].rows[x] = true;
    slots[k].cols[y] = true;
    slots[k].map_pairs.emplace_back(y, x);
    slots[k].diag[x] = v;
  }
  std::vector<std::pair<Diagonal, PartialTranslation>> out;
  out.reserve(slots.size());
  for (auto& s : slots)
    out.emplace_back(std::move(s.diag),
                     PartialTranslation::from_pairs(a.space(), std::move(s.map_pairs)));
  return out;
}

BandOperator reassemble(const SpacePtr& space,
                        const std::vector<std::pair<Diagonal, PartialTranslation>>& terms) {
  BandOperator out = BandOperator::zero(space);
  for (auto& [d, f] : terms) out = out + diag_times(d, BandOperator::isometry_of(f));
  return out;
}

BandOperator random_band_operator(SpacePtr space, double radius, double density, Rng& rng) {
  BandOperator::EntryMap entries;
  long long n = space->size();
  for (long long x = 0; x < n; ++x) {
    for (long long y : space->ball(x, radius)) {
      if (rng.next_double() >= density) continue;
      entries[{x, y}] = Complex{rng.next_signed(), rng.next_signed()} * 0.5;
    }
  }
  return BandOperator::from_entries(std::move(space), std::move(entries));
}

}  // namespace roekms
