#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "roekms/translation.hpp"

namespace roekms {

using Complex = std::complex<double>;

/// Element of ell_infty(X) as a diagonal matrix.
struct Diagonal {
  SpacePtr space;
  std::vector<Complex> values;

  static Diagonal zero(SpacePtr s) {
    Diagonal d;
    d.values.assign(static_cast<std::size_t>(s->size()), Complex{});
    d.space = std::move(s);
    return d;
  }
  static Diagonal indicator(SpacePtr s, const PointSet& a) {
    Diagonal d = zero(std::move(s));
    for (long long x : a) d.values[static_cast<std::size_t>(x)] = 1.0;
    return d;
  }
  Complex& operator[](long long x) { return values[static_cast<std::size_t>(x)]; }
  Complex operator[](long long x) const { return values[static_cast<std::size_t>(x)]; }
};

/// A finite-propagation matrix over a finite space. Entries are sparse,
/// zero entries are never stored, and the propagation (max distance over the
/// support) is kept alongside the data.
class BandOperator {
public:
  using EntryMap = std::map<std::pair<long long, long long>, Complex>;

  static BandOperator zero(SpacePtr space);
  static BandOperator identity(SpacePtr space);
  static BandOperator matrix_unit(SpacePtr space, long long x, long long y, Complex v = 1.0);
  static BandOperator from_diagonal(const Diagonal& d);
  static BandOperator from_entries(SpacePtr space, EntryMap entries);
  /// v_f: delta_x -> delta_{f(x)}; entry 1 at (f(x), x).
  static BandOperator isometry_of(const PartialTranslation& f);

  const SpacePtr& space() const { return space_; }
  const EntryMap& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  Complex at(long long x, long long y) const;
  double propagation() const { return propagation_; }

  /// E(a): delete everything off the main diagonal.
  Diagonal expectation() const;

  BandOperator adjoint() const;
  BandOperator scaled(Complex c) const;
  /// Crude norm bound: max of the row and column l1 norms.
  double norm_bound() const;
  double max_entry_magnitude() const;

  friend BandOperator operator+(const BandOperator& a, const BandOperator& b);
  friend BandOperator operator-(const BandOperator& a, const BandOperator& b);
  friend BandOperator operator*(const BandOperator& a, const BandOperator& b);

  bool same_entries(const BandOperator& other) const { return entries_ == other.entries_; }

private:
  BandOperator() = default;
  void recompute_propagation();

  SpacePtr space_;
  EntryMap entries_;
  double propagation_ = 0.0;  // 0 for the zero operator by convention
};

BandOperator diag_times(const Diagonal& d, const BandOperator& a);
BandOperator times_diag(const BandOperator& a, const Diagonal& d);

/// Writes a as a finite sum of terms d_i * v_{f_i}; reassembling the terms
/// reproduces a exactly. Entries are grouped into partial bijections by a
/// greedy edge coloring of the support relation in (row, col) order, so each
/// f_i has displacement at most propagation(a).
std::vector<std::pair<Diagonal, PartialTranslation>> band_decompose(const BandOperator& a);

BandOperator reassemble(const SpacePtr& space,
                        const std::vector<std::pair<Diagonal, PartialTranslation>>& terms);

/// Seeded random operator with propagation <= radius and |entries| <= 1.
BandOperator random_band_operator(SpacePtr space, double radius, double density, Rng& rng);

}  // namespace roekms
