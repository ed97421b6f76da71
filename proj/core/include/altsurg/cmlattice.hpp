#pragma once

// p/q-changemaker lattices, their stable coefficients, and the slope bounds
// and obstructions that follow from them.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "altsurg/core.hpp"

namespace altsurg {

/// The entries > 1 of a changemaker vector, kept in descending order.
class StableCoefficients {
 public:
  StableCoefficients() = default;
  /// Any order accepted; every entry must exceed 1.
  explicit StableCoefficients(IntVector entries);

  const IntVector& descending() const noexcept { return entries_; }
  IntVector ascending() const;
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::int64_t smallest() const;
  std::int64_t sum_of_squares() const;

  /// "(3,2,2)"; "()" when empty.
  std::string to_string() const;

  friend bool operator==(const StableCoefficients&, const StableCoefficients&) = default;

 private:
  IntVector entries_;
};

/// <w_0, ..., w_l>^perp inside Z^ambient_rank with its normal-form basis.
struct EmbeddedLattice {
  std::size_t ambient_rank = 0;
  IntMatrix relations;
  IntMatrix basis;
  GramMatrix gram;
  std::optional<Rational> slope;

  std::size_t rank() const noexcept { return basis.size(); }
};

/// Builds the complement of `relations` in Z^ambient_rank.
EmbeddedLattice complement_lattice(IntMatrix relations, std::size_t ambient_rank,
                                   std::optional<Rational> slope = std::nullopt);

/// <sigma_1 f_1 + ... + sigma_t f_t>^perp in Z^t, coordinates in sigma order.
EmbeddedLattice build_integral(const ChangemakerVector& sigma);

/// Non-integral p/q-changemaker lattice. Ambient coordinates are
/// f_1..f_t followed by e_0..e_s; the number of sigma_i equal to 1 is fixed by
/// |w_0|^2 = ceil(p/q).
EmbeddedLattice build_fractional(const Rational& slope, const StableCoefficients& stable);

/// The changemaker vector with the given stable part and norm `norm` (padded
/// with ones). Throws DomainError if the padding is infeasible.
ChangemakerVector pad_with_ones(const StableCoefficients& stable, std::int64_t norm);

/// Integral or fractional construction, dispatched on the slope.
EmbeddedLattice build_changemaker_lattice(const Rational& slope, const StableCoefficients& stable);

StableCoefficients stable_part(const ChangemakerVector& sigma);

/// N = smallest stable entry + sum of squares. Throws DomainError when empty.
std::int64_t n_invariant(const StableCoefficients& stable);
std::pair<std::int64_t, std::int64_t> slope_window(const StableCoefficients& stable);
std::int64_t genus_of_stable(const StableCoefficients& stable);
std::int64_t genus_slope_cap(std::int64_t genus);

enum class DecomposabilityVerdict { CertifiedIndecomposable, Inconclusive };
enum class SuperbaseVerdict { NoSuperbase, Inconclusive };

struct SuperbaseObstruction {
  SuperbaseVerdict verdict = SuperbaseVerdict::Inconclusive;
  /// Name of the violated bound, empty when inconclusive.
  std::string violated;
  std::string detail;
};

DecomposabilityVerdict decomposable_obstruction(const ChangemakerVector& sigma);
SuperbaseObstruction superbase_obstruction(const ChangemakerVector& sigma);

struct BoundsReport {
  StableCoefficients stable;
  std::int64_t genus = 0;
  std::int64_t genus_cap = 3;
  /// Absent for the trivial knot (empty stable part).
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> window_lo;
  std::optional<std::int64_t> window_hi;
  std::vector<std::string> obstructions;

  bool trivial_knot() const noexcept { return !n.has_value(); }
};

BoundsReport bounds_report(const StableCoefficients& stable);

/// True iff slope lies in [N-1, N+1]; trivially true for the trivial knot.
bool slope_in_window(const Rational& slope, const StableCoefficients& stable);

}  // namespace altsurg
