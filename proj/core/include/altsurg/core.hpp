#pragma once

// Exact integer primitives shared by every other module: rationals and their
// Hirzebruch-Jung expansions, the changemaker predicate, integer kernels and
// Gram matrices, and the characteristic-vector minimiser that defines V_k.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace altsurg {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
std::int64_t norm(std::span<const std::int64_t> v);

/// p/q in lowest terms with q >= 1.
class Rational {
 public:
  Rational(std::int64_t numerator, std::int64_t denominator = 1);

  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  bool is_integer() const noexcept { return q_ == 1; }
  bool is_positive() const noexcept { return p_ > 0; }
  std::int64_t ceil() const;

  /// "p/q"; integers keep the "/1" suffix so the form round-trips.
  std::string to_string() const;
  /// Accepts "p/q" or a bare integer.
  static Rational parse(std::string_view text);

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t p_;
  std::int64_t q_;
};

/// [a_0, ..., a_l]^- with a_0 >= 1 and a_i >= 2 for i >= 1.
struct HJExpansion {
  IntVector coefficients;

  friend bool operator==(const HJExpansion&, const HJExpansion&) = default;
};

HJExpansion hj_expand(const Rational& slope);
Rational hj_evaluate(const HJExpansion& expansion);

/// True iff sigma satisfies the changemaker condition. Throws DomainError if
/// the tuple is not ascending or has negative entries.
bool is_changemaker(std::span<const std::int64_t> sigma);

/// Exhaustive subset-sum coverage: every k in [0, sum] is a subset sum.
/// Throws CapacityError when the total exceeds `cap`.
bool subset_sum_cover(std::span<const std::int64_t> sigma, std::int64_t cap = 64);

/// Ascending tuple satisfying the changemaker condition.
class ChangemakerVector {
 public:
  explicit ChangemakerVector(IntVector ascending_entries);

  const IntVector& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::int64_t norm() const;

  friend bool operator==(const ChangemakerVector&, const ChangemakerVector&) = default;

 private:
  IntVector entries_;
};

/// Square symmetric integer matrix.
class GramMatrix {
 public:
  GramMatrix() = default;
  explicit GramMatrix(IntMatrix rows);

  std::size_t rank() const noexcept { return rows_.size(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const IntMatrix& rows() const noexcept { return rows_; }

  std::int64_t determinant() const;
  /// All leading principal minors positive.
  bool is_positive_definite() const;
  /// x^T G y for coefficient vectors.
  std::int64_t pair(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const;

  /// Block-diagonal sum with the identity of size k.
  GramMatrix direct_sum_identity(std::size_t k) const;

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  IntMatrix rows_;
};

/// Exact determinant (Bareiss) of a square integer matrix.
std::int64_t determinant(const IntMatrix& m);

/// Row-style Hermite normal form of the lattice spanned by `rows`: nonzero
/// rows only, positive pivots, entries above each pivot reduced into
/// [0, pivot). Columns default to the row length.
IntMatrix hermite_normal_form(IntMatrix rows, std::size_t columns);

/// gcd of the maximal minors of a full-row-rank matrix; 1 iff the rows span a
/// saturated (primitive) sublattice.
std::int64_t maximal_minor_gcd(const IntMatrix& rows, std::size_t columns);

/// Integral basis of {x in Z^ambient_rank : x.w = 0 for every relation w},
/// in Hermite normal form. Throws DomainError on dependent relations.
IntMatrix kernel_basis(const IntMatrix& relations, std::size_t ambient_rank);

/// G_ij = b_i . b_j.
GramMatrix gram(const IntMatrix& basis);

/// V_k = (min |c|^2 - len(rho)) / 8 over characteristic c with c.rho = 2k - n.
std::int64_t min_char_norm(std::span<const std::int64_t> rho, std::int64_t k);

/// min_char_norm(rho, k) for every 0 <= k <= n/2, from one pass.
std::vector<std::int64_t> char_norm_profile(std::span<const std::int64_t> rho);

}  // namespace altsurg
