#pragma once

// From Alexander-polynomial data to torsion coefficients, the T-profile, and
// the unique changemaker vector compatible with them (or a reason there is
// none).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "altsurg/cmlattice.hpp"
#include "altsurg/core.hpp"

namespace altsurg {

/// Laurent polynomial stored as exponent -> coefficient, zeros dropped.
class AlexanderPolynomial {
 public:
  AlexanderPolynomial() : AlexanderPolynomial(std::map<std::int64_t, std::int64_t>{{0, 1}}) {}
  /// Throws DomainError unless a_{-i} = a_i for every i.
  explicit AlexanderPolynomial(std::map<std::int64_t, std::int64_t> coefficients);

  const std::map<std::int64_t, std::int64_t>& coefficients() const noexcept { return coeffs_; }
  std::int64_t coefficient(std::int64_t exponent) const;
  /// Largest exponent with nonzero coefficient; 0 for constants.
  std::int64_t degree() const;
  /// Nonzero coefficients are +-1, alternate in sign, and the top one is 1.
  bool is_lspace_form() const;

 private:
  std::map<std::int64_t, std::int64_t> coeffs_;
};

/// t_i = sum_{j >= 1} j a_{i+j} for 0 <= i <= degree.
IntVector torsion_coefficients(const AlexanderPolynomial& delta);

/// V_0 >= V_1 >= ... > 0 = V_{g~} = ...; stored without the trailing zeros.
class VSequence {
 public:
  VSequence() = default;
  /// Trailing zeros are trimmed. Throws DomainError on negative entries, an
  /// increase, or a drop by more than one.
  explicit VSequence(IntVector values);

  const IntVector& values() const noexcept { return values_; }
  std::int64_t g_tilde() const noexcept { return static_cast<std::int64_t>(values_.size()); }
  std::int64_t v0() const noexcept { return values_.empty() ? 0 : values_.front(); }
  /// V_k, zero beyond g~.
  std::int64_t at(std::int64_t k) const;

  friend bool operator==(const VSequence&, const VSequence&) = default;

 private:
  IntVector values_;
};

/// Throws NotLSpaceForm naming the offending index (an exponent for the
/// coefficient checks, a V-index for the sequence checks).
VSequence v_sequence(const AlexanderPolynomial& delta);

struct TProfile {
  /// T_0 = 0, T_1, ..., T_{V_0}.
  IntVector t;
  /// min_{1 <= i < V_0} (T_i - T_{i-1}); absent when V_0 <= 1.
  std::optional<std::int64_t> mu;
};

TProfile t_profile(const VSequence& v);

/// max rho.alpha over alpha >= 0 with sum alpha_i (alpha_i + 1) = 2m, or
/// nullopt when no such alpha exists. Entries of rho must be >= 1.
std::optional<std::int64_t> s_max(const IntVector& rho, std::int64_t m);

struct RecoveryFound {
  /// Weakly decreasing, all entries >= 1.
  IntVector rho;
  StableCoefficients stable;
};

struct NoSolution {
  /// Which case of the recovery argument ruled the sequence out.
  std::string lemma;
  std::string witness;
};

using RecoveryOutcome = std::variant<RecoveryFound, NoSolution>;

inline bool found(const RecoveryOutcome& o) { return std::holds_alternative<RecoveryFound>(o); }

/// Reconstructs rho with |rho|^2 = n and at most t+1 positive entries. Every
/// FOUND result has passed verify_rho. Throws DomainError if n < 2 g~.
RecoveryOutcome recover_rho(const VSequence& v, std::int64_t n, std::int64_t t);

/// Stable coefficients of any solution; searches n upward from 2 g~.
RecoveryOutcome recover_stable(const VSequence& v);

/// min_char_norm(rho, k) = V_k for every 0 <= k <= |rho|^2 / 2.
bool verify_rho(const IntVector& rho, const VSequence& v);

}  // namespace altsurg
