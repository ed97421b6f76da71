#include "altsurg/recovery.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "altsurg/checked.hpp"
#include "altsurg/errors.hpp"

namespace altsurg {

AlexanderPolynomial::AlexanderPolynomial(std::map<std::int64_t, std::int64_t> coefficients) {
  for (const auto& [e, a] : coefficients) {
    if (a != 0) coeffs_.emplace(e, a);
  }
  for (const auto& [e, a] : coeffs_) {
    if (coefficient(-e) != a) {
      throw DomainError("Alexander polynomial is not symmetric: a_" + std::to_string(e) + " = " + std::to_string(a) +
                        " but a_" + std::to_string(-e) + " = " + std::to_string(coefficient(-e)));
    }
  }
}

std::int64_t AlexanderPolynomial::coefficient(std::int64_t exponent) const {
  const auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? 0 : it->second;
}

std::int64_t AlexanderPolynomial::degree() const { return coeffs_.empty() ? 0 : std::max<std::int64_t>(0, coeffs_.rbegin()->first); }

bool AlexanderPolynomial::is_lspace_form() const {
  if (coeffs_.empty() || coeffs_.rbegin()->second != 1) return false;
  std::int64_t previous = 0;
  for (const auto& [e, a] : coeffs_) {
    if (a != 1 && a != -1) return false;
    if (previous == a) return false;
    previous = a;
  }
  return true;
}

IntVector torsion_coefficients(const AlexanderPolynomial& delta) {
  const std::int64_t g = delta.degree();
  IntVector t(static_cast<std::size_t>(g) + 1, 0);
  for (std::int64_t i = 0; i <= g; ++i) {
    std::int64_t sum = 0;
    for (std::int64_t j = 1; i + j <= g; ++j) sum = checked_add(sum, checked_mul(j, delta.coefficient(i + j)));
    t[static_cast<std::size_t>(i)] = sum;
  }
  return t;
}

namespace {

// Index of the first violation of the V-sequence axioms, with a reason.
std::optional<std::pair<std::size_t, std::string>> first_violation(const IntVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) return std::pair{i, "negative value " + std::to_string(v[i])};
    if (i == 0) continue;
    if (v[i] > v[i - 1]) {
      return std::pair{i, "V_" + std::to_string(i) + " = " + std::to_string(v[i]) + " exceeds V_" +
                              std::to_string(i - 1) + " = " + std::to_string(v[i - 1])};
    }
    if (v[i] < v[i - 1] - 1) {
      return std::pair{i, "V_" + std::to_string(i) + " = " + std::to_string(v[i]) + " drops by more than one"};
    }
  }
  if (!v.empty() && v.back() > 1) {
    return std::pair{v.size(), "last nonzero value " + std::to_string(v.back()) + " is followed by 0"};
  }
  return std::nullopt;
}

IntVector trim_zeros(IntVector v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

}  // namespace

VSequence::VSequence(IntVector values) : values_(trim_zeros(std::move(values))) {
  if (const auto bad = first_violation(values_)) {
    throw DomainError("invalid V-sequence at index " + std::to_string(bad->first) + ": " + bad->second);
  }
}

std::int64_t VSequence::at(std::int64_t k) const {
  if (k < 0) throw DomainError("VSequence::at: negative index");
  return k < g_tilde() ? values_[static_cast<std::size_t>(k)] : 0;
}

VSequence v_sequence(const AlexanderPolynomial& delta) {
  std::int64_t previous = 0;
  for (const auto& [e, a] : delta.coefficients()) {
    if (a != 1 && a != -1) {
      throw NotLSpaceForm(static_cast<std::size_t>(std::llabs(e)), "coefficient " + std::to_string(a) + " is not +-1");
    }
    if (a == previous) {
      throw NotLSpaceForm(static_cast<std::size_t>(std::llabs(e)), "nonzero coefficients do not alternate in sign");
    }
    previous = a;
  }
  if (delta.coefficient(delta.degree()) != 1) {
    throw NotLSpaceForm(static_cast<std::size_t>(delta.degree()), "top coefficient is not 1");
  }
  const IntVector t = trim_zeros(torsion_coefficients(delta));
  if (const auto bad = first_violation(t)) throw NotLSpaceForm(bad->first, bad->second);
  return VSequence(t);
}

TProfile t_profile(const VSequence& v) {
  TProfile p;
  const std::int64_t v0 = v.v0();
  p.t.assign(static_cast<std::size_t>(v0) + 1, 0);
  for (std::int64_t m = 1; m <= v0; ++m) {
    p.t[static_cast<std::size_t>(m)] = std::count_if(v.values().begin(), v.values().end(),
                                                     [m](std::int64_t x) { return x > 0 && x <= m; });
  }
  if (v0 > 1) {
    std::int64_t mu = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 1; i < static_cast<std::size_t>(v0); ++i) mu = std::min(mu, p.t[i] - p.t[i - 1]);
    p.mu = mu;
  }
  return p;
}

namespace {

constexpr std::int64_t kEmpty = std::numeric_limits<std::int64_t>::min();

// As s_max, but zero entries are allowed: they soak up budget without
// contributing to the product.
std::optional<std::int64_t> s_max_padded(const IntVector& rho, std::int64_t m) {
  if (m < 0) throw DomainError("s_max: m must be >= 0");
  const auto size = static_cast<std::size_t>(m) + 1;
  std::vector<std::int64_t> best(size, kEmpty);
  best[0] = 0;
  std::vector<std::int64_t> next(size);
  for (auto r : rho) {
    next = best;
    for (std::size_t h = 0; h < size; ++h) {
      if (best[h] == kEmpty) continue;
      // alpha contributes alpha (alpha + 1) / 2 to the half-budget.
      for (std::int64_t alpha = 1;; ++alpha) {
        const auto cost = static_cast<std::size_t>(alpha * (alpha + 1) / 2);
        if (h + cost >= size) break;
        next[h + cost] = std::max(next[h + cost], checked_add(best[h], checked_mul(alpha, r)));
      }
    }
    best.swap(next);
  }
  if (best[static_cast<std::size_t>(m)] == kEmpty) return std::nullopt;
  return best[static_cast<std::size_t>(m)];
}

RecoveryOutcome no_solution(std::string lemma, std::string witness) {
  return NoSolution{std::move(lemma), std::move(witness)};
}

std::string render(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// First k <= n/2 at which rho's V-profile disagrees with v.
std::optional<std::int64_t> first_mismatch(const IntVector& rho, const VSequence& v) {
  std::vector<std::int64_t> profile;
  try {
    profile = char_norm_profile(rho);
  } catch (const DomainError&) {
    return 0;
  }
  for (std::size_t k = 0; k < profile.size(); ++k) {
    if (profile[k] != v.at(static_cast<std::int64_t>(k))) return static_cast<std::int64_t>(k);
  }
  return std::nullopt;
}

// The entries > 1 of rho as forced by the T-profile, or the reason none exist.
std::variant<IntVector, NoSolution> forced_large_entries(const VSequence& v, std::int64_t length) {
  const std::int64_t g = v.g_tilde();
  if (v.v0() <= 1) {
    switch (g) {
      case 0: return IntVector{};
      case 1: return IntVector{2};
      case 2: return IntVector{2, 2};
      case 3: return IntVector{3};
      default:
        return NoSolution{"V0<=1 catalog", "V₀=1, g̃=" + std::to_string(g) + " > 3"};
    }
  }
  const TProfile p = t_profile(v);
  const auto& T = p.t;
  const std::int64_t v0 = v.v0();

  if (*p.mu > 2) {
    IntVector big;
    if (T[1] == 3) {
      big.assign(static_cast<std::size_t>(g / 3), 3);
      big.insert(big.end(), static_cast<std::size_t>(g % 3), 2);
      return big;
    }
    if (T[1] == 4 && g >= 6 && (g - 6) % 3 == 0) {
      big.push_back(4);
      big.insert(big.end(), static_cast<std::size_t>((g - 6) / 3), 3);
      return big;
    }
    return NoSolution{"mu>2 catalog", "μ=" + std::to_string(*p.mu) + ", T₁=" + std::to_string(T[1]) +
                                          ", g̃=" + std::to_string(g) + " matches no form"};
  }

  // mu <= 2: rebuild rho_0, rho_1, ... one entry at a time.
  IntVector s(static_cast<std::size_t>(length), 0);
  s[0] = T[1];
  std::size_t l = 0;
  while (true) {
    std::int64_t tp = 0;
    for (std::int64_t m = 1; m < v0; ++m) {
      const auto best = s_max_padded(s, m);
      if (!best || *best < T[static_cast<std::size_t>(m)]) {
        tp = m;
        break;
      }
    }
    if (tp == 0) break;
    const std::int64_t next = T[static_cast<std::size_t>(tp)] - T[static_cast<std::size_t>(tp) - 1];
    if (l + 1 >= s.size()) {
      return NoSolution{"mu<=2 reconstruction", "more than " + std::to_string(length) + " entries needed"};
    }
    if (next < 1 || next > s[l]) {
      return NoSolution{"mu<=2 reconstruction", "T_" + std::to_string(tp) + " - T_" + std::to_string(tp - 1) + " = " +
                                                    std::to_string(next) + " cannot follow " + std::to_string(s[l])};
    }
    s[++l] = next;
  }
  IntVector big(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(l) + 1);
  std::int64_t twice_genus = 0;
  for (auto x : big) twice_genus = checked_add(twice_genus, checked_mul(x, x - 1));
  const std::int64_t twos = g - twice_genus / 2;
  if (twos < 0 || twice_genus % 2 != 0) {
    return NoSolution{"mu<=2 reconstruction",
                      "recovered " + render(big) + " already exceeds g̃=" + std::to_string(g)};
  }
  big.insert(big.end(), static_cast<std::size_t>(twos), 2);
  std::sort(big.begin(), big.end(), std::greater<>());
  while (!big.empty() && big.back() == 1) big.pop_back();
  return big;
}

}  // namespace

std::optional<std::int64_t> s_max(const IntVector& rho, std::int64_t m) {
  for (auto r : rho) {
    if (r < 1) throw DomainError("s_max: rho entries must be >= 1");
  }
  return s_max_padded(rho, m);
}

RecoveryOutcome recover_rho(const VSequence& v, std::int64_t n, std::int64_t t) {
  const std::int64_t g = v.g_tilde();
  if (n < 2 * g) {
    throw DomainError("recover_rho: n = " + std::to_string(n) + " is below 2 g~ = " + std::to_string(2 * g));
  }
  if (t < 0) throw DomainError("recover_rho: t must be >= 0");
  auto large = forced_large_entries(v, t + 1);
  if (auto* ns = std::get_if<NoSolution>(&large)) return *ns;
  IntVector rho = std::get<IntVector>(std::move(large));

  const std::int64_t ones = n - norm(rho);
  if (ones < 0) {
    return no_solution("norm", "|" + render(rho) + "|^2 = " + std::to_string(norm(rho)) + " exceeds n = " +
                                   std::to_string(n));
  }
  if (static_cast<std::int64_t>(rho.size()) + ones > t + 1) {
    return no_solution("length", std::to_string(static_cast<std::int64_t>(rho.size()) + ones) +
                                     " positive entries needed but t+1 = " + std::to_string(t + 1));
  }
  rho.insert(rho.end(), static_cast<std::size_t>(ones), 1);
  if (rho.empty()) return no_solution("norm", "n = 0 leaves no entries");
  if (!is_changemaker(IntVector(rho.rbegin(), rho.rend()))) {
    return no_solution("changemaker", render(rho) + " violates the changemaker condition");
  }
  if (const auto k = first_mismatch(rho, v)) {
    return no_solution("verification", "candidate " + render(rho) + " disagrees with V at k=" + std::to_string(*k));
  }
  StableCoefficients stable(IntVector(rho.begin(), std::find(rho.begin(), rho.end(), 1)));
  return RecoveryFound{std::move(rho), std::move(stable)};
}

RecoveryOutcome recover_stable(const VSequence& v) {
  const std::int64_t g = v.g_tilde();
  // |rho|^2 = 2 g~ + sum rho_i never needs more than 4 g~ + (number of ones);
  // the cap leaves generous room above that.
  const std::int64_t first = std::max<std::int64_t>(1, 2 * g);
  const std::int64_t last = 6 * g + 4;
  std::optional<RecoveryOutcome> first_failure;
  for (std::int64_t n = first; n <= last; ++n) {
    auto outcome = recover_rho(v, n, n - 1);
    if (found(outcome)) return outcome;
    const auto& ns = std::get<NoSolution>(outcome);
    if (ns.lemma == "V0<=1 catalog" || ns.lemma == "mu>2 catalog") return outcome;
    if (!first_failure) first_failure = std::move(outcome);
  }
  return *first_failure;
}

bool verify_rho(const IntVector& rho, const VSequence& v) { return !first_mismatch(rho, v).has_value(); }

}  // namespace altsurg
