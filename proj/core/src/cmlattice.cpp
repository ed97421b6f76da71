#include "altsurg/cmlattice.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "altsurg/checked.hpp"
#include "altsurg/errors.hpp"

namespace altsurg {

StableCoefficients::StableCoefficients(IntVector entries) : entries_(std::move(entries)) {
  for (auto e : entries_) {
    if (e <= 1) throw DomainError("stable coefficients must all exceed 1, got " + std::to_string(e));
  }
  std::sort(entries_.begin(), entries_.end(), std::greater<>());
}

IntVector StableCoefficients::ascending() const { return IntVector(entries_.rbegin(), entries_.rend()); }

std::int64_t StableCoefficients::smallest() const {
  if (entries_.empty()) throw DomainError("stable coefficients are empty");
  return entries_.back();
}

std::int64_t StableCoefficients::sum_of_squares() const { return norm(entries_); }

std::string StableCoefficients::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) os << (i ? "," : "") << entries_[i];
  os << ')';
  return os.str();
}

EmbeddedLattice complement_lattice(IntMatrix relations, std::size_t ambient_rank, std::optional<Rational> slope) {
  EmbeddedLattice lat;
  lat.ambient_rank = ambient_rank;
  lat.basis = kernel_basis(relations, ambient_rank);
  lat.relations = std::move(relations);
  lat.gram = gram(lat.basis);
  lat.slope = slope;
  return lat;
}

EmbeddedLattice build_integral(const ChangemakerVector& sigma) {
  if (sigma.size() == 0) throw DomainError("build_integral: empty changemaker vector");
  const std::int64_t n = sigma.norm();
  if (n == 0) throw DomainError("build_integral: changemaker vector is zero");
  return complement_lattice({sigma.entries()}, sigma.size(), Rational(n));
}

ChangemakerVector pad_with_ones(const StableCoefficients& stable, std::int64_t target_norm) {
  const std::int64_t ones = target_norm - stable.sum_of_squares();
  if (ones < 0) {
    throw DomainError("padding infeasible: norm " + std::to_string(target_norm) + " is below " +
                      std::to_string(stable.sum_of_squares()) + " = |stable|^2");
  }
  IntVector sigma(static_cast<std::size_t>(ones), 1);
  const IntVector asc = stable.ascending();
  sigma.insert(sigma.end(), asc.begin(), asc.end());
  if (!is_changemaker(sigma)) {
    throw DomainError("padding infeasible: " + std::to_string(ones) + " ones with stable " + stable.to_string() +
                      " violate the changemaker condition");
  }
  return ChangemakerVector(std::move(sigma));
}

EmbeddedLattice build_fractional(const Rational& slope, const StableCoefficients& stable) {
  if (slope.is_integer()) throw DomainError("build_fractional: integral slope " + slope.to_string());
  const IntVector a = hj_expand(slope).coefficients;
  const std::size_t l = a.size() - 1;
  // |w_0|^2 = 1 + |sigma|^2 = a_0
  const ChangemakerVector sigma = pad_with_ones(stable, a[0] - 1);
  const std::size_t t = sigma.size();

  std::vector<std::size_t> m(l + 1, 0);
  for (std::size_t k = 1; k <= l; ++k) m[k] = m[k - 1] + static_cast<std::size_t>(a[k] - 1);
  const std::size_t s = m[l];
  const std::size_t ambient = t + s + 1;
  auto e = [t](std::size_t j) { return t + j; };

  IntMatrix w(l + 1, IntVector(ambient, 0));
  for (std::size_t i = 0; i < t; ++i) w[0][i] = sigma.entries()[i];
  w[0][e(0)] = 1;
  for (std::size_t k = 1; k <= l; ++k) {
    w[k][e(m[k - 1])] = -1;
    for (std::size_t j = m[k - 1] + 1; j <= m[k]; ++j) w[k][e(j)] = 1;
  }

  for (std::size_t i = 0; i <= l; ++i) {
    for (std::size_t j = 0; j <= l; ++j) {
      const std::int64_t expected = i == j ? a[j] : (i + 1 == j || j + 1 == i) ? -1 : 0;
      if (dot(w[i], w[j]) != expected) throw InternalError("build_fractional: relation pairing is not tridiagonal");
    }
  }
  return complement_lattice(std::move(w), ambient, slope);
}

EmbeddedLattice build_changemaker_lattice(const Rational& slope, const StableCoefficients& stable) {
  if (!slope.is_positive()) throw DomainError("changemaker lattices need a positive slope");
  if (slope.is_integer()) return build_integral(pad_with_ones(stable, slope.p()));
  return build_fractional(slope, stable);
}

StableCoefficients stable_part(const ChangemakerVector& sigma) {
  IntVector big;
  for (auto s : sigma.entries()) {
    if (s > 1) big.push_back(s);
  }
  return StableCoefficients(std::move(big));
}

std::int64_t n_invariant(const StableCoefficients& stable) {
  if (stable.empty()) {
    throw DomainError("N is undefined for empty stable coefficients (the knot must be nontrivial)");
  }
  return checked_add(stable.smallest(), stable.sum_of_squares());
}

std::pair<std::int64_t, std::int64_t> slope_window(const StableCoefficients& stable) {
  const std::int64_t n = n_invariant(stable);
  return {n - 1, n + 1};
}

std::int64_t genus_of_stable(const StableCoefficients& stable) {
  std::int64_t twice = 0;
  for (auto s : stable.descending()) twice = checked_add(twice, checked_mul(s, s - 1));
  return twice / 2;
}

std::int64_t genus_slope_cap(std::int64_t genus) {
  if (genus < 0) throw DomainError("genus must be nonnegative");
  return checked_add(checked_mul(4, genus), 3);
}

namespace {

// 1-based index m of the first entry > 1, after checking the hypotheses
// sigma_i >= 1 and sigma_t > 1.
std::size_t first_stable_index(const ChangemakerVector& sigma) {
  const auto& e = sigma.entries();
  if (e.empty() || e.back() <= 1) throw DomainError("obstruction lemmas need sigma_t > 1");
  if (e.front() < 1) throw DomainError("obstruction lemmas need every sigma_i >= 1");
  const auto it = std::find_if(e.begin(), e.end(), [](std::int64_t s) { return s > 1; });
  return static_cast<std::size_t>(it - e.begin()) + 1;
}

}  // namespace

DecomposabilityVerdict decomposable_obstruction(const ChangemakerVector& sigma) {
  const std::size_t m = first_stable_index(sigma);
  const std::int64_t sigma_m = sigma.entries()[m - 1];
  return sigma_m != static_cast<std::int64_t>(m) - 1 ? DecomposabilityVerdict::CertifiedIndecomposable
                                                       : DecomposabilityVerdict::Inconclusive;
}

SuperbaseObstruction superbase_obstruction(const ChangemakerVector& sigma) {
  const std::size_t m = first_stable_index(sigma);
  const auto& e = sigma.entries();
  const std::int64_t sigma_m = e[m - 1];
  const auto mi = static_cast<std::int64_t>(m);
  SuperbaseObstruction out;
  if (sigma_m < mi - 2) {
    out.verdict = SuperbaseVerdict::NoSuperbase;
    out.violated = "graph-bound";
    out.detail = "sigma_" + std::to_string(m) + "=" + std::to_string(sigma_m) + " < m-2=" + std::to_string(mi - 2);
    return out;
  }
  std::int64_t tail = 0;
  std::int64_t twice_genus = 0;
  for (std::size_t i = m - 1; i < e.size(); ++i) tail = checked_add(tail, checked_mul(e[i], e[i]));
  for (auto s : e) twice_genus = checked_add(twice_genus, checked_mul(s, s - 1));
  const std::int64_t n = sigma.norm();
  if (n > 1 + sigma_m + tail) {
    out.verdict = SuperbaseVerdict::NoSuperbase;
    out.violated = "norm-bound";
    out.detail = "|w0|^2=" + std::to_string(n) + " > " + std::to_string(1 + sigma_m + tail);
    return out;
  }
  if (n > 2 * twice_genus + 3) {
    out.verdict = SuperbaseVerdict::NoSuperbase;
    out.violated = "genus-bound";
    out.detail = "|w0|^2=" + std::to_string(n) + " > 4g+3=" + std::to_string(2 * twice_genus + 3);
    return out;
  }
  return out;
}

BoundsReport bounds_report(const StableCoefficients& stable) {
  BoundsReport r;
  r.stable = stable;
  r.genus = genus_of_stable(stable);
  r.genus_cap = genus_slope_cap(r.genus);
  if (stable.empty()) return r;
  r.n = n_invariant(stable);
  r.window_lo = *r.n - 1;
  r.window_hi = *r.n + 1;
  if (*r.window_lo > r.genus_cap) {
    r.obstructions.push_back("window lower end " + std::to_string(*r.window_lo) + " exceeds genus cap " +
                             std::to_string(r.genus_cap));
  }
  for (std::int64_t slope = *r.window_lo; slope <= *r.window_hi; ++slope) {
    try {
      const auto obstruction = superbase_obstruction(pad_with_ones(stable, slope));
      if (obstruction.verdict == SuperbaseVerdict::NoSuperbase) {
        r.obstructions.push_back("slope " + std::to_string(slope) + ": " + obstruction.violated + " (" +
                                 obstruction.detail + ")");
      }
    } catch (const DomainError&) {
      r.obstructions.push_back("slope " + std::to_string(slope) + ": no changemaker vector with this norm");
    }
  }
  return r;
}

bool slope_in_window(const Rational& slope, const StableCoefficients& stable) {
  if (stable.empty()) return true;
  const auto [lo, hi] = slope_window(stable);
  return Rational(lo) <= slope && slope <= Rational(hi);
}

}  // namespace altsurg
