#include "altsurg/core.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>

#include "altsurg/checked.hpp"
#include "altsurg/errors.hpp"

namespace altsurg {

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) throw DomainError("dot: vectors of different length");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

std::int64_t norm(std::span<const std::int64_t> v) { return dot(v, v); }

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  if (denominator < 0) {
    numerator = checked_mul(numerator, -1);
    denominator = checked_mul(denominator, -1);
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  p_ = numerator / g;
  q_ = denominator / g;
}

std::int64_t Rational::ceil() const { return ceil_div(p_, q_); }

std::string Rational::to_string() const { return std::to_string(p_) + "/" + std::to_string(q_); }

namespace {

std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, "integer"));
  const std::int64_t p = parse_int(text.substr(0, slash), "numerator");
  const std::int64_t q = parse_int(text.substr(slash + 1), "denominator");
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.p_) * b.q_;
  const __int128 rhs = static_cast<__int128>(b.p_) * a.q_;
  return lhs <=> rhs;
}

// ---------------------------------------------------------------------------
// Hirzebruch-Jung continued fractions

HJExpansion hj_expand(const Rational& slope) {
  if (!slope.is_positive()) throw DomainError("hj_expand: slope must be positive, got " + slope.to_string());
  HJExpansion out;
  std::int64_t p = slope.p();
  std::int64_t q = slope.q();
  while (true) {
    const std::int64_t a = ceil_div(p, q);
    out.coefficients.push_back(a);
    // p/q = a - 1/x  with  x = q / (a q - p)
    const std::int64_t rem = checked_sub(checked_mul(a, q), p);
    if (rem == 0) break;
    p = q;
    q = rem;
  }
  return out;
}

Rational hj_evaluate(const HJExpansion& expansion) {
  const auto& a = expansion.coefficients;
  if (a.empty()) throw DomainError("hj_evaluate: empty expansion");
  if (a[0] < 1) throw DomainError("hj_evaluate: a_0 must be >= 1");
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] < 2) throw DomainError("hj_evaluate: a_i must be >= 2 for i >= 1");
  }
  // value = num/den, folded from the tail
  std::int64_t num = a.back();
  std::int64_t den = 1;
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    if (num == 0) throw InternalError("hj_evaluate: zero intermediate denominator");
    const std::int64_t next_num = checked_sub(checked_mul(a[i], num), den);
    den = num;
    num = next_num;
  }
  return Rational(num, den);
}

// ---------------------------------------------------------------------------
// Changemaker condition

namespace {

void require_ascending_nonnegative(std::span<const std::int64_t> sigma, const char* op) {
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] < 0) throw DomainError(std::string(op) + ": negative entry");
    if (i > 0 && sigma[i] < sigma[i - 1]) {
      throw DomainError(std::string(op) + ": entries must be ascending (sort before calling)");
    }
  }
}

}  // namespace

bool is_changemaker(std::span<const std::int64_t> sigma) {
  require_ascending_nonnegative(sigma, "is_changemaker");
  std::int64_t partial = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i == 0 ? sigma[0] > 1 : sigma[i] > partial + 1) return false;
    partial = checked_add(partial, sigma[i]);
  }
  return true;
}

bool subset_sum_cover(std::span<const std::int64_t> sigma, std::int64_t cap) {
  require_ascending_nonnegative(sigma, "subset_sum_cover");
  std::int64_t total = 0;
  for (auto s : sigma) total = checked_add(total, s);
  if (total > cap) {
    throw CapacityError("subset_sum_cover: total " + std::to_string(total) + " exceeds cap " +
                        std::to_string(cap));
  }
  std::vector<char> reachable(static_cast<std::size_t>(total) + 1, 0);
  reachable[0] = 1;
  for (auto s : sigma) {
    for (std::int64_t k = total; k >= s; --k) {
      if (reachable[static_cast<std::size_t>(k - s)]) reachable[static_cast<std::size_t>(k)] = 1;
    }
  }
  return std::all_of(reachable.begin(), reachable.end(), [](char c) { return c != 0; });
}

ChangemakerVector::ChangemakerVector(IntVector ascending_entries) : entries_(std::move(ascending_entries)) {
  if (!is_changemaker(entries_)) throw DomainError("tuple violates the changemaker condition");
}

std::int64_t ChangemakerVector::norm() const { return altsurg::norm(entries_); }

// ---------------------------------------------------------------------------
// Matrices

namespace {

__int128 mul128(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("determinant: 128-bit overflow");
  return r;
}

void row_axpy(IntVector& target, const IntVector& source, std::int64_t factor) {
  for (std::size_t j = 0; j < target.size(); ++j) {
    target[j] = checked_sub(target[j], checked_mul(factor, source[j]));
  }
}

// Unimodular row reduction of the first `columns` columns. Returns the number
// of pivots; rows [0, pivots) are in echelon form. With `reduce_above`, the
// entries above each pivot are brought into [0, pivot).
std::size_t echelonize(IntMatrix& a, std::size_t columns, bool reduce_above) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < a.size(); ++c) {
    while (true) {
      std::size_t best = a.size();
      for (std::size_t i = r; i < a.size(); ++i) {
        if (a[i][c] != 0 && (best == a.size() || std::llabs(a[i][c]) < std::llabs(a[best][c]))) best = i;
      }
      if (best == a.size()) break;
      std::swap(a[r], a[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        row_axpy(a[i], a[r], floor_div(a[i][c], a[r][c]));
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r == a.size() || a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (auto& x : a[r]) x = checked_mul(x, -1);
    }
    if (reduce_above) {
      for (std::size_t i = 0; i < r; ++i) row_axpy(a[i], a[r], floor_div(a[i][c], a[r][c]));
    }
    ++r;
  }
  return r;
}

}  // namespace

std::int64_t determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw DomainError("determinant: matrix is not square");
  }
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (mul128(a[i][j], a[k][k]) - mul128(a[i][k], a[k][j])) / prev;
      }
    }
    prev = a[k][k];
  }
  return narrow_checked(sign * a[n - 1][n - 1]);
}

IntMatrix hermite_normal_form(IntMatrix rows, std::size_t columns) {
  for (const auto& row : rows) {
    if (row.size() != columns) throw DomainError("hermite_normal_form: ragged rows");
  }
  const std::size_t rank = echelonize(rows, columns, true);
  rows.resize(rank);
  return rows;
}

std::int64_t maximal_minor_gcd(const IntMatrix& rows, std::size_t columns) {
  const std::size_t m = rows.size();
  if (m == 0) return 1;
  // The columns span a sublattice of Z^m whose index is the gcd of the
  // maximal minors.
  IntMatrix cols(columns, IntVector(m));
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != columns) throw DomainError("maximal_minor_gcd: ragged rows");
    for (std::size_t j = 0; j < columns; ++j) cols[j][i] = rows[i][j];
  }
  const IntMatrix h = hermite_normal_form(std::move(cols), m);
  if (h.size() < m) throw DomainError("maximal_minor_gcd: rows are linearly dependent");
  std::int64_t index = 1;
  for (std::size_t i = 0; i < m; ++i) index = checked_mul(index, h[i][i]);
  return index;
}

IntMatrix kernel_basis(const IntMatrix& relations, std::size_t ambient_rank) {
  const std::size_t k = relations.size();
  for (const auto& w : relations) {
    if (w.size() != ambient_rank) throw DomainError("kernel_basis: relation length differs from ambient rank");
  }
  // Rows of [W^T | I]; unimodular reduction of the W^T block leaves the
  // kernel in the identity block of the zero rows.
  IntMatrix a(ambient_rank, IntVector(k + ambient_rank, 0));
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    for (std::size_t r = 0; r < k; ++r) a[i][r] = relations[r][i];
    a[i][k + i] = 1;
  }
  const std::size_t pivots = echelonize(a, k, false);
  if (pivots < k) throw DomainError("kernel_basis: relations are linearly dependent");
  IntMatrix kernel;
  for (std::size_t i = pivots; i < ambient_rank; ++i) {
    kernel.emplace_back(a[i].begin() + static_cast<std::ptrdiff_t>(k), a[i].end());
  }
  kernel = hermite_normal_form(std::move(kernel), ambient_rank);
#ifndef NDEBUG
  if (maximal_minor_gcd(kernel, ambient_rank) != 1) throw InternalError("kernel_basis: basis is not primitive");
#endif
  return kernel;
}

GramMatrix gram(const IntMatrix& basis) {
  if (!basis.empty()) {
    for (const auto& b : basis) {
      if (b.size() != basis.front().size()) throw DomainError("gram: vectors have different ambient ranks");
    }
  }
  IntMatrix g(basis.size(), IntVector(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) g[i][j] = g[j][i] = dot(basis[i], basis[j]);
  }
  return GramMatrix(std::move(g));
}

GramMatrix::GramMatrix(IntMatrix rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != rows_.size()) throw DomainError("Gram matrix is not square");
    for (std::size_t j = 0; j < i; ++j) {
      if (rows_[i][j] != rows_[j][i]) throw DomainError("Gram matrix is not symmetric");
    }
  }
}

std::int64_t GramMatrix::determinant() const { return altsurg::determinant(rows_); }

bool GramMatrix::is_positive_definite() const {
  for (std::size_t k = 1; k <= rows_.size(); ++k) {
    IntMatrix minor(k, IntVector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = rows_[i][j];
    if (altsurg::determinant(minor) <= 0) return false;
  }
  return true;
}

std::int64_t GramMatrix::pair(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const {
  if (x.size() != rank() || y.size() != rank()) throw DomainError("GramMatrix::pair: wrong vector length");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    s = checked_add(s, checked_mul(x[i], dot(rows_[i], y)));
  }
  return s;
}

GramMatrix GramMatrix::direct_sum_identity(std::size_t k) const {
  const std::size_t n = rank() + k;
  IntMatrix g(n, IntVector(n, 0));
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) g[i][j] = rows_[i][j];
  for (std::size_t i = rank(); i < n; ++i) g[i][i] = 1;
  return GramMatrix(std::move(g));
}

// ---------------------------------------------------------------------------
// Characteristic-vector minimiser

namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

// Minimum |c|^2 over odd c with |c_i| <= 2 rho_i + 1 + 2 slack, indexed by
// the value of c.rho shifted by `offset`.
struct NormTable {
  std::int64_t offset = 0;
  std::vector<std::int64_t> best;

  std::int64_t at(std::int64_t value) const {
    const std::int64_t idx = value + offset;
    if (idx < 0 || idx >= static_cast<std::int64_t>(best.size())) return kUnreached;
    return best[static_cast<std::size_t>(idx)];
  }
};

NormTable odd_box_minima(std::span<const std::int64_t> rho, std::int64_t slack) {
  std::int64_t reach = 0;
  for (auto r : rho) reach = checked_add(reach, checked_mul(checked_add(checked_mul(2, r), 1 + 2 * slack), r));
  NormTable table;
  table.offset = reach;
  table.best.assign(static_cast<std::size_t>(2 * reach + 1), kUnreached);
  table.best[static_cast<std::size_t>(reach)] = 0;
  std::vector<std::int64_t> next(table.best.size());
  for (auto r : rho) {
    std::fill(next.begin(), next.end(), kUnreached);
    const std::int64_t limit = 2 * r + 1 + 2 * slack;
    for (std::size_t idx = 0; idx < table.best.size(); ++idx) {
      const std::int64_t base = table.best[idx];
      if (base == kUnreached) continue;
      for (std::int64_t c = -limit; c <= limit; c += 2) {
        const std::int64_t target = static_cast<std::int64_t>(idx) + c * r;
        if (target < 0 || target >= static_cast<std::int64_t>(next.size())) continue;
        auto& slot = next[static_cast<std::size_t>(target)];
        slot = std::min(slot, base + c * c);
      }
    }
    table.best.swap(next);
  }
  return table;
}

void require_positive(std::span<const std::int64_t> rho) {
  if (rho.empty()) throw DomainError("min_char_norm: rho must be nonempty");
  for (auto r : rho) {
    if (r < 1) throw DomainError("min_char_norm: rho entries must be >= 1");
  }
}

std::int64_t v_from_norm(std::int64_t min_norm, std::size_t length) {
  const std::int64_t excess = min_norm - static_cast<std::int64_t>(length);
  if (excess % 8 != 0) throw InternalError("min_char_norm: |c|^2 - t - 1 is not divisible by 8");
  return excess / 8;
}

}  // namespace

std::int64_t min_char_norm(std::span<const std::int64_t> rho, std::int64_t k) {
  require_positive(rho);
  const std::int64_t n = norm(rho);
  if (k < 0 || 2 * k > n) {
    throw DomainError("min_char_norm: k = " + std::to_string(k) + " outside [0, n/2] for n = " + std::to_string(n));
  }
  return char_norm_profile(rho)[static_cast<std::size_t>(k)];
}

// V_0 .. V_{floor(n/2)} from a single pass over the box, re-checked against a
// box enlarged by one odd step in every coordinate.
std::vector<std::int64_t> char_norm_profile(std::span<const std::int64_t> rho) {
  require_positive(rho);
  const std::int64_t n = norm(rho);
  const NormTable box = odd_box_minima(rho, 0);
  const NormTable wider = odd_box_minima(rho, 1);
  std::vector<std::int64_t> out;
  for (std::int64_t k = 0; 2 * k <= n; ++k) {
    const std::int64_t target = 2 * k - n;
    const std::int64_t inside = box.at(target);
    if (inside == kUnreached) {
      throw DomainError("min_char_norm: no characteristic vector with c.rho = " + std::to_string(target));
    }
    if (wider.at(target) < inside) throw InternalError("min_char_norm: minimiser escapes the search box");
    out.push_back(v_from_norm(inside, rho.size()));
  }
  return out;
}

}  // namespace altsurg
