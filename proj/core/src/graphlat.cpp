#include "altsurg/graphlat.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "altsurg/checked.hpp"
#include "altsurg/errors.hpp"

namespace altsurg {

// ---------------------------------------------------------------------------
// Multigraphs

Multigraph::Multigraph(std::size_t vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u >= n_ || v >= n_) throw DomainError("edge endpoint out of range");
    if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
}

std::size_t Multigraph::degree(std::size_t v) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.first == v || e.second == v; }));
}

std::size_t Multigraph::multiplicity(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return static_cast<std::size_t>(std::count(edges_.begin(), edges_.end(), Edge{u, v}));
}

std::size_t Multigraph::max_degree() const {
  std::vector<std::size_t> d(n_, 0);
  for (const auto& [u, v] : edges_) ++d[u], ++d[v];
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

namespace {

// Components of the graph with vertex `skip` removed.
std::size_t component_count(const Multigraph& g, std::optional<std::size_t> skip) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [u, v] : g.edges()) {
    if (skip && (u == *skip || v == *skip)) continue;
    parent[find(u)] = find(v);
  }
  std::size_t count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if ((!skip || v != *skip) && find(v) == v) ++count;
  }
  return count;
}

}  // namespace

bool Multigraph::is_connected() const { return component_count(*this, std::nullopt) <= 1; }

IntMatrix Multigraph::laplacian() const {
  IntMatrix l(n_, IntVector(n_, 0));
  for (const auto& [u, v] : edges_) {
    ++l[u][u];
    ++l[v][v];
    --l[u][v];
    --l[v][u];
  }
  return l;
}

GraphLattice laplacian_lattice(const Multigraph& g, std::size_t root) {
  if (root >= g.vertex_count()) throw DomainError("laplacian_lattice: root out of range");
  if (!g.is_connected()) throw DomainError("laplacian_lattice: graph is disconnected");
  const IntMatrix l = g.laplacian();
  IntMatrix reduced;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i == root) continue;
    IntVector row;
    for (std::size_t j = 0; j < l.size(); ++j) {
      if (j != root) row.push_back(l[i][j]);
    }
    reduced.push_back(std::move(row));
  }
  return GraphLattice{g, root, GramMatrix(std::move(reduced))};
}

std::int64_t spanning_tree_count(const Multigraph& g) {
  if (g.vertex_count() == 0 || !g.is_connected()) return 0;
  return laplacian_lattice(g, g.vertex_count() - 1).gram.determinant();
}

bool is_two_connected(const Multigraph& g) {
  if (!g.is_connected()) throw DomainError("is_two_connected: graph is disconnected");
  if (g.vertex_count() <= 2) return true;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (component_count(g, v) > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Reduction and enumeration

namespace {

using Real = long double;

// Gram-Schmidt data of a positive-definite Gram matrix: Q(x) =
// sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2.
std::vector<std::vector<Real>> fincke_pohst_form(const GramMatrix& g) {
  const std::size_t n = g.rank();
  std::vector<std::vector<Real>> q(n, std::vector<Real>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    Real d = static_cast<Real>(g(i, i));
    for (std::size_t k = 0; k < i; ++k) d -= q[k][k] * q[k][i] * q[k][i];
    if (d <= 0) throw DomainError("Gram matrix is not positive definite");
    q[i][i] = d;
    for (std::size_t j = i + 1; j < n; ++j) {
      Real s = static_cast<Real>(g(i, j));
      for (std::size_t k = 0; k < i; ++k) s -= q[k][k] * q[k][i] * q[k][j];
      q[i][j] = s / d;
    }
  }
  return q;
}

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner) {
  const std::size_t cols = b.empty() ? 0 : b.front().size();
  IntMatrix c(a.size(), IntVector(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] = checked_add(c[i][j], checked_mul(a[i][k], b[k][j]));
    }
  return c;
}

IntMatrix transpose(const IntMatrix& a, std::size_t cols) {
  IntMatrix t(cols, IntVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

// x^T (rows) as a coefficient vector in the original basis.
IntVector apply_rows(const IntVector& x, const IntMatrix& t) {
  IntVector out(t.empty() ? 0 : t.front().size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = checked_add(out[j], checked_mul(x[i], t[i][j]));
  }
  return out;
}

IntVector gram_times(const GramMatrix& g, const IntVector& x) {
  IntVector out(g.rank(), 0);
  for (std::size_t i = 0; i < g.rank(); ++i) out[i] = dot(g.rows()[i], x);
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

// Index of the sublattice spanned by `vectors` in Z^rank (0 if not full rank).
std::int64_t span_index(const std::vector<IntVector>& vectors, std::size_t rank) {
  const IntMatrix h = hermite_normal_form(IntMatrix(vectors.begin(), vectors.end()), rank);
  if (h.size() < rank) return 0;
  std::int64_t index = 1;
  for (std::size_t i = 0; i < rank; ++i) index = checked_mul(index, h[i][i]);
  return index;
}

}  // namespace

ReducedBasis lll_reduce(const GramMatrix& input) {
  const std::size_t n = input.rank();
  IntMatrix g = input.rows();
  IntMatrix t = identity(n);
  IntMatrix tinv = identity(n);
  if (n <= 1) return {GramMatrix(std::move(g)), std::move(t), std::move(tinv)};

  auto gso = [&](std::vector<std::vector<Real>>& mu, std::vector<Real>& b) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Real s = static_cast<Real>(g[i][j]);
        for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * b[k];
        mu[i][j] = s / b[j];
      }
      Real d = static_cast<Real>(g[i][i]);
      for (std::size_t k = 0; k < i; ++k) d -= mu[i][k] * mu[i][k] * b[k];
      if (d <= 0) throw DomainError("lll_reduce: Gram matrix is not positive definite");
      b[i] = d;
    }
  };
  // b_k <- b_k - r b_j
  auto subtract = [&](std::size_t k, std::size_t j, std::int64_t r) {
    const std::int64_t gkk = checked_add(checked_sub(g[k][k], checked_mul(2 * r, g[k][j])), checked_mul(checked_mul(r, r), g[j][j]));
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      g[k][i] = g[i][k] = checked_sub(g[k][i], checked_mul(r, g[j][i]));
    }
    g[k][k] = gkk;
    for (std::size_t c = 0; c < n; ++c) t[k][c] = checked_sub(t[k][c], checked_mul(r, t[j][c]));
    for (std::size_t row = 0; row < n; ++row) tinv[row][j] = checked_add(tinv[row][j], checked_mul(r, tinv[row][k]));
  };
  auto swap_adjacent = [&](std::size_t k) {
    std::swap(g[k], g[k - 1]);
    for (auto& row : g) std::swap(row[k], row[k - 1]);
    std::swap(t[k], t[k - 1]);
    for (auto& row : tinv) std::swap(row[k], row[k - 1]);
  };

  std::vector<std::vector<Real>> mu(n, std::vector<Real>(n, 0));
  std::vector<Real> b(n, 0);
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 100000) throw InternalError("lll_reduce: no convergence");
    gso(mu, b);
    for (std::size_t j = k; j-- > 0;) {
      const auto r = static_cast<std::int64_t>(std::llround(mu[k][j]));
      if (r == 0) continue;
      subtract(k, j, r);
      for (std::size_t l = 0; l < j; ++l) mu[k][l] -= static_cast<Real>(r) * mu[j][l];
      mu[k][j] -= static_cast<Real>(r);
    }
    gso(mu, b);
    if (b[k] < (Real(0.99) - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]) {
      swap_adjacent(k);
      k = std::max<std::size_t>(k - 1, 1);
    } else {
      ++k;
    }
  }
  return {GramMatrix(std::move(g)), std::move(t), std::move(tinv)};
}

std::vector<IntVector> short_vectors(const GramMatrix& g, std::int64_t bound) {
  const std::size_t n = g.rank();
  std::vector<IntVector> out;
  if (n == 0 || bound < 1) return out;
  const ReducedBasis red = lll_reduce(g);
  const auto q = fincke_pohst_form(red.gram);
  const Real slack = 1e-6L * static_cast<Real>(bound) + 1e-9L;

  IntVector x(n, 0);
  std::function<void(std::size_t, Real)> descend = [&](std::size_t i, Real remaining) {
    Real centre = 0;
    for (std::size_t j = i + 1; j < n; ++j) centre -= q[i][j] * static_cast<Real>(x[j]);
    const Real radius = std::sqrt(std::max<Real>(remaining + slack, 0) / q[i][i]);
    const auto lo = static_cast<std::int64_t>(std::ceil(centre - radius));
    const auto hi = static_cast<std::int64_t>(std::floor(centre + radius));
    for (std::int64_t v = lo; v <= hi; ++v) {
      x[i] = v;
      const Real d = static_cast<Real>(v) - centre;
      const Real left = remaining - q[i][i] * d * d;
      if (left < -slack) continue;
      if (i == 0) {
        if (is_zero(x)) continue;
        IntVector original = apply_rows(x, red.t);
        if (g.pair(original, original) <= bound) out.push_back(std::move(original));
      } else {
        descend(i - 1, left);
      }
    }
    x[i] = 0;
  };
  descend(n - 1, static_cast<Real>(bound));

  std::vector<std::pair<std::int64_t, IntVector>> keyed;
  keyed.reserve(out.size());
  for (auto& v : out) keyed.emplace_back(g.pair(v, v), std::move(v));
  std::sort(keyed.begin(), keyed.end());
  out.clear();
  for (auto& [norm_value, v] : keyed) out.push_back(std::move(v));
  return out;
}

std::vector<IntVector> irreducibles(const GramMatrix& g, std::int64_t bound) {
  if (bound < 1) throw DomainError("irreducibles: norm bound must be >= 1");
  if (g.rank() > 63) throw CapacityError("irreducibles: rank above 63");
  if (!g.is_positive_definite()) throw DomainError("irreducibles: Gram matrix is not positive definite");
  const auto vectors = short_vectors(g, bound);
  // z = x + y with x.y >= 0 iff u = 2x - z satisfies |u|^2 <= |z|^2 with
  // u = z mod 2L, so z is irreducible iff +-z are the only vectors of its
  // class mod 2L with norm <= |z|^2.
  // The zero vector sits in class 0 (z = z/2 + z/2 for z in 2L).
  std::unordered_map<std::uint64_t, std::vector<std::int64_t>> norms_by_class{{0, {0}}};
  std::vector<std::uint64_t> classes;
  classes.reserve(vectors.size());
  for (const auto& v : vectors) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < v.size(); ++i) key |= static_cast<std::uint64_t>(v[i] & 1) << i;
    classes.push_back(key);
    norms_by_class[key].push_back(g.pair(v, v));
  }
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& norms = norms_by_class[classes[i]];
    const std::int64_t z = g.pair(vectors[i], vectors[i]);
    // norms are ascending because vectors are sorted by norm
    const auto within = std::upper_bound(norms.begin(), norms.end(), z) - norms.begin();
    if (within == 2) out.push_back(vectors[i]);
  }
  return out;
}

std::vector<IntVector> irreducibles(const GraphLattice& lattice, std::int64_t bound) {
  return irreducibles(lattice.gram, bound);
}

namespace {

// Components of the non-orthogonality graph on `vectors`.
std::vector<std::vector<std::size_t>> orthogonality_components(const GramMatrix& g, const std::vector<IntVector>& vectors) {
  const std::size_t k = vectors.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::vector<IntVector> gv;
  gv.reserve(k);
  for (const auto& v : vectors) gv.push_back(gram_times(g, v));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      if (dot(gv[i], vectors[j]) != 0) parent[find(i)] = find(j);
    }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < k; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<IntMatrix> orthogonal_decomposition(const GramMatrix& g) {
  const std::size_t r = g.rank();
  if (r == 0) return {};
  const ReducedBasis red = lll_reduce(g);
  std::int64_t bound = 1;
  for (std::size_t i = 0; i < r; ++i) bound = std::max(bound, red.gram(i, i));
  std::vector<IntVector> irr;
  // The indecomposable vectors generate L, so a large enough bound works.
  for (int attempt = 0;; ++attempt) {
    irr = irreducibles(g, bound);
    if (span_index(irr, r) == 1) break;
    if (attempt > 8) throw InternalError("orthogonal_decomposition: irreducibles do not generate the lattice");
    bound = checked_mul(bound, 2);
  }
  std::vector<IntMatrix> out;
  for (const auto& comp : orthogonality_components(g, irr)) {
    IntMatrix members;
    for (auto i : comp) members.push_back(irr[i]);
    out.push_back(hermite_normal_form(std::move(members), r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Obtuse superbases

std::string superbase_violation(const ObtuseSuperbase& b) {
  const std::size_t r = b.host.rank();
  if (b.vectors.size() != r + 1) return "expected " + std::to_string(r + 1) + " vectors";
  IntVector sum(r, 0);
  for (const auto& v : b.vectors) {
    if (v.size() != r) return "vector length differs from host rank";
    for (std::size_t i = 0; i < r; ++i) sum[i] = checked_add(sum[i], v[i]);
  }
  if (!is_zero(sum)) return "vectors do not sum to zero";
  for (std::size_t i = 0; i < b.vectors.size(); ++i)
    for (std::size_t j = i + 1; j < b.vectors.size(); ++j) {
      if (b.host.pair(b.vectors[i], b.vectors[j]) > 0) {
        return "v_" + std::to_string(i) + " . v_" + std::to_string(j) + " > 0";
      }
    }
  const IntMatrix basis(b.vectors.begin() + 1, b.vectors.end());
  const std::int64_t d = determinant(basis);
  if (d != 1 && d != -1) return "v_1..v_r do not form a basis (determinant " + std::to_string(d) + ")";
  return {};
}

std::int64_t default_norm_bound(const GramMatrix& g) {
  std::int64_t m = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) m = std::max(m, g(i, i));
  return checked_add(m, 2);
}

namespace {

// Exhaustive search for an obtuse superbase of one indecomposable summand,
// drawing vertices from `cands`.
class ComponentSearch {
 public:
  ComponentSearch(const GramMatrix& g, std::vector<IntVector> cands, std::size_t rank, std::int64_t det,
                  std::int64_t bound, const IntMatrix* ambient,
                  std::function<bool(const std::vector<IntVector>&)> accept)
      : g_(g), cands_(std::move(cands)), rank_(rank), det_(det), bound_(bound), accept_(std::move(accept)) {
    for (const auto& c : cands_) {
      gc_.push_back(gram_times(g_, c));
      // Functionals: basis coefficients, pairings with basis vectors, and
      // ambient coordinates when the lattice is embedded.
      IntVector f = c;
      f.insert(f.end(), gc_.back().begin(), gc_.back().end());
      if (ambient) {
        const IntVector a = apply_rows(c, *ambient);
        f.insert(f.end(), a.begin(), a.end());
      }
      features_.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < cands_.size(); ++i) index_[key(cands_[i])] = i;
  }

  std::optional<std::vector<IntVector>> run() {
    std::vector<std::size_t> allowed(cands_.size());
    std::iota(allowed.begin(), allowed.end(), 0);
    const std::size_t f = features_.empty() ? 0 : features_.front().size();
    sum_.assign(g_.rank(), 0);
    fsum_.assign(f, 0);
    chosen_.clear();
    if (dfs(allowed)) {
      std::vector<IntVector> out;
      for (auto i : chosen_) out.push_back(cands_[i]);
      return out;
    }
    return std::nullopt;
  }

  std::size_t nodes() const noexcept { return nodes_; }

 private:
  static std::string key(const IntVector& v) {
    std::string s;
    for (auto x : v) s += std::to_string(x) + ",";
    return s;
  }

  void push(std::size_t i) {
    chosen_.push_back(i);
    for (std::size_t k = 0; k < sum_.size(); ++k) sum_[k] += cands_[i][k];
    for (std::size_t k = 0; k < fsum_.size(); ++k) fsum_[k] += features_[i][k];
  }

  void pop() {
    const std::size_t i = chosen_.back();
    chosen_.pop_back();
    for (std::size_t k = 0; k < sum_.size(); ++k) sum_[k] -= cands_[i][k];
    for (std::size_t k = 0; k < fsum_.size(); ++k) fsum_[k] -= features_[i][k];
  }

  bool leaf_ok() {
    IntMatrix pairing(rank_, IntVector(rank_));
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) pairing[i][j] = dot(gc_[chosen_[i + 1]], cands_[chosen_[j + 1]]);
    if (determinant(pairing) != det_) return false;
    if (!accept_) return true;
    std::vector<IntVector> vs;
    for (auto i : chosen_) vs.push_back(cands_[i]);
    return accept_(vs);
  }

  bool obtuse_with(std::size_t i, std::size_t j) const { return dot(gc_[i], cands_[j]) <= 0; }

  bool dfs(const std::vector<std::size_t>& allowed) {
    ++nodes_;
    const std::size_t rem = rank_ + 1 - chosen_.size();
    const bool zero = is_zero(sum_);
    if (rem == 0) return zero && leaf_ok();
    if (zero && !chosen_.empty()) return false;
    if (allowed.size() < rem) return false;

    const IntVector gs = gram_times(g_, sum_);
    for (auto p : chosen_) {
      if (dot(gs, cands_[p]) < 0) return false;
    }
    if (dot(gs, sum_) > static_cast<std::int64_t>(rem) * bound_) return false;

    if (rem == 1) {
      IntVector target = sum_;
      for (auto& x : target) x = -x;
      const auto it = index_.find(key(target));
      if (it == index_.end()) return false;
      if (!std::binary_search(allowed.begin(), allowed.end(), it->second)) return false;
      push(it->second);
      if (leaf_ok()) return true;
      pop();
      return false;
    }

    // Branch on the functional with the fewest vertices able to cancel it.
    std::size_t best_f = fsum_.size();
    std::size_t best_count = 0;
    for (std::size_t f = 0; f < fsum_.size(); ++f) {
      std::size_t count = 0;
      std::int64_t reach = 0;
      bool nonzero = false;
      for (auto i : allowed) {
        const std::int64_t value = features_[i][f];
        if (value != 0) nonzero = true;
        const bool cancels = fsum_[f] == 0 ? value > 0 : (value < 0) != (fsum_[f] < 0) && value != 0;
        if (cancels) {
          ++count;
          reach = std::max<std::int64_t>(reach, std::llabs(value));
        }
      }
      if (fsum_[f] == 0 && (!chosen_.empty() || !nonzero)) continue;
      if (count == 0) return false;
      if (fsum_[f] != 0 && checked_mul(reach, static_cast<std::int64_t>(rem)) < std::llabs(fsum_[f])) return false;
      if (best_f == fsum_.size() || count < best_count) {
        best_f = f;
        best_count = count;
      }
    }
    if (best_f == fsum_.size()) return false;

    std::vector<std::size_t> options;
    for (auto i : allowed) {
      const std::int64_t value = features_[i][best_f];
      const bool cancels =
          fsum_[best_f] == 0 ? value > 0 : value != 0 && (value < 0) != (fsum_[best_f] < 0);
      if (cancels) options.push_back(i);
    }
    std::vector<char> excluded(cands_.size(), 0);
    for (auto o : options) {
      excluded[o] = 1;
      std::vector<std::size_t> next;
      next.reserve(allowed.size());
      for (auto i : allowed) {
        if (!excluded[i] && obtuse_with(o, i)) next.push_back(i);
      }
      push(o);
      if (dfs(next)) return true;
      pop();
    }
    return false;
  }

  const GramMatrix& g_;
  std::vector<IntVector> cands_;
  std::size_t rank_;
  std::int64_t det_;
  std::int64_t bound_;
  std::function<bool(const std::vector<IntVector>&)> accept_;
  std::vector<IntVector> gc_;
  std::vector<IntVector> features_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> chosen_;
  IntVector sum_;
  IntVector fsum_;
  std::size_t nodes_ = 0;
};

SearchCertificate search_superbase(const GramMatrix& g, std::int64_t bound, const SearchOptions& options,
                                   const IntMatrix* ambient) {
  const std::size_t r = g.rank();
  if (r > options.rank_cap) {
    throw CapacityError("find_obtuse_superbase: rank " + std::to_string(r) + " exceeds rank cap " +
                        std::to_string(options.rank_cap));
  }
  if (bound < 1) throw DomainError("find_obtuse_superbase: norm bound must be >= 1");
  SearchCertificate cert;
  cert.norm_bound = bound;

  auto finish = [&](std::vector<IntVector> vectors) {
    ObtuseSuperbase b{g, std::move(vectors), {}};
    if (ambient) {
      for (const auto& v : b.vectors) b.ambient.push_back(apply_rows(v, *ambient));
    }
    return b;
  };

  if (r == 0) {
    auto b = finish({IntVector{}});
    if (options.accept && !options.accept(b)) {
      cert.note = "rejected by the acceptance test";
      return cert;
    }
    cert.found = true;
    cert.superbase = std::move(b);
    return cert;
  }

  const auto irr = irreducibles(g, bound);
  cert.vectors_examined = irr.size();
  if (span_index(irr, r) != 1) {
    cert.note = "irreducible vectors of norm <= " + std::to_string(bound) + " do not generate the lattice";
    return cert;
  }

  const auto components = orthogonality_components(g, irr);
  std::vector<std::vector<IntVector>> pieces;
  for (std::size_t c = 0; c < components.size(); ++c) {
    std::vector<IntVector> cands;
    for (auto i : components[c]) cands.push_back(irr[i]);
    const IntMatrix basis = hermite_normal_form(cands, r);
    IntMatrix pairing(basis.size(), IntVector(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) pairing[i][j] = g.pair(basis[i], basis[j]);
    std::function<bool(const std::vector<IntVector>&)> accept;
    if (options.accept && components.size() == 1) {
      accept = [&](const std::vector<IntVector>& vs) { return options.accept(finish(vs)); };
    }
    ComponentSearch search(g, std::move(cands), basis.size(), determinant(pairing), bound, ambient, accept);
    auto found = search.run();
    cert.nodes += search.nodes();
    if (!found) {
      cert.note = "summand " + std::to_string(c + 1) + " of " + std::to_string(components.size()) + " (rank " +
                  std::to_string(basis.size()) + ") has no obtuse superbase among " +
                  std::to_string(components[c].size()) + " irreducible vectors of norm <= " + std::to_string(bound);
      return cert;
    }
    pieces.push_back(std::move(*found));
  }

  // Glue the summands' superbases at a single shared vertex.
  std::vector<IntVector> vectors{IntVector(r, 0)};
  for (const auto& piece : pieces) {
    for (std::size_t i = 0; i < r; ++i) vectors[0][i] += piece[0][i];
    vectors.insert(vectors.end(), piece.begin() + 1, piece.end());
  }
  auto b = finish(std::move(vectors));
  if (const auto bad = superbase_violation(b); !bad.empty()) {
    throw InternalError("find_obtuse_superbase: assembled superbase is invalid: " + bad);
  }
  if (options.accept && components.size() > 1 && !options.accept(b)) {
    cert.note = "rejected by the acceptance test";
    return cert;
  }
  cert.found = true;
  cert.superbase = std::move(b);
  return cert;
}

}  // namespace

SearchCertificate find_obtuse_superbase(const GramMatrix& g, std::int64_t norm_bound, const SearchOptions& options) {
  return search_superbase(g, norm_bound, options, nullptr);
}

SearchCertificate find_obtuse_superbase(const EmbeddedLattice& lattice, std::int64_t norm_bound,
                                        const SearchOptions& options) {
  return search_superbase(lattice.gram, norm_bound, options, &lattice.basis);
}

Multigraph superbase_graph(const ObtuseSuperbase& b) {
  if (const auto bad = superbase_violation(b); !bad.empty()) throw DomainError("superbase_graph: " + bad);
  std::vector<Multigraph::Edge> edges;
  for (std::size_t i = 0; i < b.vectors.size(); ++i)
    for (std::size_t j = i + 1; j < b.vectors.size(); ++j) {
      const std::int64_t m = -b.host.pair(b.vectors[i], b.vectors[j]);
      for (std::int64_t k = 0; k < m; ++k) edges.emplace_back(i, j);
    }
  return Multigraph(b.vectors.size(), std::move(edges));
}

ObtuseSuperbase superbase_modify(const ObtuseSuperbase& b, std::size_t v_index, const IntVector& x,
                                 const IntVector& y) {
  if (const auto bad = superbase_violation(b); !bad.empty()) throw DomainError("superbase_modify: " + bad);
  if (v_index >= b.vectors.size()) throw DomainError("superbase_modify: vertex index out of range");
  const IntVector& v = b.vectors[v_index];
  if (x.size() != v.size() || y.size() != v.size()) throw DomainError("superbase_modify: wrong vector length");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (x[i] + y[i] != v[i]) throw DomainError("superbase_modify: x + y != v");
  }
  if (b.host.pair(x, y) != -1) throw DomainError("superbase_modify: x.y must be -1");
  if (!is_two_connected(superbase_graph(b))) throw DomainError("superbase_modify: host lattice is decomposable");

  auto unique_partner = [&](const IntVector& w, const char* name) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < b.vectors.size(); ++i) {
      if (i == v_index || b.host.pair(b.vectors[i], w) <= 0) continue;
      if (hit) throw DomainError(std::string("superbase_modify: more than one u with u.") + name + " > 0");
      hit = i;
    }
    if (!hit) throw DomainError(std::string("superbase_modify: no u with u.") + name + " > 0");
    return *hit;
  };
  const std::size_t u1 = unique_partner(x, "x");
  const std::size_t u2 = unique_partner(y, "y");
  if (u1 == u2) throw DomainError("superbase_modify: u_1 and u_2 coincide");

  ObtuseSuperbase out{b.host, {}, {}};
  for (std::size_t i = 0; i < b.vectors.size(); ++i) {
    if (i != v_index && i != u1 && i != u2) out.vectors.push_back(b.vectors[i]);
  }
  IntVector merged(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) merged[i] = b.vectors[u1][i] + b.vectors[u2][i];
  out.vectors.push_back(x);
  out.vectors.push_back(y);
  out.vectors.push_back(std::move(merged));
  if (const auto bad = superbase_violation(out); !bad.empty()) throw DomainError("superbase_modify: result invalid: " + bad);
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

std::optional<IntMatrix> lattice_isomorphism(const GramMatrix& a, const GramMatrix& b, std::size_t rank_cap) {
  const std::size_t n = a.rank();
  if (n != b.rank()) return std::nullopt;
  if (n > rank_cap) {
    throw CapacityError("lattice_isomorphism: rank " + std::to_string(n) + " exceeds rank cap " + std::to_string(rank_cap));
  }
  if (n == 0) return IntMatrix{};
  if (!a.is_positive_definite() || !b.is_positive_definite()) {
    throw DomainError("lattice_isomorphism: both forms must be positive definite");
  }
  if (a.determinant() != b.determinant()) return std::nullopt;

  const ReducedBasis ra = lll_reduce(a);
  const ReducedBasis rb = lll_reduce(b);
  std::int64_t bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, rb.gram(i, i));

  // Vectors of A' and B' by norm; unequal counts rule out an isometry.
  auto by_norm = [bound](const GramMatrix& g) {
    std::map<std::int64_t, std::vector<IntVector>> groups;
    for (auto& v : short_vectors(g, bound)) groups[g.pair(v, v)].push_back(std::move(v));
    return groups;
  };
  const auto ga = by_norm(ra.gram);
  const auto gb = by_norm(rb.gram);
  if (ga.size() != gb.size()) return std::nullopt;
  for (auto ia = ga.begin(), ib = gb.begin(); ia != ga.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.size() != ib->second.size()) return std::nullopt;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return ga.at(rb.gram(i, i)).size() < ga.at(rb.gram(j, j)).size();
  });

  IntMatrix x(n);
  std::vector<IntVector> gx(n);
  std::function<bool(std::size_t)> assign = [&](std::size_t depth) {
    if (depth == n) return true;
    const std::size_t i = order[depth];
    for (const auto& cand : ga.at(rb.gram(i, i))) {
      if (depth == 0) {
        const auto first = std::find_if(cand.begin(), cand.end(), [](std::int64_t c) { return c != 0; });
        if (*first < 0) continue;
      }
      const IntVector gc = gram_times(ra.gram, cand);
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t j = order[d];
        ok = dot(gc, x[j]) == rb.gram(i, j);
      }
      if (!ok) continue;
      x[i] = cand;
      gx[i] = gc;
      if (assign(depth + 1)) return true;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;

  // b = Tb^{-1} B' Tb^{-T}, B' = X A' X^T, A' = Ta a Ta^T.
  const IntMatrix u = multiply(multiply(rb.t_inverse, x, n), ra.t, n);
  const IntMatrix check = multiply(multiply(u, a.rows(), n), transpose(u, n), n);
  if (check != b.rows()) throw InternalError("lattice_isomorphism: witness fails verification");
  return u;
}

bool lattice_isomorphic(const GramMatrix& a, const GramMatrix& b, std::size_t rank_cap) {
  return lattice_isomorphism(a, b, rank_cap).has_value();
}

}  // namespace altsurg
