#pragma once

// Graph lattices, irreducible vectors, obtuse superbases, and small-rank
// lattice isomorphism. Lattice vectors are coefficient vectors against the
// basis underlying a Gram matrix unless stated otherwise.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "altsurg/cmlattice.hpp"
#include "altsurg/core.hpp"

namespace altsurg {

/// Undirected loopless multigraph on vertices 0..n-1; parallel edges repeat.
class Multigraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Multigraph() = default;
  /// Throws DomainError on self-loops or out-of-range endpoints.
  Multigraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t degree(std::size_t v) const;
  std::size_t multiplicity(std::size_t u, std::size_t v) const;
  std::size_t max_degree() const;
  bool is_connected() const;
  /// Full Laplacian, d(v) on the diagonal and -e(v,w) off it.
  IntMatrix laplacian() const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

struct GraphLattice {
  Multigraph graph;
  std::size_t root = 0;
  /// Reduced Laplacian on the vertices other than root, in index order.
  GramMatrix gram;
};

/// Throws DomainError if the graph is disconnected or root is out of range.
GraphLattice laplacian_lattice(const Multigraph& g, std::size_t root);

/// Kirchhoff count; 0 for disconnected graphs.
std::int64_t spanning_tree_count(const Multigraph& g);

/// No cut vertex. Throws DomainError if disconnected.
bool is_two_connected(const Multigraph& g);

/// Basis change produced by LLL: gram = t * G * t^T, and t_inverse * t = I.
struct ReducedBasis {
  GramMatrix gram;
  IntMatrix t;
  IntMatrix t_inverse;
};

ReducedBasis lll_reduce(const GramMatrix& g);

/// All nonzero x with x^T G x <= bound, sorted by norm then
/// lexicographically.
std::vector<IntVector> short_vectors(const GramMatrix& g, std::int64_t bound);

/// Irreducible vectors of norm <= bound, in the order of short_vectors.
/// Throws DomainError when bound < 1 or the form is not positive definite.
std::vector<IntVector> irreducibles(const GramMatrix& g, std::int64_t bound);
std::vector<IntVector> irreducibles(const GraphLattice& lattice, std::int64_t bound);

/// Bases (rows of coefficient vectors) of the indecomposable orthogonal
/// summands, each in Hermite normal form, ordered by their first row.
std::vector<IntMatrix> orthogonal_decomposition(const GramMatrix& g);

struct ObtuseSuperbase {
  GramMatrix host;
  /// v_0..v_r as coefficient vectors against the host basis.
  std::vector<IntVector> vectors;
  /// Ambient images when the host is an embedded lattice; otherwise empty.
  std::vector<IntVector> ambient;
};

/// Empty string when the superbase invariants hold, else the first failure.
std::string superbase_violation(const ObtuseSuperbase& b);

struct SearchOptions {
  std::size_t rank_cap = 12;
  /// Extra acceptance test applied to complete candidate superbases.
  std::function<bool(const ObtuseSuperbase&)> accept;
};

struct SearchCertificate {
  bool found = false;
  std::optional<ObtuseSuperbase> superbase;
  std::int64_t norm_bound = 0;
  /// Irreducible candidates considered.
  std::size_t vectors_examined = 0;
  std::size_t nodes = 0;
  /// For NOT_FOUND, what exhausted the search.
  std::string note;
};

/// max diagonal entry + 2.
std::int64_t default_norm_bound(const GramMatrix& g);

/// Throws CapacityError when the rank exceeds options.rank_cap.
SearchCertificate find_obtuse_superbase(const GramMatrix& g, std::int64_t norm_bound, const SearchOptions& options = {});
SearchCertificate find_obtuse_superbase(const EmbeddedLattice& lattice, std::int64_t norm_bound,
                                        const SearchOptions& options = {});

/// |v_i . v_j| parallel edges between i and j. Throws DomainError on an
/// invalid superbase.
Multigraph superbase_graph(const ObtuseSuperbase& b);

/// Replaces v = x + y (x.y = -1) and the unique u_1, u_2 with u_1.x > 0,
/// u_2.y > 0 by x, y and u_1 + u_2.
ObtuseSuperbase superbase_modify(const ObtuseSuperbase& b, std::size_t v_index, const IntVector& x,
                                 const IntVector& y);

/// Unimodular U with U a U^T = b, or nullopt. Throws CapacityError above
/// rank_cap.
std::optional<IntMatrix> lattice_isomorphism(const GramMatrix& a, const GramMatrix& b, std::size_t rank_cap = 12);
bool lattice_isomorphic(const GramMatrix& a, const GramMatrix& b, std::size_t rank_cap = 12);

}  // namespace altsurg
