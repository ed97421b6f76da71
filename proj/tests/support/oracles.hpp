#pragma once

// Independent reference computations used to check the library. Each one is
// deliberately naive: exhaustive enumeration or textbook formulas.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "altsurg/core.hpp"
#include "altsurg/graphlat.hpp"

namespace oracle {

using altsurg::IntMatrix;
using altsurg::IntVector;

/// Cofactor expansion along the first row.
std::int64_t cofactor_determinant(const IntMatrix& m);

/// gcd over every maximal minor, enumerating column subsets.
std::int64_t minor_gcd(const IntMatrix& rows, std::size_t columns);

/// Every k in [0, sum] realised by a subset, via 2^n enumeration.
bool all_subset_sums(const IntVector& entries);

/// Defining inequalities of the changemaker condition on an ascending tuple.
bool changemaker_inequalities(const IntVector& ascending);

/// Entry k is (min |c|^2 - len) / 8 over odd c with |c_i| <= 2 rho_i + 3
/// and c.rho = 2k - |rho|^2, for 0 <= k <= |rho|^2 / 2; full enumeration of
/// the box.
IntVector char_norm_profile_bruteforce(const IntVector& rho);

/// Alexander polynomial of T(r,s) from
/// t^{-(r-1)(s-1)/2} (t^{rs} - 1)(t - 1) / ((t^r - 1)(t^s - 1)).
std::map<std::int64_t, std::int64_t> torus_alexander(std::int64_t r, std::int64_t s);

/// All ascending changemaker tuples with entries in [1, max_entry] and
/// length in [1, max_length].
std::vector<IntVector> changemaker_tuples(std::int64_t max_entry, std::size_t max_length);

/// Connected loopless multigraph with 2..max_vertices vertices and at most
/// max_edges edges: a random spanning tree plus random extra edges.
altsurg::Multigraph random_connected_multigraph(std::mt19937_64& rng, std::size_t max_vertices,
                                                std::size_t max_edges);

/// Irreducible vectors of a graph lattice as +-[R], R and its complement
/// inducing connected subgraphs, in the coordinates of the non-root vertices.
std::vector<IntVector> cut_irreducibles(const altsurg::Multigraph& g, std::size_t root);

/// Solutions of x^T G x <= bound in the box |x_i| <= radius, nonzero.
std::vector<IntVector> box_vectors(const altsurg::GramMatrix& g, std::int64_t bound, std::int64_t radius);

}  // namespace oracle
