#pragma once

// Planar diagrams, their chessboard white graphs and Goeritz forms, and the
// check that a white lattice matches a predicted changemaker lattice.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "altsurg/cmlattice.hpp"
#include "altsurg/graphlat.hpp"
#include "altsurg/recovery.hpp"

namespace altsurg {

/// Crossings as arc labels listed counterclockwise from the incoming
/// under-strand.
struct PDCode {
  std::vector<std::array<std::int64_t, 4>> crossings;
};

/// Throws ParseError unless every label is positive and appears exactly
/// twice, and the face count matches a connected planar diagram.
void validate_pd(const PDCode& pd);

enum class Coloring { A, B };

/// White regions as vertices, one edge per crossing (in crossing order).
/// Edges may be loops here; the incidence numbers are parallel to edges.
struct WhiteDiagram {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<int> mu;

  bool has_loops() const;
  /// No loops and no cut-edges.
  bool reduced() const;
  /// Throws ReduceFirst on loops.
  Multigraph graph() const;
};

/// Coloring A makes the region at corner 1 of the first crossing (between
/// its second and third strands) white; B is the complementary choice.
WhiteDiagram white_graph_from_pd(const PDCode& pd, Coloring coloring);

/// Goeritz form on the white vertices other than `dropped`.
GramMatrix goeritz_matrix(const WhiteDiagram& w, std::size_t dropped);
/// Drops the highest-index vertex.
GramMatrix goeritz_matrix(const WhiteDiagram& w);

/// Positive-definite white lattice. Throws ReduceFirst for non-reduced
/// diagrams and DomainError unless every incidence number is -1.
GramMatrix white_lattice(const WhiteDiagram& w);

enum class VerifyStage { Recovery, Window, RankFeasibility, Isomorphism };

std::string to_string(VerifyStage stage);

struct VerificationReport {
  bool pass = false;
  std::optional<VerifyStage> failed_stage;
  std::string detail;

  /// Which chessboard coloring produced the reported result, and whether
  /// it was read as the mirror (all incidence numbers +1, negated).
  std::optional<Coloring> coloring;
  bool mirrored = false;

  std::optional<StableCoefficients> stable;
  std::optional<std::int64_t> n;
  std::optional<std::pair<std::int64_t, std::int64_t>> window;
  std::optional<GramMatrix> white_gram;
  std::optional<GramMatrix> changemaker_gram;
  /// Unit summands added to the changemaker side to match ranks.
  std::size_t padding = 0;
  /// U with U white U^T = changemaker.
  std::optional<IntMatrix> witness;
  /// On PASS: the changemaker side admits an obtuse superbase within the
  /// white graph's maximum degree.
  std::optional<bool> superbase_found;
};

/// Checks one white diagram (all incidence numbers -1).
VerificationReport verify_alternating_surgery(const WhiteDiagram& w, const AlexanderPolynomial& delta,
                                              const Rational& slope);

/// Tries the coloring whose incidence numbers are all -1, then the other
/// coloring read as the mirror; reports the first PASS, else the first
/// attempt's failure.
VerificationReport verify_alternating_surgery(const PDCode& pd, const AlexanderPolynomial& delta,
                                              const Rational& slope);

}  // namespace altsurg
