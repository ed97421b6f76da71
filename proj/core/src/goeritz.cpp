#include "altsurg/goeritz.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "altsurg/errors.hpp"

namespace altsurg {

namespace {

// Face id of every corner (4 c + i is the corner between strands i and
// i+1 of crossing c), traced through the rotation system.
struct FaceStructure {
  std::vector<std::size_t> face_of;
  std::size_t faces = 0;
  std::vector<int> color;  // per face, 0 or 1; face_of[0] has color 0
};

FaceStructure trace_faces(const PDCode& pd) {
  const std::size_t n = pd.crossings.size();
  // Other occurrence of each (crossing, position) label.
  std::vector<std::size_t> partner(4 * n);
  std::map<std::int64_t, std::vector<std::size_t>> where;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < 4; ++i) where[pd.crossings[c][i]].push_back(4 * c + i);
  for (const auto& [label, slots] : where) {
    partner[slots[0]] = slots[1];
    partner[slots[1]] = slots[0];
  }

  FaceStructure fs;
  fs.face_of.assign(4 * n, SIZE_MAX);
  for (std::size_t start = 0; start < 4 * n; ++start) {
    if (fs.face_of[start] != SIZE_MAX) continue;
    std::size_t corner = start;
    while (fs.face_of[corner] == SIZE_MAX) {
      fs.face_of[corner] = fs.faces;
      // Leave along strand i+1; the face continues at the arrival corner.
      const std::size_t out = 4 * (corner / 4) + (corner % 4 + 1) % 4;
      corner = partner[out];
    }
    if (corner != start) throw ParseError("PD code does not trace closed faces");
    ++fs.faces;
  }
  if (fs.faces != n + 2) {
    throw ParseError("PD code has " + std::to_string(fs.faces) + " faces, expected " + std::to_string(n + 2) +
                     " for a connected planar diagram");
  }

  // Faces on either side of a strand get opposite colors.
  std::vector<std::vector<std::size_t>> adjacent(fs.faces);
  for (std::size_t corner = 0; corner < 4 * n; ++corner) {
    const std::size_t next = 4 * (corner / 4) + (corner % 4 + 1) % 4;
    adjacent[fs.face_of[corner]].push_back(fs.face_of[next]);
    adjacent[fs.face_of[next]].push_back(fs.face_of[corner]);
  }
  fs.color.assign(fs.faces, -1);
  std::deque<std::size_t> queue{fs.face_of[0]};
  fs.color[fs.face_of[0]] = 0;
  while (!queue.empty()) {
    const std::size_t f = queue.front();
    queue.pop_front();
    for (auto h : adjacent[f]) {
      if (fs.color[h] == -1) {
        fs.color[h] = 1 - fs.color[f];
        queue.push_back(h);
      } else if (fs.color[h] == fs.color[f]) {
        throw ParseError("PD code admits no chessboard coloring");
      }
    }
  }
  return fs;
}

}  // namespace

void validate_pd(const PDCode& pd) {
  if (pd.crossings.empty()) throw ParseError("PD code has no crossings");
  std::map<std::int64_t, int> count;
  for (const auto& x : pd.crossings) {
    for (auto label : x) {
      if (label <= 0) throw ParseError("PD arc labels must be positive, got " + std::to_string(label));
      ++count[label];
    }
  }
  for (const auto& [label, k] : count) {
    if (k != 2) {
      throw ParseError("arc " + std::to_string(label) + " appears " + std::to_string(k) + " times, expected 2");
    }
  }
  trace_faces(pd);
}

bool WhiteDiagram::has_loops() const {
  return std::any_of(edges.begin(), edges.end(), [](const auto& e) { return e.first == e.second; });
}

namespace {

std::optional<std::size_t> first_loop(const WhiteDiagram& w) {
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    if (w.edges[i].first == w.edges[i].second) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> first_cut_edge(const WhiteDiagram& w) {
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    std::vector<Multigraph::Edge> rest;
    for (std::size_t j = 0; j < w.edges.size(); ++j) {
      if (j != i && w.edges[j].first != w.edges[j].second) rest.push_back(w.edges[j]);
    }
    if (w.edges[i].first != w.edges[i].second && !Multigraph(w.vertices, rest).is_connected()) return i;
  }
  return std::nullopt;
}

}  // namespace

bool WhiteDiagram::reduced() const { return !first_loop(*this) && !first_cut_edge(*this); }

Multigraph WhiteDiagram::graph() const {
  if (const auto loop = first_loop(*this)) {
    throw ReduceFirst("self-loop at crossing " + std::to_string(*loop) + " (nugatory crossing)");
  }
  return Multigraph(vertices, std::vector<Multigraph::Edge>(edges.begin(), edges.end()));
}

WhiteDiagram white_graph_from_pd(const PDCode& pd, Coloring coloring) {
  validate_pd(pd);
  const FaceStructure fs = trace_faces(pd);
  const int white = coloring == Coloring::A ? 1 : 0;

  std::vector<std::size_t> vertex_of(fs.faces, SIZE_MAX);
  WhiteDiagram w;
  for (std::size_t corner = 0; corner < fs.face_of.size(); ++corner) {
    const std::size_t f = fs.face_of[corner];
    if (fs.color[f] == white && vertex_of[f] == SIZE_MAX) vertex_of[f] = w.vertices++;
  }
  for (std::size_t c = 0; c < pd.crossings.size(); ++c) {
    // White corners of a crossing are opposite: {0, 2} or {1, 3}.
    const std::size_t first = fs.color[fs.face_of[4 * c]] == white ? 0 : 1;
    w.edges.emplace_back(vertex_of[fs.face_of[4 * c + first]], vertex_of[fs.face_of[4 * c + first + 2]]);
    w.mu.push_back(first == 0 ? -1 : 1);
  }
  return w;
}

GramMatrix goeritz_matrix(const WhiteDiagram& w, std::size_t dropped) {
  if (dropped >= w.vertices) throw DomainError("goeritz_matrix: dropped vertex out of range");
  if (w.mu.size() != w.edges.size()) throw DomainError("goeritz_matrix: one incidence number per edge required");
  IntMatrix full(w.vertices, IntVector(w.vertices, 0));
  for (std::size_t e = 0; e < w.edges.size(); ++e) {
    const auto [u, v] = w.edges[e];
    if (u == v) continue;
    full[u][v] += w.mu[e];
    full[v][u] += w.mu[e];
    full[u][u] -= w.mu[e];
    full[v][v] -= w.mu[e];
  }
  IntMatrix g;
  for (std::size_t i = 0; i < w.vertices; ++i) {
    if (i == dropped) continue;
    IntVector row;
    for (std::size_t j = 0; j < w.vertices; ++j) {
      if (j != dropped) row.push_back(full[i][j]);
    }
    g.push_back(std::move(row));
  }
  return GramMatrix(std::move(g));
}

GramMatrix goeritz_matrix(const WhiteDiagram& w) {
  if (w.vertices == 0) throw DomainError("goeritz_matrix: empty white graph");
  return goeritz_matrix(w, w.vertices - 1);
}

GramMatrix white_lattice(const WhiteDiagram& w) {
  const Multigraph g = w.graph();
  if (!g.is_connected()) throw DomainError("white_lattice: white graph is disconnected");
  if (const auto cut = first_cut_edge(w)) {
    throw ReduceFirst("cut-edge at crossing " + std::to_string(*cut) + " (nugatory crossing)");
  }
  const bool all_negative = std::all_of(w.mu.begin(), w.mu.end(), [](int m) { return m == -1; });
  if (!all_negative) {
    const bool all_positive = std::all_of(w.mu.begin(), w.mu.end(), [](int m) { return m == 1; });
    throw DomainError(all_positive ? "white_lattice: incidence numbers are all +1; use the other coloring"
                                   : "white_lattice: mixed incidence numbers (diagram is not alternating)");
  }
  GramMatrix gram = goeritz_matrix(w);
  if (!gram.is_positive_definite()) throw InternalError("white_lattice: Goeritz form is not positive definite");
  if (gram.rank() > 0 && !short_vectors(gram, 1).empty()) {
    throw InternalError("white_lattice: reduced diagram produced a norm-1 vector");
  }
  return gram;
}

std::string to_string(VerifyStage stage) {
  switch (stage) {
    case VerifyStage::Recovery: return "recovery";
    case VerifyStage::Window: return "window";
    case VerifyStage::RankFeasibility: return "rank-feasibility";
    case VerifyStage::Isomorphism: return "isomorphism";
  }
  return "unknown";
}

VerificationReport verify_alternating_surgery(const WhiteDiagram& w, const AlexanderPolynomial& delta,
                                              const Rational& slope) {
  VerificationReport report;
  auto fail = [&](VerifyStage stage, std::string detail) {
    report.pass = false;
    report.failed_stage = stage;
    report.detail = std::move(detail);
    return report;
  };

  report.white_gram = white_lattice(w);
  const auto outcome = recover_stable(v_sequence(delta));
  if (const auto* none = std::get_if<NoSolution>(&outcome)) {
    return fail(VerifyStage::Recovery, "no changemaker vector (" + none->witness + ")");
  }
  const StableCoefficients stable = std::get<RecoveryFound>(outcome).stable;
  report.stable = stable;
  if (!stable.empty()) {
    report.n = n_invariant(stable);
    report.window = slope_window(stable);
    if (!slope_in_window(slope, stable)) {
      return fail(VerifyStage::Window, "slope " + slope.to_string() + " outside [" +
                                           std::to_string(report.window->first) + "," +
                                           std::to_string(report.window->second) + "]");
    }
  }

  EmbeddedLattice lattice;
  try {
    lattice = build_changemaker_lattice(slope, stable);
  } catch (const DomainError& e) {
    return fail(VerifyStage::RankFeasibility, e.what());
  }
  const std::size_t white_rank = report.white_gram->rank();
  if (white_rank < lattice.rank()) {
    return fail(VerifyStage::Isomorphism, "rank mismatch: white lattice rank " + std::to_string(white_rank) +
                                              ", changemaker lattice rank " + std::to_string(lattice.rank()));
  }
  report.padding = white_rank - lattice.rank();
  report.changemaker_gram = lattice.gram.direct_sum_identity(report.padding);

  report.witness = lattice_isomorphism(*report.white_gram, *report.changemaker_gram);
  if (!report.witness) {
    return fail(VerifyStage::Isomorphism, "no isometry: determinants " +
                                              std::to_string(report.white_gram->determinant()) + " and " +
                                              std::to_string(report.changemaker_gram->determinant()));
  }
  report.pass = true;
  const auto bound = std::max<std::int64_t>(1, static_cast<std::int64_t>(w.graph().max_degree()));
  report.superbase_found = find_obtuse_superbase(*report.changemaker_gram, bound).found;
  return report;
}

VerificationReport verify_alternating_surgery(const PDCode& pd, const AlexanderPolynomial& delta,
                                              const Rational& slope) {
  auto all = [](const WhiteDiagram& w, int value) {
    return std::all_of(w.mu.begin(), w.mu.end(), [value](int m) { return m == value; });
  };
  WhiteDiagram a = white_graph_from_pd(pd, Coloring::A);
  WhiteDiagram b = white_graph_from_pd(pd, Coloring::B);
  Coloring primary = Coloring::A;
  if (!all(a, -1)) {
    if (!all(b, -1)) throw DomainError("verify: no coloring has all incidence numbers -1 (diagram is not alternating)");
    std::swap(a, b);
    primary = Coloring::B;
  }
  const Coloring secondary = primary == Coloring::A ? Coloring::B : Coloring::A;

  VerificationReport first = verify_alternating_surgery(a, delta, slope);
  first.coloring = primary;
  if (first.pass) return first;

  for (auto& m : b.mu) m = -m;
  VerificationReport second = verify_alternating_surgery(b, delta, slope);
  second.coloring = secondary;
  second.mirrored = true;
  return second.pass ? second : first;
}

}  // namespace altsurg
