#include "altsurg/io.hpp"

#include <fstream>
#include <map>

#include "altsurg/errors.hpp"

namespace altsurg {

namespace {

const Json& require(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string(what) + ": missing \"" + key + "\"");
  }
  return j.at(key);
}

std::int64_t as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + ": expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

std::size_t as_index(const Json& j, const char* what) {
  const auto v = as_int(j, what);
  if (v < 0) throw ParseError(std::string(what) + ": expected a nonnegative integer, got " + j.dump());
  return static_cast<std::size_t>(v);
}

IntVector as_vector(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  IntVector v;
  for (const auto& x : j) v.push_back(as_int(x, what));
  return v;
}

IntMatrix as_matrix(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array of rows");
  IntMatrix m;
  for (const auto& row : j) m.push_back(as_vector(row, what));
  return m;
}

std::vector<std::pair<std::size_t, std::size_t>> as_edges(const Json& j) {
  if (!j.is_array()) throw ParseError("edges: expected an array");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edges: each edge is a pair, got " + e.dump());
    edges.emplace_back(as_index(e[0], "edges"), as_index(e[1], "edges"));
  }
  return edges;
}

Json edges_json(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Json out = Json::array();
  for (const auto& [u, v] : edges) out.push_back({u, v});
  return out;
}

Json superbase_json(const ObtuseSuperbase& b) {
  Json out;
  out["vectors"] = b.vectors;
  if (!b.ambient.empty()) out["ambient"] = b.ambient;
  out["graph"] = to_json(superbase_graph(b));
  return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json to_json(const EmbeddedLattice& lattice) {
  Json out;
  out["ambient_rank"] = lattice.ambient_rank;
  out["relations"] = lattice.relations;
  out["basis"] = lattice.basis;
  out["gram"] = lattice.gram.rows();
  out["slope"] = lattice.slope ? Json(lattice.slope->to_string()) : Json(nullptr);
  return out;
}

EmbeddedLattice lattice_from_json(const Json& j) {
  EmbeddedLattice lattice;
  const IntMatrix rows = as_matrix(require(j, "gram", "lattice"), "gram");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw ParseError("gram: matrix is not square");
    for (std::size_t k = 0; k < i; ++k) {
      if (rows[i][k] != rows[k][i]) throw ParseError("gram: matrix is not symmetric");
    }
  }
  lattice.gram = GramMatrix(rows);
  if (j.contains("basis")) {
    lattice.basis = as_matrix(j.at("basis"), "basis");
    if (!lattice.basis.empty() && lattice.basis.size() != rows.size()) {
      throw ParseError("basis: row count differs from the Gram rank");
    }
    if (!lattice.basis.empty() && gram(lattice.basis) != lattice.gram) {
      throw ParseError("basis: inner products disagree with gram");
    }
  }
  if (j.contains("relations")) lattice.relations = as_matrix(j.at("relations"), "relations");
  if (j.contains("ambient_rank")) {
    lattice.ambient_rank = as_index(j.at("ambient_rank"), "ambient_rank");
  } else if (!lattice.basis.empty()) {
    lattice.ambient_rank = lattice.basis.front().size();
  }
  for (const auto& b : lattice.basis) {
    if (b.size() != lattice.ambient_rank) throw ParseError("basis: row length differs from ambient_rank");
  }
  if (j.contains("slope") && !j.at("slope").is_null()) {
    if (!j.at("slope").is_string()) throw ParseError("slope: expected a \"p/q\" string");
    lattice.slope = Rational::parse(j.at("slope").get<std::string>());
  }
  return lattice;
}

Json to_json(const Multigraph& g) {
  Json out;
  out["vertices"] = g.vertex_count();
  out["edges"] = edges_json(g.edges());
  return out;
}

Multigraph graph_from_json(const Json& j) {
  const auto n = as_index(require(j, "vertices", "graph"), "vertices");
  try {
    return Multigraph(n, as_edges(require(j, "edges", "graph")));
  } catch (const DomainError& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

Json to_json(const WhiteDiagram& w) {
  Json out;
  out["vertices"] = w.vertices;
  out["edges"] = edges_json(w.edges);
  out["mu"] = w.mu;
  return out;
}

WhiteDiagram white_diagram_from_json(const Json& j) {
  WhiteDiagram w;
  w.vertices = as_index(require(j, "vertices", "white diagram"), "vertices");
  w.edges = as_edges(require(j, "edges", "white diagram"));
  for (const auto& [u, v] : w.edges) {
    if (u >= w.vertices || v >= w.vertices) throw ParseError("white diagram: edge endpoint out of range");
  }
  for (auto m : as_vector(require(j, "mu", "white diagram"), "mu")) {
    if (m != 1 && m != -1) throw ParseError("mu: entries must be +1 or -1");
    w.mu.push_back(static_cast<int>(m));
  }
  if (w.mu.size() != w.edges.size()) throw ParseError("mu: one entry per edge required");
  return w;
}

Json to_json(const AlexanderPolynomial& delta) {
  // Descending exponents read like the polynomial.
  Json coeffs = Json::object();
  const auto& c = delta.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) coeffs[std::to_string(it->first)] = it->second;
  return Json{{"coeffs", coeffs}};
}

AlexanderPolynomial alexander_from_json(const Json& j) {
  const Json& coeffs = require(j, "coeffs", "alexander");
  if (!coeffs.is_object()) throw ParseError("coeffs: expected an object keyed by exponent");
  std::map<std::int64_t, std::int64_t> m;
  for (const auto& [key, value] : coeffs.items()) {
    std::size_t used = 0;
    std::int64_t exponent = 0;
    try {
      exponent = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != key.size()) throw ParseError("coeffs: exponent \"" + key + "\" is not an integer");
    if (!m.emplace(exponent, as_int(value, "coeffs")).second) {
      throw ParseError("coeffs: exponent " + key + " repeated");
    }
  }
  try {
    return AlexanderPolynomial(std::move(m));
  } catch (const DomainError& e) {
    throw ParseError(std::string("alexander: ") + e.what());
  }
}

Json to_json(const PDCode& pd) {
  Json out = Json::array();
  for (const auto& x : pd.crossings) out.push_back(x);
  return Json{{"crossings", out}};
}

PDCode pd_from_json(const Json& j) {
  const Json& crossings = require(j, "crossings", "pd");
  if (!crossings.is_array()) throw ParseError("crossings: expected an array");
  PDCode pd;
  for (const auto& x : crossings) {
    const IntVector v = as_vector(x, "crossings");
    if (v.size() != 4) throw ParseError("crossings: each crossing has four labels, got " + x.dump());
    pd.crossings.push_back({v[0], v[1], v[2], v[3]});
  }
  validate_pd(pd);
  return pd;
}

Json to_json(const GramMatrix& g) { return g.rows(); }

Json to_json(const SearchCertificate& c) {
  Json out;
  out["status"] = c.found ? "FOUND" : "NOT_FOUND";
  out["norm_bound"] = c.norm_bound;
  out["vectors_examined"] = c.vectors_examined;
  out["nodes"] = c.nodes;
  if (c.superbase) out["superbase"] = superbase_json(*c.superbase);
  if (!c.note.empty()) out["note"] = c.note;
  return out;
}

Json to_json(const BoundsReport& r) {
  Json out;
  out["stable"] = r.stable.descending();
  out["genus"] = r.genus;
  out["genus_cap"] = r.genus_cap;
  out["n"] = r.n ? Json(*r.n) : Json(nullptr);
  out["window"] = r.n ? Json{*r.window_lo, *r.window_hi} : Json(nullptr);
  out["obstructions"] = r.obstructions;
  return out;
}

Json to_json(const VerificationReport& r) {
  Json out;
  out["status"] = r.pass ? "PASS" : "FAIL";
  out["failed_stage"] = r.failed_stage ? Json(to_string(*r.failed_stage)) : Json(nullptr);
  out["detail"] = r.detail;
  out["coloring"] = r.coloring ? Json(*r.coloring == Coloring::A ? "A" : "B") : Json(nullptr);
  out["mirrored"] = r.mirrored;
  out["stable"] = r.stable ? Json(r.stable->descending()) : Json(nullptr);
  out["n"] = r.n ? Json(*r.n) : Json(nullptr);
  out["window"] = r.window ? Json{r.window->first, r.window->second} : Json(nullptr);
  out["white_gram"] = r.white_gram ? to_json(*r.white_gram) : Json(nullptr);
  out["changemaker_gram"] = r.changemaker_gram ? to_json(*r.changemaker_gram) : Json(nullptr);
  out["padding"] = r.padding;
  out["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
  out["superbase_found"] = r.superbase_found ? Json(*r.superbase_found) : Json(nullptr);
  return out;
}

Json to_json(const RecoveryOutcome& o) {
  Json out;
  if (const auto* f = std::get_if<RecoveryFound>(&o)) {
    out["status"] = "FOUND";
    out["rho"] = f->rho;
    out["stable"] = f->stable.descending();
  } else {
    const auto& none = std::get<NoSolution>(o);
    out["status"] = "NO_SOLUTION";
    out["lemma"] = none.lemma;
    out["witness"] = none.witness;
  }
  return out;
}

}  // namespace altsurg
