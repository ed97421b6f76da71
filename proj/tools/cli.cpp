#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "altsurg/errors.hpp"
#include "altsurg/io.hpp"

namespace altsurg::cli {

namespace {

struct Globals {
  std::string format = "text";
  std::optional<std::int64_t> bound;
  std::size_t rank_cap = 12;
  bool force = false;
  bool verbose = false;
};

IntVector parse_list(const std::string& text) {
  IntVector out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ParseError("not an integer list: \"" + text + "\"");
    out.push_back(v);
  }
  return out;
}

StableCoefficients parse_stable(const std::string& text) {
  try {
    return StableCoefficients(parse_list(text));
  } catch (const DomainError& e) {
    throw ParseError(std::string("--stable: ") + e.what());
  }
}

Rational parse_slope(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const DomainError& e) {
    throw ParseError(std::string("--slope: ") + e.what());
  }
}

std::string join(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void print_gram(std::ostream& out, const GramMatrix& g) {
  for (const auto& row : g.rows()) out << "  [" << join(row) << "]\n";
}

std::string graph_line(const Multigraph& g) {
  std::string s = "vertices=" + std::to_string(g.vertex_count()) + " edges=";
  for (const auto& [u, v] : g.edges()) s += "(" + std::to_string(u) + "," + std::to_string(v) + ")";
  return s;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_bounds(const Globals& g, const std::string& alexander, const std::string& stable_text, bool stable_given,
               std::ostream& out) {
  StableCoefficients stable;
  if (stable_given) {
    stable = parse_stable(stable_text);
  } else {
    const auto outcome = recover_stable(v_sequence(alexander_from_json(read_json_file(alexander))));
    if (const auto* none = std::get_if<NoSolution>(&outcome)) {
      if (g.format == "json") {
        emit(out, to_json(outcome));
      } else {
        out << "no changemaker vector (" << none->witness << ")\n";
      }
      return kNonexistence;
    }
    stable = std::get<RecoveryFound>(outcome).stable;
  }
  const BoundsReport r = bounds_report(stable);
  if (g.format == "json") {
    emit(out, to_json(r));
    return kOk;
  }
  out << "stable=" << r.stable.to_string() << " g=" << r.genus;
  if (r.n) {
    out << " N=" << *r.n << " window=[" << *r.window_lo << "," << *r.window_hi << "]";
  } else {
    out << " trivial";
  }
  out << " cap=" << r.genus_cap << "\n";
  for (const auto& o : r.obstructions) out << "obstruction: " << o << "\n";
  return kOk;
}

int cmd_lattice(const Globals& g, const std::string& slope_text, const std::string& stable_text,
                std::optional<std::size_t> rank, std::ostream& out, std::ostream& err) {
  const Rational slope = parse_slope(slope_text);
  const StableCoefficients stable = parse_stable(stable_text);
  if (!g.force && !slope_in_window(slope, stable)) {
    const auto [lo, hi] = slope_window(stable);
    err << "slope " << slope.to_string() << " outside window [" << lo << "," << hi << "] (use --force)\n";
    return kNonexistence;
  }
  EmbeddedLattice lattice = build_changemaker_lattice(slope, stable);
  if (rank) {
    if (*rank < lattice.rank()) {
      err << "requested rank " << *rank << " is below the lattice rank " << lattice.rank() << "\n";
      return kNonexistence;
    }
    // Pad with unit summands on fresh ambient coordinates.
    const std::size_t k = *rank - lattice.rank();
    const std::size_t old = lattice.ambient_rank;
    lattice.ambient_rank += k;
    for (auto& row : lattice.relations) row.resize(lattice.ambient_rank, 0);
    for (auto& row : lattice.basis) row.resize(lattice.ambient_rank, 0);
    for (std::size_t i = 0; i < k; ++i) {
      IntVector e(lattice.ambient_rank, 0);
      e[old + i] = 1;
      lattice.basis.push_back(std::move(e));
    }
    lattice.gram = lattice.gram.direct_sum_identity(k);
  }
  if (g.format == "json") {
    emit(out, to_json(lattice));
    return kOk;
  }
  out << "slope=" << slope.to_string() << " rank=" << lattice.rank() << " det=" << lattice.gram.determinant()
      << "\n";
  print_gram(out, lattice.gram);
  return kOk;
}

int cmd_superbase(const Globals& g, const std::string& file, std::ostream& out) {
  const Json j = read_json_file(file);
  SearchOptions options;
  options.rank_cap = g.rank_cap;
  SearchCertificate cert;
  if (j.contains("vertices") && !j.contains("gram")) {
    const GraphLattice gl = laplacian_lattice(graph_from_json(j), 0);
    cert = find_obtuse_superbase(gl.gram, g.bound.value_or(default_norm_bound(gl.gram)), options);
  } else {
    const EmbeddedLattice lattice = lattice_from_json(j);
    const std::int64_t bound = g.bound.value_or(default_norm_bound(lattice.gram));
    cert = lattice.basis.empty() ? find_obtuse_superbase(lattice.gram, bound, options)
                                 : find_obtuse_superbase(lattice, bound, options);
  }
  if (g.format == "json") {
    emit(out, to_json(cert));
  } else if (cert.found) {
    out << "FOUND bound=" << cert.norm_bound << " " << graph_line(superbase_graph(*cert.superbase)) << "\n";
  } else {
    out << "NOT_FOUND bound=" << cert.norm_bound << " examined=" << cert.vectors_examined << " nodes=" << cert.nodes;
    if (!cert.note.empty()) out << " note=\"" << cert.note << "\"";
    out << "\n";
  }
  return cert.found ? kOk : kNotFound;
}

int cmd_verify(const Globals& g, const std::string& pd_file, const std::string& white_file,
               const std::string& alexander, const std::string& slope_text, std::ostream& out) {
  const Rational slope = parse_slope(slope_text);
  const AlexanderPolynomial delta = alexander_from_json(read_json_file(alexander));
  const VerificationReport r =
      !pd_file.empty() ? verify_alternating_surgery(pd_from_json(read_json_file(pd_file)), delta, slope)
                       : verify_alternating_surgery(white_diagram_from_json(read_json_file(white_file)), delta, slope);
  if (g.format == "json") {
    emit(out, to_json(r));
  } else if (r.pass) {
    out << "PASS";
    if (r.coloring) out << " coloring=" << (*r.coloring == Coloring::A ? "A" : "B");
    if (r.mirrored) out << " mirrored";
    out << " rank=" << r.white_gram->rank() << " det=" << r.white_gram->determinant();
    if (r.padding) out << " padding=" << r.padding;
    out << "\n";
  } else {
    out << "FAIL stage=" << to_string(*r.failed_stage) << ": " << r.detail << "\n";
  }
  return r.pass ? kOk : kVerifyFail;
}

int cmd_recover(const Globals& g, const std::string& alexander, const std::string& v_text, bool v_given,
                std::optional<std::int64_t> n, std::optional<std::int64_t> t, std::ostream& out) {
  Json j;
  VSequence v;
  if (v_given) {
    try {
      v = VSequence(parse_list(v_text));
    } catch (const DomainError& e) {
      throw ParseError(std::string("--v: ") + e.what());
    }
  } else {
    const AlexanderPolynomial delta = alexander_from_json(read_json_file(alexander));
    j["torsion"] = torsion_coefficients(delta);
    v = v_sequence(delta);
  }
  const TProfile tp = t_profile(v);
  const RecoveryOutcome outcome = n ? recover_rho(v, *n, t.value_or(*n - 1)) : recover_stable(v);
  j["v"] = v.values();
  j["g_tilde"] = v.g_tilde();
  j["t_profile"] = tp.t;
  j["mu"] = tp.mu ? Json(*tp.mu) : Json(nullptr);
  j["outcome"] = to_json(outcome);
  if (g.format == "json") {
    emit(out, j);
  } else {
    if (j.contains("torsion")) out << "torsion=(" << join(j["torsion"].get<IntVector>()) << ")\n";
    out << "V=(" << join(v.values()) << ") g~=" << v.g_tilde() << "\n";
    out << "T=(" << join(tp.t) << ")";
    if (tp.mu) out << " mu=" << *tp.mu;
    out << "\n";
    if (const auto* f = std::get_if<RecoveryFound>(&outcome)) {
      out << "rho=(" << join(f->rho) << ") stable=" << f->stable.to_string() << "\n";
    } else {
      const auto& none = std::get<NoSolution>(outcome);
      out << "NO_SOLUTION [" << none.lemma << "] " << none.witness << "\n";
    }
  }
  return found(outcome) ? kOk : kNonexistence;
}

int cmd_goeritz(const Globals& g, const std::string& pd_file, const std::string& coloring, std::ostream& out) {
  const PDCode pd = pd_from_json(read_json_file(pd_file));
  std::vector<Coloring> which;
  if (coloring != "B") which.push_back(Coloring::A);
  if (coloring != "A") which.push_back(Coloring::B);
  Json j = Json::array();
  for (const Coloring c : which) {
    const WhiteDiagram w = white_graph_from_pd(pd, c);
    const GramMatrix m = goeritz_matrix(w);
    const char* name = c == Coloring::A ? "A" : "B";
    if (g.format == "json") {
      Json entry;
      entry["coloring"] = name;
      entry["white"] = to_json(w);
      entry["goeritz"] = to_json(m);
      entry["determinant"] = m.determinant();
      j.push_back(entry);
      continue;
    }
    out << "coloring " << name << ": vertices=" << w.vertices << " edges=";
    for (std::size_t e = 0; e < w.edges.size(); ++e) {
      out << "(" << w.edges[e].first << "," << w.edges[e].second << (w.mu[e] < 0 ? ",-" : ",+") << ")";
    }
    out << " det=" << m.determinant() << "\n";
    print_gram(out, m);
  }
  if (g.format == "json") emit(out, j);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Alternating surgery bounds, changemaker lattices and obtuse superbases", "altsurg"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--bound", g.bound, "Norm bound for superbase searches")->check(CLI::PositiveNumber);
  app.add_option("--rank-cap", g.rank_cap, "Largest rank accepted by searches")->check(CLI::PositiveNumber);
  app.add_flag("--force", g.force, "Build lattices outside the slope window");
  app.add_flag("--verbose", g.verbose, "Report timing on stderr");

  std::string alexander, stable, slope, pd, white, v_text, coloring = "both", lattice_file;
  std::optional<std::size_t> rank;
  std::optional<std::int64_t> n, t;

  auto* bounds = app.add_subcommand("bounds", "Stable coefficients, N, slope window and genus cap");
  auto* b_alex = bounds->add_option("--alexander", alexander, "Alexander polynomial JSON")->check(CLI::ExistingFile);
  auto* b_stable = bounds->add_option("--stable", stable, "Stable coefficients, e.g. 3,2,2");
  b_alex->excludes(b_stable);
  bounds->require_option(1);

  auto* lattice = app.add_subcommand("lattice", "Emit the p/q-changemaker lattice");
  lattice->add_option("--slope", slope, "Slope p/q")->required();
  lattice->add_option("--stable", stable, "Stable coefficients (empty for the unknot)")->required();
  lattice->add_option("--rank", rank, "Pad with unit summands up to this rank");

  auto* superbase = app.add_subcommand("superbase", "Search for an obtuse superbase");
  superbase->add_option("lattice", lattice_file, "Lattice or graph JSON")->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "Check a diagram against a predicted changemaker lattice");
  auto* v_pd = verify->add_option("--pd", pd, "PD code JSON")->check(CLI::ExistingFile);
  auto* v_white = verify->add_option("--white", white, "White diagram JSON")->check(CLI::ExistingFile);
  v_pd->excludes(v_white);
  verify->add_option("--alexander", alexander, "Alexander polynomial JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--slope", slope, "Slope p/q")->required();

  auto* recover = app.add_subcommand("recover", "Dump V, T-profile and the recovered changemaker vector");
  auto* r_alex = recover->add_option("--alexander", alexander, "Alexander polynomial JSON")->check(CLI::ExistingFile);
  auto* r_v = recover->add_option("--v", v_text, "V-sequence, e.g. 2,2,1,1,1");
  r_alex->excludes(r_v);
  auto* r_n = recover->add_option("--n", n, "Norm of rho (default: search)");
  recover->add_option("--t", t, "Positive-entry budget minus one (default n-1)")->needs(r_n);

  auto* goeritz = app.add_subcommand("goeritz", "Dump white graphs and Goeritz matrices of a PD code");
  goeritz->add_option("--pd", pd, "PD code JSON")->required()->check(CLI::ExistingFile);
  goeritz->add_option("--coloring", coloring, "A, B or both")->check(CLI::IsMember({"A", "B", "both"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (verify->parsed() && pd.empty() && white.empty()) throw CLI::RequiredError("--pd or --white");
    if (recover->parsed() && alexander.empty() && r_v->count() == 0) throw CLI::RequiredError("--alexander or --v");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (bounds->parsed()) code = cmd_bounds(g, alexander, stable, b_stable->count() > 0, out);
    if (lattice->parsed()) code = cmd_lattice(g, slope, stable, rank, out, err);
    if (superbase->parsed()) code = cmd_superbase(g, lattice_file, out);
    if (verify->parsed()) code = cmd_verify(g, pd, white, alexander, slope, out);
    if (recover->parsed()) code = cmd_recover(g, alexander, v_text, r_v->count() > 0, n, t, out);
    if (goeritz->parsed()) code = cmd_goeritz(g, pd, coloring, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const CapacityError& e) {
    err << "capacity exceeded: " << e.what() << "\n";
    return kCapacity;
  } catch (const DomainError& e) {
    err << e.what() << "\n";
    return kNonexistence;
  }
  if (g.verbose) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    err << "elapsed_ms=" << ms << "\n";
  }
  return code;
}

}  // namespace altsurg::cli
