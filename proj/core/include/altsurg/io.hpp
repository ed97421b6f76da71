#pragma once

// JSON forms of the library's inputs and results. Writers use ordered keys so
// identical inputs give byte-identical output; readers throw ParseError.

#include <filesystem>

#include <nlohmann/json.hpp>

#include "altsurg/cmlattice.hpp"
#include "altsurg/goeritz.hpp"
#include "altsurg/graphlat.hpp"
#include "altsurg/recovery.hpp"

namespace altsurg {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);

/// Keys: ambient_rank, relations, basis, gram, slope. Only "gram" is
/// required when reading; a missing basis is left empty.
Json to_json(const EmbeddedLattice& lattice);
EmbeddedLattice lattice_from_json(const Json& j);

/// {"vertices": n, "edges": [[u, v], ...]}
Json to_json(const Multigraph& g);
Multigraph graph_from_json(const Json& j);

/// Graph JSON plus "mu" parallel to the edges; loops are allowed here.
Json to_json(const WhiteDiagram& w);
WhiteDiagram white_diagram_from_json(const Json& j);

/// {"coeffs": {"<exponent>": coefficient, ...}}; must already be symmetric.
Json to_json(const AlexanderPolynomial& delta);
AlexanderPolynomial alexander_from_json(const Json& j);

/// {"crossings": [[a, b, c, d], ...]}
Json to_json(const PDCode& pd);
PDCode pd_from_json(const Json& j);

Json to_json(const GramMatrix& g);
Json to_json(const SearchCertificate& c);
Json to_json(const BoundsReport& r);
Json to_json(const VerificationReport& r);
Json to_json(const RecoveryOutcome& o);

}  // namespace altsurg
