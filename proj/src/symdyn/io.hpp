#pragma once

// JSON input formats: graphs, boundary families, matrices and certificates.
//
//   {"type":"finite","rows":[[0,1],[1,0]]}
//   {"type":"block","classes":[{"card":2},{"card":"inf"}],"block":[[1,1],[0,1]]}
//   {"type":"banded","prefix":[[0]],"cutoff":1,"offsets":[1],"cross":[[1,2]]}
//
// A graph file may carry "boundary": "auto" (J = J_A) or a list such as
// [{"finite":[1,2],"classes":[2]}] with 1-based class numbers. Matrices are
// lists of rows of integers (or decimal strings for large entries).

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symdyn/path_space.hpp"
#include "symdyn/sse.hpp"

namespace symdyn {

using Json = nlohmann::json;

// Parse errors carry the line and column of the offending byte.
Json parse_json_text(const std::string& text, const std::string& source);

Graph parse_graph(const Json& j);

// "auto", or a JSON list of patterns.
std::vector<BoundaryPattern> parse_boundary(const Graph& g, const Json& j);

// Boundary from `spec` when given, else from the graph file, else J_A.
ModelPtr build_model(const Graph& g, const Json& graph_file, const std::optional<std::string>& spec);

IntMatrix parse_matrix(const Json& j, const std::string& field);
Json matrix_to_json(const IntMatrix& m);
Json bigint_to_json(const BigInt& x);

struct Certificate {
  IntMatrix a, b;
  std::vector<ElementaryPair> chain;  // chain form, or a single elementary pair
  std::optional<std::uint64_t> lag;   // lag form: R, S in chain[0]
};

Certificate parse_certificate(const Json& j);

}  // namespace symdyn
