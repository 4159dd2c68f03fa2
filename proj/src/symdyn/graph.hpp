#pragma once

// Finite and finitely presented countable directed graphs (0/1 matrices).
//
// Vertices are 1-based. A(i,j) = 1 permits the transition i -> j. Three
// presentations are supported:
//
//   * finite       an explicit n x n 0/1 matrix;
//   * block        vertices grouped into classes occupying contiguous id
//                  ranges, A(i,j) = block(class(i), class(j)); at most one
//                  class is infinite and it must be listed last;
//   * banded       an explicit prefix on vertices 1..N, a translation
//                  invariant tail on N+1, N+2, ... (A(i,j) = 1 iff j-i is an
//                  offset) and finitely many cross edges joining the two.
//
// Every predicate is decided exactly from the presentation, never by an
// unbounded scan.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace symdyn {

using Vertex = std::uint64_t;
using Word = std::vector<Vertex>;
using BitMatrix = std::vector<std::vector<std::uint8_t>>;

struct FiniteGraph {
  std::size_t n = 0;
  std::vector<std::uint8_t> adj;            // row-major n*n
  std::vector<std::vector<Vertex>> succ;    // succ[i-1], ascending
};

struct BlockClass {
  std::optional<std::uint64_t> card;  // nullopt: infinite
};

struct BlockGraph {
  std::vector<BlockClass> classes;
  BitMatrix block;
  std::vector<Vertex> first;  // first vertex id of each class
};

struct BandedGraph {
  BitMatrix prefix;                          // N x N, vertices 1..N
  std::vector<std::uint64_t> offsets;        // ascending, positive
  std::vector<std::pair<Vertex, Vertex>> cross;  // ascending, each straddles N
};

class Graph {
 public:
  static Graph finite(const BitMatrix& rows);
  static Graph block(std::vector<BlockClass> classes, BitMatrix block);
  static Graph banded(BitMatrix prefix, std::uint64_t cutoff,
                      std::vector<std::uint64_t> offsets,
                      std::vector<std::pair<Vertex, Vertex>> cross);

  bool is_finite() const { return std::holds_alternative<FiniteGraph>(rep_); }
  bool is_block() const { return std::holds_alternative<BlockGraph>(rep_); }
  bool is_banded() const { return std::holds_alternative<BandedGraph>(rep_); }

  const FiniteGraph& as_finite() const { return std::get<FiniteGraph>(rep_); }
  const BlockGraph& as_block() const { return std::get<BlockGraph>(rep_); }
  const BandedGraph& as_banded() const { return std::get<BandedGraph>(rep_); }

  // Number of vertices; only for finite presentations.
  std::size_t size() const;

  // Vertex count when finite, nullopt when the vertex set is infinite.
  std::optional<std::uint64_t> vertex_count() const;

  bool has_vertex(Vertex v) const;
  bool edge(Vertex i, Vertex j) const;

  // nullopt when the out-degree is infinite (block graphs only).
  std::optional<std::uint64_t> out_degree(Vertex v) const;

  // All successors, ascending. Throws unsupported when infinitely many.
  std::vector<Vertex> successors(Vertex v) const;

  // Successors with id <= window, ascending.
  std::vector<Vertex> successors_within(Vertex v, Vertex window) const;

  // Block graphs: index of the class containing v.
  std::size_t class_of(Vertex v) const;

  // Banded graphs: the largest id that can lie on a cycle or be the source
  // of a downward edge; every vertex above it only moves upward.
  Vertex banded_core() const;

  bool operator==(const Graph& other) const;

 private:
  using Rep = std::variant<FiniteGraph, BlockGraph, BandedGraph>;
  explicit Graph(Rep rep) : rep_(std::move(rep)) {}

  void check_vertex(Vertex v) const;

  Rep rep_;
};

bool operator==(const FiniteGraph& a, const FiniteGraph& b);
bool operator==(const BlockGraph& a, const BlockGraph& b);
bool operator==(const BandedGraph& a, const BandedGraph& b);

// A closed path (i_0, ..., i_n = i_0), n >= 1.
struct Loop {
  Word vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  bool operator==(const Loop&) const = default;
  auto operator<=>(const Loop&) const = default;
};

struct LoopRecord {
  Loop loop;
  bool has_outgoing_edge = false;
};

struct LVerdict {
  bool holds = true;
  std::optional<Loop> witness;  // a loop without outgoing edge
};

struct IrreducibleVerdict {
  bool holds = true;
  std::optional<std::pair<Vertex, Vertex>> witness;  // (i, j) with no path i -> j
};

struct ReachVerdict {
  bool holds = true;
  std::optional<Vertex> witness;  // a vertex that reaches no loop
};

enum class Verdict { criteria_met, criteria_failed, not_applicable };

struct ClassificationReport {
  bool no_zero_rows = false;
  std::optional<Vertex> zero_row;
  LVerdict condition_L;
  IrreducibleVerdict irreducible;
  ReachVerdict reaches_loop;
  Verdict simple = Verdict::not_applicable;
  Verdict purely_infinite = Verdict::not_applicable;
};

bool has_no_zero_rows(const Graph& g);
// Smallest vertex with an empty row, if any.
std::optional<Vertex> first_zero_row(const Graph& g);

// Condition (L): every loop has an outgoing edge. A loop lacks one exactly
// when all its vertices have out-degree one, so the search runs on that
// subgraph. The witness is the exitless loop with the smallest base point.
LVerdict condition_L(const Graph& g);

IrreducibleVerdict is_irreducible(const Graph& g);
ReachVerdict every_vertex_reaches_loop(const Graph& g);

// Simple loops of length <= max_len, each rotated to start at its smallest
// vertex, in lexicographic order. Finite graphs only.
std::vector<LoopRecord> enumerate_loops(const Graph& g, std::size_t max_len);

bool loop_has_outgoing_edge(const Graph& g, const Loop& loop);

ClassificationReport classify(const Graph& g);

std::string to_string(Verdict v);
std::string format_word(const Word& w);

}  // namespace symdyn
