#include "symdyn/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

void check_bits(const BitMatrix& m, std::size_t rows, std::size_t cols,
                const std::string& what) {
  if (m.size() != rows) {
    fail(ErrorKind::validation, what + ": expected " + std::to_string(rows) +
                                    " rows, got " + std::to_string(m.size()));
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != cols) {
      fail(ErrorKind::validation, what + ": row " + std::to_string(i + 1) +
                                      " has " + std::to_string(m[i].size()) +
                                      " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (m[i][j] > 1) {
        fail(ErrorKind::validation, what + ": entry (" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ") is not 0 or 1");
      }
    }
  }
}

// Transitive closure over walks of length >= 1.
std::vector<std::vector<bool>> walk_closure(const BitMatrix& m) {
  const std::size_t r = m.size();
  std::vector<std::vector<bool>> reach(r, std::vector<bool>(r, false));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) reach[i][j] = m[i][j] != 0;
  }
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

// Vertices reachable from `start` by walks of length >= 1 staying within
// [1, window]. Result is indexed by vertex id.
std::vector<bool> reach_from(const Graph& g, Vertex start, Vertex window) {
  std::vector<bool> seen(window + 1, false);
  std::deque<Vertex> queue;
  for (Vertex s : g.successors_within(start, window)) {
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex s : g.successors_within(v, window)) {
      if (!seen[s]) {
        seen[s] = true;
        queue.push_back(s);
      }
    }
  }
  return seen;
}

// Vertices of [1, window] that reach a vertex lying on a cycle inside the
// window (a cycle vertex reaches itself with a walk of length >= 1).
std::vector<bool> reaches_cycle_within(const Graph& g, Vertex window) {
  std::vector<bool> on_cycle(window + 1, false);
  std::vector<std::vector<Vertex>> pred(window + 1);
  for (Vertex v = 1; v <= window; ++v) {
    on_cycle[v] = reach_from(g, v, window)[v];
    for (Vertex s : g.successors_within(v, window)) pred[s].push_back(v);
  }
  std::vector<bool> good(window + 1, false);
  std::deque<Vertex> queue;
  for (Vertex v = 1; v <= window; ++v) {
    if (on_cycle[v]) {
      good[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex p : pred[v]) {
      if (!good[p]) {
        good[p] = true;
        queue.push_back(p);
      }
    }
  }
  return good;
}

std::uint64_t max_offset(const BandedGraph& b) {
  return b.offsets.empty() ? 0 : b.offsets.back();
}

}  // namespace

Graph Graph::finite(const BitMatrix& rows) {
  if (rows.empty()) fail(ErrorKind::validation, "rows: a finite graph needs at least one vertex");
  check_bits(rows, rows.size(), rows.size(), "rows");
  FiniteGraph f;
  f.n = rows.size();
  f.adj.assign(f.n * f.n, 0);
  f.succ.resize(f.n);
  for (std::size_t i = 0; i < f.n; ++i) {
    for (std::size_t j = 0; j < f.n; ++j) {
      if (rows[i][j]) {
        f.adj[i * f.n + j] = 1;
        f.succ[i].push_back(j + 1);
      }
    }
  }
  return Graph(std::move(f));
}

Graph Graph::block(std::vector<BlockClass> classes, BitMatrix block) {
  if (classes.empty()) fail(ErrorKind::validation, "classes: at least one class is required");
  check_bits(block, classes.size(), classes.size(), "block");
  BlockGraph b;
  Vertex next = 1;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& card = classes[c].card;
    if (card && *card == 0) {
      fail(ErrorKind::validation, "classes[" + std::to_string(c) + "]: cardinality must be positive");
    }
    if (!card && c + 1 != classes.size()) {
      fail(ErrorKind::validation, "classes[" + std::to_string(c) +
                                      "]: only the last class may be infinite");
    }
    b.first.push_back(next);
    if (card) next += *card;
  }
  b.classes = std::move(classes);
  b.block = std::move(block);
  return Graph(std::move(b));
}

Graph Graph::banded(BitMatrix prefix, std::uint64_t cutoff, std::vector<std::uint64_t> offsets,
                    std::vector<std::pair<Vertex, Vertex>> cross) {
  if (prefix.size() != cutoff) {
    fail(ErrorKind::validation, "cutoff: must equal the prefix size " + std::to_string(prefix.size()));
  }
  check_bits(prefix, cutoff, cutoff, "prefix");
  for (auto o : offsets) {
    if (o == 0) fail(ErrorKind::validation, "offsets: offsets must be positive");
  }
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  for (const auto& [a, b] : cross) {
    if (a == 0 || b == 0) fail(ErrorKind::validation, "cross: vertex ids are 1-based");
    if ((a <= cutoff) == (b <= cutoff)) {
      fail(ErrorKind::validation, "cross: edge (" + std::to_string(a) + "," + std::to_string(b) +
                                      ") does not join the prefix to the tail");
    }
  }
  std::sort(cross.begin(), cross.end());
  cross.erase(std::unique(cross.begin(), cross.end()), cross.end());
  BandedGraph b{std::move(prefix), std::move(offsets), std::move(cross)};
  return Graph(std::move(b));
}

std::size_t Graph::size() const {
  if (!is_finite()) fail(ErrorKind::unsupported, "graph has infinitely many vertices");
  return as_finite().n;
}

std::optional<std::uint64_t> Graph::vertex_count() const {
  if (is_finite()) return as_finite().n;
  if (is_block()) {
    const auto& b = as_block();
    if (b.classes.back().card) return b.first.back() + *b.classes.back().card - 1;
  }
  return std::nullopt;
}

bool Graph::has_vertex(Vertex v) const {
  if (v == 0) return false;
  auto count = vertex_count();
  return !count || v <= *count;
}

void Graph::check_vertex(Vertex v) const {
  if (!has_vertex(v)) fail(ErrorKind::validation, "unknown vertex " + std::to_string(v));
}

std::size_t Graph::class_of(Vertex v) const {
  check_vertex(v);
  const auto& b = as_block();
  auto it = std::upper_bound(b.first.begin(), b.first.end(), v);
  return static_cast<std::size_t>(it - b.first.begin()) - 1;
}

Vertex Graph::banded_core() const {
  const auto& b = as_banded();
  Vertex core = b.prefix.size();
  for (const auto& [a, _] : b.cross) core = std::max(core, a);
  return core;
}

bool Graph::edge(Vertex i, Vertex j) const {
  check_vertex(i);
  check_vertex(j);
  if (is_finite()) {
    const auto& f = as_finite();
    return f.adj[(i - 1) * f.n + (j - 1)] != 0;
  }
  if (is_block()) return as_block().block[class_of(i)][class_of(j)] != 0;
  const auto& b = as_banded();
  const Vertex n = b.prefix.size();
  if (i <= n && j <= n) return b.prefix[i - 1][j - 1] != 0;
  if (i > n && j > n) {
    return j > i && std::binary_search(b.offsets.begin(), b.offsets.end(), j - i);
  }
  return std::binary_search(b.cross.begin(), b.cross.end(), std::make_pair(i, j));
}

std::optional<std::uint64_t> Graph::out_degree(Vertex v) const {
  check_vertex(v);
  if (is_finite()) return as_finite().succ[v - 1].size();
  if (is_block()) {
    const auto& b = as_block();
    const std::size_t c = class_of(v);
    std::uint64_t deg = 0;
    for (std::size_t d = 0; d < b.classes.size(); ++d) {
      if (!b.block[c][d]) continue;
      if (!b.classes[d].card) return std::nullopt;
      deg += *b.classes[d].card;
    }
    return deg;
  }
  return successors(v).size();
}

std::vector<Vertex> Graph::successors(Vertex v) const {
  check_vertex(v);
  if (is_finite()) return as_finite().succ[v - 1];
  if (is_block()) {
    if (!out_degree(v)) {
      fail(ErrorKind::unsupported, "vertex " + std::to_string(v) + " has infinitely many successors");
    }
    const auto& b = as_block();
    const std::size_t c = class_of(v);
    std::vector<Vertex> out;
    for (std::size_t d = 0; d < b.classes.size(); ++d) {
      if (!b.block[c][d]) continue;
      for (std::uint64_t k = 0; k < *b.classes[d].card; ++k) out.push_back(b.first[d] + k);
    }
    return out;
  }
  const auto& b = as_banded();
  const Vertex n = b.prefix.size();
  std::vector<Vertex> out;
  if (v <= n) {
    for (Vertex j = 1; j <= n; ++j) {
      if (b.prefix[v - 1][j - 1]) out.push_back(j);
    }
  } else {
    for (auto o : b.offsets) out.push_back(v + o);
  }
  auto lo = std::lower_bound(b.cross.begin(), b.cross.end(), std::make_pair(v, Vertex{0}));
  for (; lo != b.cross.end() && lo->first == v; ++lo) out.push_back(lo->second);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> Graph::successors_within(Vertex v, Vertex window) const {
  if (is_block()) {
    check_vertex(v);
    const auto& b = as_block();
    const std::size_t c = class_of(v);
    std::vector<Vertex> out;
    for (std::size_t d = 0; d < b.classes.size(); ++d) {
      if (!b.block[c][d]) continue;
      Vertex last = b.classes[d].card ? b.first[d] + *b.classes[d].card - 1 : window;
      for (Vertex u = b.first[d]; u <= std::min(last, window); ++u) out.push_back(u);
    }
    return out;
  }
  auto all = successors(v);
  all.erase(std::upper_bound(all.begin(), all.end(), window), all.end());
  return all;
}

bool operator==(const FiniteGraph& a, const FiniteGraph& b) { return a.n == b.n && a.adj == b.adj; }

bool operator==(const BlockGraph& a, const BlockGraph& b) {
  if (a.classes.size() != b.classes.size() || a.block != b.block) return false;
  for (std::size_t c = 0; c < a.classes.size(); ++c) {
    if (a.classes[c].card != b.classes[c].card) return false;
  }
  return true;
}

bool operator==(const BandedGraph& a, const BandedGraph& b) {
  return a.prefix == b.prefix && a.offsets == b.offsets && a.cross == b.cross;
}

bool Graph::operator==(const Graph& other) const { return rep_ == other.rep_; }

// ---------------------------------------------------------------------------
// predicates

std::optional<Vertex> first_zero_row(const Graph& g) {
  if (g.is_finite()) {
    const auto& f = g.as_finite();
    for (std::size_t i = 0; i < f.n; ++i) {
      if (f.succ[i].empty()) return i + 1;
    }
    return std::nullopt;
  }
  if (g.is_block()) {
    const auto& b = g.as_block();
    for (std::size_t c = 0; c < b.classes.size(); ++c) {
      if (g.out_degree(b.first[c]) == std::uint64_t{0}) return b.first[c];
    }
    return std::nullopt;
  }
  const auto& b = g.as_banded();
  const Vertex n = b.prefix.size();
  for (Vertex v = 1; v <= n; ++v) {
    if (g.out_degree(v) == std::uint64_t{0}) return v;
  }
  if (!b.offsets.empty()) return std::nullopt;
  // Empty tail rows: only tail vertices with a cross edge escape.
  for (Vertex v = n + 1;; ++v) {
    if (g.out_degree(v) == std::uint64_t{0}) return v;
  }
}

bool has_no_zero_rows(const Graph& g) { return !first_zero_row(g).has_value(); }

LVerdict condition_L(const Graph& g) {
  // Vertices that can lie on a loop without exit.
  std::vector<Vertex> candidates;
  if (g.is_finite()) {
    candidates.resize(g.size());
    std::iota(candidates.begin(), candidates.end(), Vertex{1});
  } else if (g.is_block()) {
    // The unique successor of an out-degree-one vertex forms a singleton
    // class, so exitless loops only pass through singleton classes.
    const auto& b = g.as_block();
    for (std::size_t c = 0; c < b.classes.size(); ++c) {
      if (b.classes[c].card == std::uint64_t{1}) candidates.push_back(b.first[c]);
    }
  } else {
    // Above the core every edge increases the id, so loops stay inside it.
    const Vertex core = g.banded_core();
    for (Vertex v = 1; v <= core; ++v) candidates.push_back(v);
  }

  auto is_candidate = [&](Vertex v) {
    return std::binary_search(candidates.begin(), candidates.end(), v);
  };
  for (Vertex start : candidates) {
    if (g.out_degree(start) != std::uint64_t{1}) continue;
    Loop loop{{start}};
    Vertex cur = start;
    for (std::size_t step = 0; step <= candidates.size(); ++step) {
      if (g.out_degree(cur) != std::uint64_t{1}) break;
      cur = g.successors(cur).front();
      loop.vertices.push_back(cur);
      if (cur == start) return LVerdict{false, loop};
      if (!is_candidate(cur)) break;
    }
  }
  return LVerdict{true, std::nullopt};
}

IrreducibleVerdict is_irreducible(const Graph& g) {
  if (g.is_block()) {
    const auto& b = g.as_block();
    const auto reach = walk_closure(b.block);
    const std::size_t r = b.classes.size();
    // The first vertex of the first failing class is the smallest source.
    for (std::size_t c = 0; c < r; ++c) {
      std::optional<Vertex> target;
      for (std::size_t d = 0; d < r; ++d) {
        if (reach[c][d]) continue;
        Vertex j = b.first[d];
        if (d == c) {
          if (b.classes[c].card == std::uint64_t{1}) continue;
          j = b.first[c] + 1;
        }
        if (!target || j < *target) target = j;
      }
      if (target) return IrreducibleVerdict{false, std::make_pair(b.first[c], *target)};
    }
    return IrreducibleVerdict{true, std::nullopt};
  }

  Vertex window = 0;
  Vertex sources = 0;
  if (g.is_finite()) {
    window = sources = g.size();
  } else {
    // Beyond the largest cross endpoint only the offsets act, so reaching a
    // full offset-width band above it means reaching everything.
    const auto& b = g.as_banded();
    Vertex top = g.banded_core();
    for (const auto& [_, t] : b.cross) top = std::max(top, t);
    window = top + max_offset(b) + 1;
    sources = g.banded_core() + 2;  // core+2 never reaches core+1
  }
  for (Vertex i = 1; i <= sources; ++i) {
    const auto seen = reach_from(g, i, window);
    for (Vertex j = 1; j <= window; ++j) {
      if (j != i && !seen[j]) return IrreducibleVerdict{false, std::make_pair(i, j)};
    }
  }
  return IrreducibleVerdict{true, std::nullopt};
}

ReachVerdict every_vertex_reaches_loop(const Graph& g) {
  if (g.is_block()) {
    const auto& b = g.as_block();
    const auto reach = walk_closure(b.block);
    const std::size_t r = b.classes.size();
    for (std::size_t c = 0; c < r; ++c) {
      bool ok = reach[c][c];
      for (std::size_t d = 0; d < r && !ok; ++d) ok = reach[c][d] && reach[d][d];
      if (!ok) return ReachVerdict{false, b.first[c]};
    }
    return ReachVerdict{true, std::nullopt};
  }
  if (g.is_finite()) {
    const auto good = reaches_cycle_within(g, g.size());
    for (Vertex v = 1; v <= g.size(); ++v) {
      if (!good[v]) return ReachVerdict{false, v};
    }
    return ReachVerdict{true, std::nullopt};
  }
  // Loops live inside the core; vertex core+1 can never come back down.
  const Vertex core = g.banded_core();
  const auto good = reaches_cycle_within(g, core);
  for (Vertex v = 1; v <= core; ++v) {
    if (!good[v]) return ReachVerdict{false, v};
  }
  return ReachVerdict{false, core + 1};
}

bool loop_has_outgoing_edge(const Graph& g, const Loop& loop) {
  for (std::size_t k = 0; k + 1 < loop.vertices.size(); ++k) {
    if (g.out_degree(loop.vertices[k]) != std::uint64_t{1}) return true;
  }
  return false;
}

std::vector<LoopRecord> enumerate_loops(const Graph& g, std::size_t max_len) {
  if (!g.is_finite()) fail(ErrorKind::unsupported, "loop enumeration needs a finite graph");
  std::vector<LoopRecord> out;
  if (max_len == 0) return out;
  const std::size_t n = g.size();
  Word path;
  std::vector<bool> on_path(n + 1, false);

  auto dfs = [&](auto&& self, Vertex start, Vertex v) -> void {
    for (Vertex s : g.successors(v)) {
      if (s == start) {
        Loop loop{path};
        loop.vertices.push_back(start);
        out.push_back({loop, loop_has_outgoing_edge(g, loop)});
      } else if (s > start && !on_path[s] && path.size() < max_len) {
        on_path[s] = true;
        path.push_back(s);
        self(self, start, s);
        path.pop_back();
        on_path[s] = false;
      }
    }
  };
  for (Vertex s = 1; s <= n; ++s) {
    path = {s};
    on_path[s] = true;
    dfs(dfs, s, s);
    on_path[s] = false;
  }
  std::sort(out.begin(), out.end(),
            [](const LoopRecord& a, const LoopRecord& b) { return a.loop < b.loop; });
  return out;
}

ClassificationReport classify(const Graph& g) {
  ClassificationReport r;
  r.zero_row = first_zero_row(g);
  r.no_zero_rows = !r.zero_row;
  r.condition_L = condition_L(g);
  r.irreducible = is_irreducible(g);
  r.reaches_loop = every_vertex_reaches_loop(g);
  if (r.no_zero_rows) {
    r.simple = r.condition_L.holds && r.irreducible.holds ? Verdict::criteria_met
                                                          : Verdict::criteria_failed;
    r.purely_infinite = r.condition_L.holds && r.reaches_loop.holds ? Verdict::criteria_met
                                                                    : Verdict::criteria_failed;
  }
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::criteria_met: return "criteria-met";
    case Verdict::criteria_failed: return "criteria-failed";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "";
}

std::string format_word(const Word& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "," : "") << w[k];
  os << ')';
  return os.str();
}

}  // namespace symdyn
