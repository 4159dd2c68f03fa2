#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"
#include "symdyn/graph.hpp"

using namespace symdyn;

namespace {

Graph ray() { return Graph::banded({{0}}, 1, {1}, {{1, 2}}); }
Graph all_ones_inf() { return Graph::block({BlockClass{std::nullopt}}, {{1}}); }

}  // namespace

TEST_CASE("finite graph validation") {
  CHECK_KIND(Graph::finite({}), ErrorKind::validation);
  CHECK_KIND(Graph::finite({{1, 0}}), ErrorKind::validation);
  CHECK_KIND(Graph::finite({{1, 2}, {0, 1}}), ErrorKind::validation);
  const Graph g = Graph::finite({{1, 1}, {1, 0}});
  CHECK(g.size() == 2);
  CHECK(g.edge(1, 2));
  CHECK_FALSE(g.edge(2, 2));
  CHECK(g.successors(1) == std::vector<Vertex>{1, 2});
  CHECK_KIND(g.successors(3), ErrorKind::validation);
}

TEST_CASE("zero rows") {
  CHECK(has_no_zero_rows(Graph::finite({{1, 1}, {1, 0}})));
  CHECK_FALSE(has_no_zero_rows(Graph::finite({{0, 1}, {0, 0}})));
  CHECK(first_zero_row(Graph::finite({{0, 1}, {0, 0}})) == Vertex{2});
  CHECK(has_no_zero_rows(ray()));
  CHECK(has_no_zero_rows(all_ones_inf()));
  // a sink class
  CHECK_FALSE(has_no_zero_rows(Graph::block({{2}, {std::nullopt}}, {{1, 1}, {0, 0}})));
  // banded prefix vertex whose only edges would have to come from cross
  CHECK(first_zero_row(Graph::banded({{0, 0}, {1, 0}}, 2, {1}, {{2, 3}})) == Vertex{1});
}

TEST_CASE("condition (L) examples") {
  CHECK(condition_L(Graph::finite({{1, 1}, {1, 0}})).holds);
  const auto v = condition_L(Graph::finite({{0, 1}, {1, 0}}));
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness);
  CHECK(v.witness->vertices == Word{1, 2, 1});
  CHECK(condition_L(Graph::finite({{1, 1}, {1, 1}})).holds);
  CHECK_FALSE(condition_L(Graph::finite({{1}})).holds);
  // infinite graphs: the ray has no loops, the all-ones class has exits everywhere
  CHECK(condition_L(ray()).holds);
  CHECK(condition_L(all_ones_inf()).holds);
  // an exitless 2-cycle inside the prefix of a banded graph
  CHECK_FALSE(condition_L(Graph::banded({{0, 1}, {1, 0}}, 2, {1}, {})).holds);
}

TEST_CASE("condition (L) agrees with the out-degree oracle on all graphs up to size 3") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& rows : oracle::all_graphs(n, false)) {
      const Graph g = Graph::finite(rows);
      CHECK(condition_L(g).holds == oracle::condition_L(rows));
    }
  }
}

TEST_CASE("irreducibility and loop reachability examples") {
  CHECK(is_irreducible(Graph::finite({{1, 1}, {1, 0}})).holds);
  const auto two_loops = is_irreducible(Graph::finite({{1, 0}, {0, 1}}));
  CHECK_FALSE(two_loops.holds);
  REQUIRE(two_loops.witness);
  CHECK(two_loops.witness->first != two_loops.witness->second);
  CHECK(is_irreducible(Graph::finite({{0, 1}, {1, 0}})).holds);

  CHECK(every_vertex_reaches_loop(Graph::finite({{1, 1}, {1, 0}})).holds);
  const auto sink = every_vertex_reaches_loop(Graph::finite({{0, 1}, {0, 0}}));
  CHECK_FALSE(sink.holds);
  CHECK(every_vertex_reaches_loop(Graph::finite({{0, 1}, {1, 1}})).holds);

  const auto r = is_irreducible(ray());
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  CHECK(r.witness->first > r.witness->second);
  CHECK_FALSE(every_vertex_reaches_loop(ray()).holds);
  CHECK(is_irreducible(all_ones_inf()).holds);
  CHECK(every_vertex_reaches_loop(all_ones_inf()).holds);
}

TEST_CASE("irreducibility and reachability agree with the closure oracle") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& rows : oracle::all_graphs(n, false)) {
      const auto reach = oracle::closure(rows);
      bool irr = true, loops = true;
      for (std::size_t i = 0; i < n; ++i) {
        bool reaches_cycle = false;
        for (std::size_t j = 0; j < n; ++j) {
          irr = irr && (i == j || reach[i][j]);  // a vertex need not reach itself
          // j lies on a cycle and i reaches j (or is j)
          if (reach[j][j] && (i == j || reach[i][j])) reaches_cycle = true;
        }
        loops = loops && reaches_cycle;
      }
      const Graph g = Graph::finite(rows);
      const auto iv = is_irreducible(g);
      CHECK(iv.holds == irr);
      if (!iv.holds) {
        REQUIRE(iv.witness);
        CHECK_FALSE(reach[iv.witness->first - 1][iv.witness->second - 1]);
      }
      const auto rv = every_vertex_reaches_loop(g);
      CHECK(rv.holds == loops);
    }
  }
}

TEST_CASE("loop enumeration") {
  const auto gm = enumerate_loops(Graph::finite({{1, 1}, {1, 0}}), 2);
  REQUIRE(gm.size() == 2);
  CHECK(gm[0].loop.vertices == Word{1, 1});
  CHECK(gm[1].loop.vertices == Word{1, 2, 1});
  CHECK(gm[0].has_outgoing_edge);
  CHECK(gm[1].has_outgoing_edge);

  const auto cyc = enumerate_loops(Graph::finite({{0, 1}, {1, 0}}), 2);
  REQUIRE(cyc.size() == 1);
  CHECK(cyc[0].loop.vertices == Word{1, 2, 1});
  CHECK_FALSE(cyc[0].has_outgoing_edge);

  const auto one = enumerate_loops(Graph::finite({{1}}), 1);
  REQUIRE(one.size() == 1);
  CHECK_FALSE(one[0].has_outgoing_edge);

  CHECK(enumerate_loops(Graph::finite({{1}}), 0).empty());
  CHECK_KIND(enumerate_loops(ray(), 3), ErrorKind::unsupported);
}

TEST_CASE("loop enumeration is consistent with condition (L)") {
  // every simple loop has length <= n, so the full list decides (L)
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& rows : oracle::all_graphs(n, false)) {
      const Graph g = Graph::finite(rows);
      bool exitless = false;
      for (const auto& rec : enumerate_loops(g, n)) {
        exitless = exitless || !rec.has_outgoing_edge;
        // closed and admissible
        const Word& w = rec.loop.vertices;
        CHECK(w.front() == w.back());
        for (std::size_t k = 0; k + 1 < w.size(); ++k) CHECK(g.edge(w[k], w[k + 1]));
      }
      CHECK(exitless == !condition_L(g).holds);
    }
  }
}

TEST_CASE("classification") {
  const auto gm = classify(Graph::finite({{1, 1}, {1, 0}}));
  CHECK(gm.simple == Verdict::criteria_met);
  CHECK(gm.purely_infinite == Verdict::criteria_met);

  const auto cyc = classify(Graph::finite({{0, 1}, {1, 0}}));
  CHECK(cyc.simple == Verdict::criteria_failed);
  CHECK(cyc.purely_infinite == Verdict::criteria_failed);
  REQUIRE(cyc.condition_L.witness);
  CHECK(cyc.condition_L.witness->vertices == Word{1, 2, 1});

  const auto full = classify(Graph::finite({{1, 1}, {1, 1}}));
  CHECK(full.simple == Verdict::criteria_met);
  CHECK(full.purely_infinite == Verdict::criteria_met);

  // verdict is met exactly when every predicate holds
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& rows : oracle::all_graphs(n, false)) {
      const auto c = classify(Graph::finite(rows));
      const bool all = c.no_zero_rows && c.condition_L.holds && c.irreducible.holds;
      CHECK((c.simple == Verdict::criteria_met) == all);
    }
  }
}

TEST_CASE("formatting") {
  CHECK(format_word({1, 2, 1}) == "(1,2,1)");
  CHECK(format_word({}) == "()");
  CHECK(to_string(Verdict::criteria_met) == "criteria-met");
}
