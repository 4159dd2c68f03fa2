#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "semigroup_oracle.hpp"
#include "support.hpp"
#include "symdyn/semigroup.hpp"

using namespace symdyn;

namespace {

const BitMatrix kFull2 = {{1, 1}, {1, 1}};
const BitMatrix kGolden = {{1, 1}, {1, 0}};

ModelPtr full2() { return dense_model(Graph::finite(kFull2)); }
ModelPtr toeplitz() { return validate_model(Graph::finite(kFull2), {BoundaryPattern{{1, 2}, {}}}); }

std::uint32_t decision_level(const Monomial& a) {
  return std::max<std::uint32_t>(6, a.is_zero() ? 0 : min_evaluation_level(a));
}

// Models over every graph of size <= 2 plus a few of size 3, some with a
// nonempty boundary family.
std::vector<ModelPtr> sample_models() {
  std::vector<ModelPtr> out;
  for (std::size_t n = 1; n <= 2; ++n) {
    for (const auto& rows : oracle::all_graphs(n, true)) out.push_back(dense_model(Graph::finite(rows)));
  }
  out.push_back(toeplitz());
  out.push_back(validate_model(Graph::finite(kGolden), {BoundaryPattern{{2}, {}}}));
  out.push_back(dense_model(Graph::finite({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})));
  out.push_back(dense_model(Graph::finite({{0, 1, 0}, {0, 0, 1}, {1, 1, 0}})));
  out.push_back(validate_model(Graph::finite({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}), {BoundaryPattern{{3}, {}}}));
  return out;
}

}  // namespace

TEST_CASE("generators") {
  const auto d = full2();
  const auto s1 = generator(d, 1);
  CHECK(s1.alpha() == Word{1});
  CHECK(s1.beta().empty());
  CHECK(s1.h() == ClopenSet::whole(d));
  const auto f = evaluate(s1, 1);
  REQUIRE(f.pairs.size() == 4);
  for (const auto& [x, y] : f.pairs) {
    Word expect{1};
    expect.insert(expect.end(), x.word.begin(), x.word.end());
    CHECK(y.word == expect);
    CHECK(y.level == 2);
  }

  const auto ray = dense_model(Graph::banded({{0}}, 1, {1}, {{1, 2}}));
  for (Vertex i = 1; i <= 4; ++i) CHECK(generator(ray, i).h() == base_sets(ray, i + 1).first);

  const auto t = toeplitz();
  CHECK(generator(t, 1).h().contains(parse_point(*t, 0, "∅;{1,2}")));
  CHECK_KIND(generator(d, 3), ErrorKind::validation);
}

TEST_CASE("composition examples") {
  const auto d = full2();
  const auto s1 = generator(d, 1), s2 = generator(d, 2);
  CHECK(compose(adjoint(s1), s2).is_zero());
  CHECK(compose(adjoint(s1), s2) == Monomial::zero(d));

  const auto q1 = compose(adjoint(s1), s1);
  CHECK(q1.alpha().empty());
  CHECK(q1.beta().empty());
  CHECK(q1.h() == base_sets(d, 1).second);
  CHECK(cocycle(q1) == 0);

  const auto s12 = compose(s1, s2);
  CHECK(s12.alpha() == Word{1, 2});
  CHECK(s12.beta().empty());
  CHECK(s12.h() == follower_set(d, {2}));
  CHECK(cocycle(s12) == 2);
  CHECK(cocycle(adjoint(s12)) == -2);
  CHECK(cocycle(s1) == 1);

  CHECK(compose(compose(s1, adjoint(s1)), s1) == s1);
  CHECK_KIND(cocycle(Monomial::zero(d)), ErrorKind::domain);
  CHECK_KIND(compose(s1, generator(toeplitz(), 1)), ErrorKind::validation);
}

TEST_CASE("normal form strips common tails") {
  const auto d = full2();
  const Monomial m({1, 1}, ClopenSet::whole(d), {1});
  CHECK(m.alpha() == Word{1});
  CHECK(m.beta().empty());
  CHECK(m.h() == base_sets(d, 1).first);
  // the unstripped triple, evaluated pointwise: 1x -> 11x
  const oracle::GenWord w = {{1, false}, {1, false}, {1, true}};
  CHECK(oracle::same_pairs(evaluate(m, 3), oracle::act_word(*d, w, 3)));

  CHECK(Monomial({1}, ClopenSet::empty(d), {}) == Monomial::zero(d));
  CHECK(normalize(m) == m);
}

TEST_CASE("evaluation") {
  const auto d = full2();
  const auto id = evaluate(Monomial::identity(d), 2);
  CHECK(id.shift == 0);
  REQUIRE(id.pairs.size() == 8);
  for (const auto& [x, y] : id.pairs) CHECK(x == y);
  CHECK(evaluate(Monomial::zero(d), 2).empty());
  CHECK_KIND(evaluate(compose(generator(d, 1), generator(d, 2)), 0), ErrorKind::parameter);
}

TEST_CASE("parsing monomials") {
  const auto d = full2();
  const auto a = parse_monomial(d, "S(1,2)* . S(1)");
  CHECK(a == compose(adjoint(compose(generator(d, 1), generator(d, 2))), generator(d, 1)));
  CHECK(parse_monomial(d, "P(1)") == compose(generator(d, 1), adjoint(generator(d, 1))));
  CHECK(parse_monomial(d, "Q(2)") == compose(adjoint(generator(d, 2)), generator(d, 2)));
  CHECK(parse_monomial(d, "1") == Monomial::identity(d));
  CHECK(parse_monomial(d, "0").is_zero());
  CHECK(parse_monomial(d, "S(1)·S(2)") == parse_monomial(d, "S(1) S(2)"));
  CHECK(format_monomial(parse_monomial(d, "0")) == "0");
  CHECK(format_monomial(parse_monomial(d, "S(1)*.S(1)")) == "S(∅, {(1),(2)}@0, ∅)");
  CHECK_KIND(parse_monomial(d, "S(1"), ErrorKind::parse);
  CHECK_KIND(parse_monomial(d, "T(1)"), ErrorKind::parse);
  CHECK_KIND(parse_monomial(d, "S(3)"), ErrorKind::validation);
  CHECK(parse_monomial(dense_model(Graph::finite(kGolden)), "S(2,2)").is_zero());
}

TEST_CASE("normal forms agree with the pointwise oracle") {
  std::mt19937_64 rng(11);
  for (const auto& m : sample_models()) {
    const std::size_t n = m->graph().size();
    for (int trial = 0; trial < 40; ++trial) {
      const auto w = oracle::random_word(rng, n, 6);
      const auto a = oracle::monomial_of(m, w);
      const auto lvl = decision_level(a);
      CHECK_MESSAGE(oracle::same_pairs(evaluate(a, lvl), oracle::act_word(*m, w, lvl)),
                    oracle::text_of(w));
      CHECK(parse_monomial(m, oracle::text_of(w)) == a);
      CHECK(normalize(a) == a);
    }
  }
}

TEST_CASE("normal-form equality coincides with evaluation equality") {
  std::mt19937_64 rng(12);
  std::size_t equal_pairs = 0;
  for (const auto& m : sample_models()) {
    const std::size_t n = m->graph().size();
    for (int trial = 0; trial < 60; ++trial) {
      const auto w1 = oracle::random_word(rng, n, 4);
      const auto w2 = oracle::random_word(rng, n, 4);
      const auto a = oracle::monomial_of(m, w1), b = oracle::monomial_of(m, w2);
      const auto lvl = std::max(decision_level(a), decision_level(b));
      const bool same = oracle::same_pairs(oracle::act_word(*m, w1, lvl), oracle::act_word(*m, w2, lvl));
      CHECK((a == b) == same);
      equal_pairs += same;
    }
  }
  CHECK(equal_pairs > 0);
}

TEST_CASE("evaluation is a homomorphism and the cocycle is additive") {
  std::mt19937_64 rng(13);
  for (const auto& m : sample_models()) {
    const std::size_t n = m->graph().size();
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = oracle::monomial_of(m, oracle::random_word(rng, n, 3));
      const auto b = oracle::monomial_of(m, oracle::random_word(rng, n, 3));
      const auto ab = compose(a, b);
      if (a.is_zero() || b.is_zero()) {
        CHECK(ab.is_zero());
        continue;
      }
      const auto fa = evaluate(a, min_evaluation_level(a));
      const auto fb = evaluate(b, min_evaluation_level(b));
      const auto composed = compose(*m, fa, fb);
      if (ab.is_zero()) {
        CHECK(composed.empty());
      } else {
        CHECK(same_map(*m, evaluate(ab, min_evaluation_level(ab)), composed));
        CHECK(cocycle(ab) == cocycle(a) + cocycle(b));
      }
      CHECK(same_map(*m, evaluate(adjoint(a), min_evaluation_level(adjoint(a))), inverse(fa)));
      CHECK(adjoint(adjoint(a)) == a);
      // a a* a = a
      CHECK(compose(compose(a, adjoint(a)), a) == a);
    }
  }
}

TEST_CASE("partial injections") {
  const auto d = full2();
  const auto f = evaluate(generator(d, 1), 1);
  const auto up = raise(*d, f, 3);
  CHECK(up.source == 3);
  CHECK(up.pairs.size() == 16);
  CHECK(same_map(*d, f, up));
  CHECK_KIND(raise(*d, up, 1), ErrorKind::parameter);
  CHECK_FALSE(same_map(*d, f, evaluate(generator(d, 2), 1)));
}

TEST_CASE("Cuntz-Krieger relations") {
  const auto d = verify_ck_relations(full2());
  CHECK(d.all_passed());
  CHECK(d.consistent);
  REQUIRE(d.relations.size() == 4);
  CHECK(d.relations[3].cases == 9);  // disjoint E, F over two vertices
  CHECK(verify_ck_relations(dense_model(Graph::finite(kGolden))).all_passed());

  const auto t = verify_ck_relations(toeplitz());
  CHECK(t.relations[0].passed);
  CHECK(t.relations[1].passed);
  CHECK(t.relations[2].passed);
  CHECK_FALSE(t.relations[3].passed);
  CHECK(t.relations[3].witness == "(∅;{1,2})");
  CHECK(t.consistent);

  const auto ray = verify_ck_relations(dense_model(Graph::banded({{0}}, 1, {1}, {{1, 2}})), 4);
  CHECK(ray.partial);
  CHECK(ray.all_passed());
  const auto inf = verify_ck_relations(dense_model(Graph::block({BlockClass{std::nullopt}}, {{1}})), 4);
  CHECK(inf.all_passed());
  CHECK(inf.ck4_unsupported > 0);
}

TEST_CASE("Cuntz-Krieger relations on every small graph") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& rows : oracle::all_graphs(n, true)) {
      CHECK(verify_ck_relations(dense_model(Graph::finite(rows))).all_passed());
      BoundaryPattern all;
      for (Vertex v = 1; v <= n; ++v) all.finite.push_back(v);
      const auto r = verify_ck_relations(validate_model(Graph::finite(rows), {all}));
      CHECK(r.consistent);
    }
  }
}

namespace {

std::set<std::set<SpectrumPoint>> as_sets(const std::vector<std::vector<SpectrumPoint>>& parts) {
  std::set<std::set<SpectrumPoint>> out;
  for (const auto& p : parts) out.insert(std::set<SpectrumPoint>(p.begin(), p.end()));
  return out;
}

std::multiset<std::size_t> sizes(const std::vector<std::vector<SpectrumPoint>>& parts) {
  std::multiset<std::size_t> out;
  for (const auto& p : parts) out.insert(p.size());
  return out;
}

bool related(const SpectrumPoint& x, const SpectrumPoint& y, std::uint32_t big_n) {
  SpectrumPoint a = x, b = y;
  for (std::uint32_t k = 0;; ++k) {
    if (a == b) return true;
    if (k == big_n || a.word.empty() || b.word.empty()) return false;
    a = shift_apply(a);
    b = shift_apply(b);
  }
}

}  // namespace

TEST_CASE("R_N partitions") {
  const auto d = full2();
  const auto p = rn_partition(*d, 1, 2);
  CHECK(sizes(p) == std::multiset<std::size_t>{2, 2, 2, 2});
  CHECK(rn_partition(*d, 0, 2).size() == 8);

  const auto gm = dense_model(Graph::finite(kGolden));
  CHECK(sizes(rn_partition(*gm, 1, 1)) == std::multiset<std::size_t>{1, 2});
  CHECK(sizes(rn_partition(*gm, 1, 2)) == std::multiset<std::size_t>{1, 2, 2});
  CHECK_KIND(rn_partition(*d, 3, 2), ErrorKind::parameter);

  // full d-shift: classes of size d^N
  const auto d3 = dense_model(Graph::finite({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
  std::size_t expect = 1;
  for (std::uint32_t big_n = 0; big_n <= 3; ++big_n, expect *= 3) {
    for (const auto s : sizes(rn_partition(*d3, big_n, 3))) CHECK(s == expect);
  }
}

TEST_CASE("R_N partitions agree with the tail oracle and are nested") {
  for (const auto& m : sample_models()) {
    for (std::uint32_t n = 0; n <= 3; ++n) {
      std::set<std::set<SpectrumPoint>> previous;
      for (std::uint32_t big_n = 0; big_n <= n; ++big_n) {
        const auto parts = as_sets(rn_partition(*m, big_n, n));
        for (const auto& c : parts) {
          for (const auto& x : c) {
            for (const auto& other : parts) {
              for (const auto& y : other) CHECK(related(x, y, big_n) == (&c == &other));
            }
          }
        }
        // every class of R_{N-1} sits inside a class of R_N
        for (const auto& c : previous) {
          bool inside = false;
          for (const auto& big : parts) inside = inside || std::includes(big.begin(), big.end(), c.begin(), c.end());
          CHECK(inside);
        }
        previous = parts;
      }
    }
  }
}
