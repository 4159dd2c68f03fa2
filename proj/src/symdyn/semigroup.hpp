#pragma once

// The inverse semigroup generated by the shift.
//
// A monomial S(alpha, h, beta) is the bisection {(alpha x, |alpha|-|beta|, beta x) : x in h}
// of the groupoid of the shift. It is kept in normal form: h is canonical
// and contained in F(last alpha) ∧ F(last beta) (F(i) = V_i, F(empty) = X),
// and alpha, beta do not end with the same letter. The zero monomial is
// the unique one with empty h.
//
// Evaluation realizes a monomial as a partial injection between spectrum
// levels: the pairs (beta.w, alpha.w) for w running over h at a fixed level.
// The source and target levels differ by the cocycle, so two evaluations
// agree exactly when the bisections do.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "symdyn/cylinder.hpp"

namespace symdyn {

class Monomial {
 public:
  // Brings (alpha, h, beta) to normal form.
  Monomial(Word alpha, ClopenSet h, Word beta);

  static Monomial zero(ModelPtr m);
  static Monomial identity(ModelPtr m);

  const ModelPtr& model() const { return h_.model(); }
  const Word& alpha() const { return alpha_; }
  const Word& beta() const { return beta_; }
  const ClopenSet& h() const { return h_; }
  bool is_zero() const { return h_.is_empty(); }

  bool operator==(const Monomial& other) const;

 private:
  Word alpha_;
  ClopenSet h_;
  Word beta_;
};

// F(last w): the set of x with w.x a terminal path.
ClopenSet follower_set(const ModelPtr& m, const Word& w);

// {v.x : x in h}; h must lie in F(v).
ClopenSet prepend(const Word& v, const ClopenSet& h);
// {x : v.x in h}.
ClopenSet pullback(const Word& v, const ClopenSet& h);

Monomial generator(const ModelPtr& m, Vertex i);
Monomial adjoint(const Monomial& a);
// a ∘ b: apply b first.
Monomial compose(const Monomial& a, const Monomial& b);
Monomial normalize(const Monomial& a);
std::int64_t cocycle(const Monomial& a);

std::string format_monomial(const Monomial& a);

// Parses products such as "S(1,2)* . S(1)", "P(2) Q(1)", "1" (identity) and
// "0". S(i1,...,ik) = S_i1 ... S_ik, P(i) = S_i S_i*, Q(i) = S_i* S_i and a
// postfix * takes the adjoint of the preceding factor.
Monomial parse_monomial(const ModelPtr& m, const std::string& text);

// A finite partial injection from level-`source` points to level
// `source + shift` points. Empty means the zero map.
struct PartialInjection {
  std::uint32_t source = 0;
  std::int64_t shift = 0;
  std::vector<std::pair<SpectrumPoint, SpectrumPoint>> pairs;  // sorted by source point

  bool empty() const { return pairs.empty(); }
};

// Re-expresses the map with source level n >= source.
PartialInjection raise(const MarkovModel& m, const PartialInjection& f, std::uint32_t n);
// f ∘ g.
PartialInjection compose(const MarkovModel& m, const PartialInjection& f,
                         const PartialInjection& g);
PartialInjection inverse(const PartialInjection& f);
// Equality up to raising.
bool same_map(const MarkovModel& m, const PartialInjection& f, const PartialInjection& g);

// Source level n; needs n >= |beta| + level(h) and n >= |alpha|.
PartialInjection evaluate(const Monomial& a, std::uint32_t n);
std::uint32_t min_evaluation_level(const Monomial& a);

struct RelationCheck {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::string witness;  // empty when passed
  std::string context;  // CK4: the E, F that exhibit the witness
};

struct CkReport {
  std::vector<RelationCheck> relations;  // CK1..CK4
  bool dense = false;
  bool partial = false;                  // window-restricted sample
  std::uint64_t ck4_unsupported = 0;     // E,F pairs with infinite support
  // Dense models pass all four; otherwise CK1-3 pass and CK4 fails.
  bool consistent = false;
  bool all_passed() const;
};

// Finite graphs: every vertex, and all disjoint E,F when there are at most
// six vertices (|E|+|F| <= 2 beyond). Infinite presentations: vertices
// 1..window and |E|+|F| <= 2 inside the window.
CkReport verify_ck_relations(const ModelPtr& m, Vertex window = 4);

// Classes of "T^k x = T^k y for some k <= N" among the level-n points.
std::vector<std::vector<SpectrumPoint>> rn_partition(const MarkovModel& m, std::uint32_t big_n,
                                                     std::uint32_t n);

}  // namespace symdyn
