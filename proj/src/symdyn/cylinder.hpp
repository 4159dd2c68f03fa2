#pragma once

// Clopen subsets of X_{A,J}, represented at a spectrum level.
//
// A set at level n is a set of level-n spectrum points; its meaning is the
// union of their cylinders. Raising the level replaces each point by its
// preimages under the projection, which never changes the meaning. The
// canonical form is the minimal level at which the set is expressible, with
// sorted members; equality compares canonical forms.
//
// For finite graphs every spectrum is finite and complements are taken
// inside it. For infinite presentations only level 0 is available (the
// Boolean algebra generated by X, U_i and V_i); a set is then finite or
// cofinite in the level-0 spectrum, and `complemented` marks the cofinite
// case (members are the excluded points).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symdyn/path_space.hpp"

namespace symdyn {

class ClopenSet {
 public:
  ClopenSet(ModelPtr model, std::uint32_t level, std::vector<SpectrumPoint> members,
            bool complemented = false);

  static ClopenSet empty(ModelPtr model);
  static ClopenSet whole(ModelPtr model);

  const ModelPtr& model() const { return model_; }
  std::uint32_t level() const { return level_; }
  const std::vector<SpectrumPoint>& members() const { return members_; }
  bool complemented() const { return complemented_; }

  bool is_empty() const { return !complemented_ && members_.empty(); }

  // Same set at the minimal level at which it is expressible.
  ClopenSet canonical() const;

  // Whether the cylinder of p (at any level) lies inside the set.
  bool contains(const SpectrumPoint& p) const;

  // Semantic equality (compares canonical forms).
  bool operator==(const ClopenSet& other) const;

 private:
  void normalize_members();
  void lower();

  ModelPtr model_;
  std::uint32_t level_ = 0;
  std::vector<SpectrumPoint> members_;
  bool complemented_ = false;
};

// Members are replaced by all level-n points projecting into them. The
// result is deliberately not lowered back to the canonical level.
ClopenSet raise_level(const ClopenSet& a, std::uint32_t n);

// Members of the explicit (uncanonicalized) level-n representation.
std::vector<SpectrumPoint> members_at(const ClopenSet& a, std::uint32_t n);

// Boolean operations return canonical forms.
ClopenSet meet(const ClopenSet& a, const ClopenSet& b);
ClopenSet join(const ClopenSet& a, const ClopenSet& b);
ClopenSet complement(const ClopenSet& a);
ClopenSet difference(const ClopenSet& a, const ClopenSet& b);
bool leq(const ClopenSet& a, const ClopenSet& b);

// "{(1,1),(1,2)}@1", cofinite sets as "X∖{...}@0".
std::string format_clopen(const ClopenSet& a);

// U_i = points starting with i; V_i = T(U_i).
std::pair<ClopenSet, ClopenSet> base_sets(const ModelPtr& m, Vertex i);

struct Ck4Result {
  enum class Status { holds, fails, not_finitely_supported };
  Status status = Status::holds;
  std::optional<SpectrumPoint> witness;  // a point of the symmetric difference
};

// Compares ∩_E V_j ∩ ∩_F V_k^c with the union of U_i over the support
// {i : A(E,F,i) != 0}. An infinite support is reported, not compared.
Ck4Result ck4_identity(const ModelPtr& m, const std::vector<Vertex>& e,
                       const std::vector<Vertex>& f);

}  // namespace symdyn
