#pragma once

// Elementary, strong and shift equivalence of nonnegative integer matrices,
// the edge-shift conjugacy an elementary pair induces, and the classical
// invariants (Smith form, Bowen-Franks group, nonzero spectrum, dimension
// group).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symdyn/int_matrix.hpp"

namespace symdyn {

struct SmithForm {
  std::vector<BigInt> factors;  // d_1 | d_2 | ..., length min(rows, cols), all >= 0
  IntMatrix u, v, d;            // u * m * v == d, u and v unimodular
};

SmithForm smith_normal_form(const IntMatrix& m);

struct BowenFranks {
  std::vector<BigInt> factors;  // Smith factors of I - A
  BigInt det;                   // det(I - A)
};

BowenFranks bowen_franks(const IntMatrix& a);
// "trivial", "Z/2", "Z ⊕ Z/3", ...
std::string format_group(const std::vector<BigInt>& factors);

// Integer polynomial, coefficients in ascending degree.
struct Polynomial {
  std::vector<BigInt> coeffs;
  bool operator==(const Polynomial&) const = default;
};

// det(xI - A) (Faddeev-LeVerrier, exact division).
Polynomial charpoly(const IntMatrix& a);
// charpoly with every factor x removed.
Polynomial charpoly_nonzero_part(const IntMatrix& a);
BigInt evaluate(const Polynomial& p, const BigInt& x);
std::string format_polynomial(const Polynomial& p);

bool verify_elementary(const IntMatrix& a, const IntMatrix& r, const IntMatrix& s,
                       const IntMatrix& b);

struct LagCheck {
  bool ar_rb = false;
  bool sa_bs = false;
  bool rs_ak = false;
  bool sr_bk = false;
  bool ok() const { return ar_rb && sa_bs && rs_ak && sr_bk; }
};

LagCheck verify_shift_equivalence(const IntMatrix& a, const IntMatrix& b, const IntMatrix& r,
                                  const IntMatrix& s, std::uint64_t lag);

struct ElementaryPair {
  IntMatrix r, s;
};

struct ChainCheck {
  bool ok = false;
  std::size_t steps = 0;
  std::optional<std::size_t> failed_step;  // 0-based
  std::string reason;
};

// A_0 = A, A_{k+1} = S_k R_k where A_k = R_k S_k, and the last one is B.
ChainCheck verify_chain(const IntMatrix& a, const IntMatrix& b,
                        const std::vector<ElementaryPair>& chain);

struct InvariantComparison {
  bool det_equal = false;
  bool bowen_franks_equal = false;
  bool charpoly_equal = false;
  bool all() const { return det_equal && bowen_franks_equal && charpoly_equal; }
};

InvariantComparison compare_invariants(const IntMatrix& a, const IntMatrix& b);

struct SearchResult {
  std::optional<ElementaryPair> pair;
  bool screened_out = false;       // an invariant differs
  bool inner_dim_too_large = false;
  std::uint64_t candidates = 0;    // R matrices examined
};

// The lexicographically first (R, S) with A = RS, B = SR, entries <= entry_bound.
// The inner dimension is dim B, so the search is empty when it exceeds
// inner_dim_bound.
SearchResult search_elementary(const IntMatrix& a, const IntMatrix& b,
                               std::uint64_t inner_dim_bound, std::uint64_t entry_bound);

// Edge (source, target, copy) of the graph of a nonnegative matrix; vertices
// and copies are 1-based.
struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  std::uint64_t copy = 0;
  auto operator<=>(const Edge&) const = default;
};

// Lexicographic edge list; edge ids are positions in it.
std::vector<Edge> edge_list(const IntMatrix& m);
std::string format_edge(char name, const Edge& e);

using EdgePath = std::vector<std::size_t>;

struct ConjugacyPair {
  IntMatrix a, b, r, s;
  std::vector<Edge> ea, eb, er, es;
  std::vector<std::pair<std::size_t, std::size_t>> alpha;  // A-edge -> (R-edge, S-edge)
  std::vector<std::pair<std::size_t, std::size_t>> beta;   // B-edge -> (S-edge, R-edge)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> alpha_inv, beta_inv;
};

ConjugacyPair build_conjugacy(const IntMatrix& r, const IntMatrix& s, const IntMatrix& a,
                              const IntMatrix& b);

// b_k = beta^-1(s_k r_{k+1}) where alpha(a_k) = r_k s_k.
EdgePath apply_phi(const ConjugacyPair& c, const EdgePath& p);
// a_k = alpha^-1(r_k s_{k+1}) where beta(b_k) = s_k r_k.
EdgePath apply_psi(const ConjugacyPair& c, const EdgePath& p);

// Every admissible edge path of the given length, in lexicographic order.
std::vector<EdgePath> edge_paths(const std::vector<Edge>& edges, std::size_t length);

struct DimGroupElement {
  std::vector<BigInt> v;
  std::uint64_t level = 0;
};

struct Positivity {
  enum class Kind { positive, negative, undecided };
  Kind kind = Kind::undecided;
  std::uint64_t k = 0;
};

// G(A) = lim (Z^n -A-> Z^n -A-> ...), with (v, m) ~ (Av, m+1).
class DimensionGroup {
 public:
  explicit DimensionGroup(IntMatrix a);

  const IntMatrix& base() const { return a_; }

  bool equal(const DimGroupElement& x, const DimGroupElement& y) const;
  DimGroupElement add(const DimGroupElement& x, const DimGroupElement& y) const;
  DimGroupElement negate(const DimGroupElement& x) const;
  DimGroupElement tau(const DimGroupElement& x) const;
  DimGroupElement tau_inverse(const DimGroupElement& x) const;
  // First k <= k_max with A^k v >= 0 (positive) or <= 0 (negative).
  Positivity positive_bounded(const DimGroupElement& x, std::uint64_t k_max) const;

 private:
  void check(const DimGroupElement& x) const;
  std::vector<BigInt> lift(const DimGroupElement& x, std::uint64_t level) const;

  IntMatrix a_;
};

std::string to_string(Positivity::Kind k);

}  // namespace symdyn
