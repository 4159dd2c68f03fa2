#pragma once

// The terminal-path model X_{A,J} of a graph with a boundary family J.
//
// A terminal path is an infinite admissible path, or a finite admissible
// word w paired with a boundary set J containing its last letter (the empty
// word pairs with any J). The level-n spectrum is the finite quotient
//
//     A^(n)  ⊔  Y_n  ⊔ ... ⊔  Y_1  ⊔  J
//
// where A^(n) holds the admissible words of length n+1 (cylinders) and Y_r
// the terminal paths with a word of length r. The model is the projective
// limit of these spectra.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/graph.hpp"

namespace symdyn {

// J = finite ∪ (union of the listed classes). Classes are 0-based indices
// into a block graph's class list and only appear for infinite classes once
// canonicalized.
struct BoundaryPattern {
  std::vector<Vertex> finite;
  std::vector<std::size_t> classes;

  bool empty() const { return finite.empty() && classes.empty(); }
  auto operator<=>(const BoundaryPattern&) const = default;
};

bool pattern_contains(const Graph& g, const BoundaryPattern& j, Vertex v);

// Validates ids and rewrites `j` so that equal sets compare equal: finite
// classes are expanded into vertex ids, ids covered by a class are dropped.
BoundaryPattern canonical_pattern(const Graph& g, BoundaryPattern j);

// "{1,2}", "{}", "{3,c2}" (c2 = all of class 2, 1-based).
std::string format_pattern(const BoundaryPattern& j);

// Cluster points of the column net i -> A_i = {j : A(j,i) = 1}: J belongs
// iff for every finite window W infinitely many columns agree with J on W.
// Empty for finite graphs.
std::vector<BoundaryPattern> compute_JA(const Graph& g);

class MarkovModel {
 public:
  const Graph& graph() const { return graph_; }
  const std::vector<BoundaryPattern>& boundary() const { return boundary_; }
  const std::vector<BoundaryPattern>& ja() const { return ja_; }

  // J = J_A, i.e. the domain of the shift is dense.
  bool dense_domain() const { return dense_; }

  // The empty set belongs to J_A (the non-unital O_A case).
  bool empty_in_ja() const;

  bool in_boundary(std::size_t j, Vertex v) const {
    return pattern_contains(graph_, boundary_[j], v);
  }

  std::optional<std::size_t> find_boundary(const BoundaryPattern& j) const;

  bool operator==(const MarkovModel& other) const {
    return graph_ == other.graph_ && boundary_ == other.boundary_;
  }

 private:
  friend std::shared_ptr<const MarkovModel> validate_model(Graph, std::vector<BoundaryPattern>);

  MarkovModel(Graph g) : graph_(std::move(g)) {}

  Graph graph_;
  std::vector<BoundaryPattern> boundary_;
  std::vector<BoundaryPattern> ja_;
  bool dense_ = false;
};

using ModelPtr = std::shared_ptr<const MarkovModel>;

// Checks J ⊇ J_A and that every vertex has an outgoing edge or lies in some
// J ∈ J. Throws validation errors naming the missing pattern or vertex.
ModelPtr validate_model(Graph g, std::vector<BoundaryPattern> boundary);

// The Markov shift proper: J = J_A.
ModelPtr dense_model(Graph g);

struct SpectrumPoint {
  std::uint32_t level = 0;
  Word word;
  std::optional<std::uint32_t> boundary;  // index into the model's family; none: full path

  bool is_full() const { return !boundary.has_value(); }
  auto operator<=>(const SpectrumPoint&) const = default;
};

std::string format_point(const MarkovModel& m, const SpectrumPoint& p);
SpectrumPoint parse_point(const MarkovModel& m, std::uint32_t level, const std::string& text);

struct Spectrum {
  std::vector<SpectrumPoint> points;  // ascending
  bool partial = false;               // window-restricted
};

// Complete enumeration of the level-n spectrum. Infinite graphs need a
// vertex window; the result then only holds points whose letters are
// <= window and is flagged partial.
Spectrum spectrum_level(const MarkovModel& m, std::uint32_t n,
                        std::optional<Vertex> window = std::nullopt);

// pi_{n,n+1}: drops the last letter of a full path, forgets J on a
// truncated path of maximal length, identity elsewhere.
SpectrumPoint project_level(const SpectrumPoint& x);

// Level-(n+1) points projecting onto x (a full word of length n+1 extends
// by a successor or terminates in a J containing its last letter).
std::vector<SpectrumPoint> extensions(const MarkovModel& m, const SpectrumPoint& x);

// T(i_0, alpha) = alpha. Full paths need level >= 1 so that the image is a
// single point; (∅;J) lies outside the domain.
SpectrumPoint shift_apply(const SpectrumPoint& x);

struct PeriodicPointRecord {
  std::uint32_t preperiod = 0;
  std::uint32_t period = 0;
  Word prefix;  // the first `preperiod` letters
  Loop loop;    // the repeated loop, based where the repetition starts
  bool isolated = false;

  auto operator<=>(const PeriodicPointRecord&) const = default;
};

// Every eventually periodic infinite path with minimal period <= max_period
// and minimal preperiod <= max_preperiod, one record per point.
std::vector<PeriodicPointRecord> periodic_points(const MarkovModel& m, std::uint32_t max_period,
                                                 std::uint32_t max_preperiod);

// Number of strictly periodic points x with T^k x = x among `records`.
std::uint64_t count_period_dividing(const std::vector<PeriodicPointRecord>& records,
                                    std::uint32_t k);

struct FreenessScan {
  bool violation = false;
  std::optional<Word> cylinder;  // Z(cylinder) on which T^m0 = T^n0
};

// Searches cylinders Z(γ), 1 <= |γ| <= depth, in (length, lexicographic)
// order for one on which T^m0 and T^n0 agree on every point of the level
// depth+|n0-m0|-1 spectrum. A bounded semi-decision of essential freeness.
FreenessScan essential_freeness_scan(const MarkovModel& m, std::uint32_t m0, std::uint32_t n0,
                                     std::uint32_t depth);

}  // namespace symdyn
