#pragma once

// Pointwise action of generator words on spectrum points. S_i sends a
// level-L point x with i.x terminal to i.x at level L+1; S_i* strips a
// leading i and lands at level L-1. Both act on whole cylinders, so the
// action on level-L representatives is exact.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symdyn/semigroup.hpp"

namespace oracle {

struct Gen {
  symdyn::Vertex i;
  bool adjoint;
};

using GenWord = std::vector<Gen>;  // applied right to left, like a product

inline std::optional<symdyn::SpectrumPoint> act(const symdyn::MarkovModel& m, const Gen& g,
                                                symdyn::SpectrumPoint x) {
  if (g.adjoint) {
    if (x.word.empty() || x.word.front() != g.i || x.level == 0) return std::nullopt;
    x.word.erase(x.word.begin());
    x.level -= 1;
    return x;
  }
  const bool ok = x.word.empty() ? m.in_boundary(*x.boundary, g.i)
                                 : m.graph().edge(g.i, x.word.front());
  if (!ok) return std::nullopt;
  x.word.insert(x.word.begin(), g.i);
  x.level += 1;
  return x;
}

inline symdyn::PartialInjection act_word(const symdyn::MarkovModel& m, const GenWord& w,
                                         std::uint32_t level) {
  symdyn::PartialInjection f;
  f.source = level;
  for (const auto& g : w) f.shift += g.adjoint ? -1 : 1;
  for (const auto& x : symdyn::spectrum_level(m, level).points) {
    std::optional<symdyn::SpectrumPoint> y = x;
    for (auto it = w.rbegin(); it != w.rend() && y; ++it) y = act(m, *it, *y);
    if (y) f.pairs.emplace_back(x, *y);
  }
  return f;
}

inline symdyn::Monomial monomial_of(const symdyn::ModelPtr& m, const GenWord& w) {
  symdyn::Monomial out = symdyn::Monomial::identity(m);
  for (const auto& g : w) {
    const auto s = symdyn::generator(m, g.i);
    out = symdyn::compose(out, g.adjoint ? symdyn::adjoint(s) : s);
  }
  return out;
}

inline std::string text_of(const GenWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& g : w) {
    if (!s.empty()) s += " . ";
    s += "S(" + std::to_string(g.i) + ")" + (g.adjoint ? "*" : "");
  }
  return s;
}

inline GenWord random_word(std::mt19937_64& rng, std::size_t vertices, std::size_t max_len) {
  GenWord w(rng() % (max_len + 1));
  for (auto& g : w) {
    g.i = 1 + rng() % vertices;
    g.adjoint = rng() & 1u;
  }
  return w;
}

inline bool same_pairs(symdyn::PartialInjection a, symdyn::PartialInjection b) {
  std::sort(a.pairs.begin(), a.pairs.end());
  std::sort(b.pairs.begin(), b.pairs.end());
  if (a.pairs.empty() || b.pairs.empty()) return a.pairs.empty() && b.pairs.empty();
  return a.source == b.source && a.shift == b.shift && a.pairs == b.pairs;
}

}  // namespace oracle
