#include "symdyn/path_space.hpp"

#include <algorithm>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

std::vector<Vertex> parse_ids(const std::string& text, const std::string& what) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) fail(ErrorKind::parse, what + ": empty vertex id in '" + text + "'");
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) fail(ErrorKind::parse, what + ": bad vertex id '" + item + "'");
    out.push_back(v);
  }
  return out;
}

BoundaryPattern parse_pattern(const std::string& text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    fail(ErrorKind::parse, "boundary set must be written {..}, got '" + text + "'");
  }
  BoundaryPattern j;
  std::stringstream ss(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty() && item.front() == 'c') {
      auto ids = parse_ids(item.substr(1), "boundary class");
      if (ids.size() != 1 || ids[0] == 0) fail(ErrorKind::parse, "bad class reference '" + item + "'");
      j.classes.push_back(ids[0] - 1);
    } else {
      auto ids = parse_ids(item, "boundary set");
      j.finite.insert(j.finite.end(), ids.begin(), ids.end());
    }
  }
  return j;
}

// Letters available as the first letter of a path.
std::vector<Vertex> alphabet(const Graph& g, std::optional<Vertex> window) {
  Vertex top = 0;
  if (auto count = g.vertex_count()) {
    top = *count;
    if (window) top = std::min(top, *window);
  } else {
    if (!window) {
      fail(ErrorKind::parameter, "infinite graph: supply a vertex window to enumerate the spectrum");
    }
    top = *window;
  }
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= top; ++v) out.push_back(v);
  return out;
}

std::vector<Vertex> next_letters(const Graph& g, Vertex v, std::optional<Vertex> window) {
  return window ? g.successors_within(v, *window) : g.successors(v);
}

}  // namespace

bool pattern_contains(const Graph& g, const BoundaryPattern& j, Vertex v) {
  if (std::binary_search(j.finite.begin(), j.finite.end(), v)) return true;
  if (j.classes.empty()) return false;
  return std::binary_search(j.classes.begin(), j.classes.end(), g.class_of(v));
}

BoundaryPattern canonical_pattern(const Graph& g, BoundaryPattern j) {
  for (Vertex v : j.finite) {
    if (!g.has_vertex(v)) fail(ErrorKind::validation, "boundary: unknown vertex " + std::to_string(v));
  }
  if (!j.classes.empty() && !g.is_block()) {
    fail(ErrorKind::validation, "boundary: class references need a block presentation");
  }
  std::vector<std::size_t> infinite_classes;
  if (g.is_block()) {
    const auto& b = g.as_block();
    for (std::size_t c : j.classes) {
      if (c >= b.classes.size()) {
        fail(ErrorKind::validation, "boundary: unknown class " + std::to_string(c + 1));
      }
      if (b.classes[c].card) {
        for (std::uint64_t k = 0; k < *b.classes[c].card; ++k) j.finite.push_back(b.first[c] + k);
      } else {
        infinite_classes.push_back(c);
      }
    }
  }
  std::sort(infinite_classes.begin(), infinite_classes.end());
  infinite_classes.erase(std::unique(infinite_classes.begin(), infinite_classes.end()),
                         infinite_classes.end());
  j.classes = std::move(infinite_classes);
  std::sort(j.finite.begin(), j.finite.end());
  j.finite.erase(std::unique(j.finite.begin(), j.finite.end()), j.finite.end());
  if (!j.classes.empty()) {
    std::erase_if(j.finite, [&](Vertex v) {
      return std::binary_search(j.classes.begin(), j.classes.end(), g.class_of(v));
    });
  }
  return j;
}

std::string format_pattern(const BoundaryPattern& j) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (Vertex v : j.finite) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  for (std::size_t c : j.classes) {
    os << (first ? "" : ",") << 'c' << c + 1;
    first = false;
  }
  os << '}';
  return os.str();
}

std::vector<BoundaryPattern> compute_JA(const Graph& g) {
  if (g.is_finite()) return {};
  if (g.is_banded()) {
    // Columns of tail vertices are {i - o} plus finitely many cross sources;
    // any fixed window eventually sees none of them.
    return {BoundaryPattern{}};
  }
  // Columns are constant on classes; only infinite classes repeat forever.
  const auto& b = g.as_block();
  std::vector<BoundaryPattern> out;
  for (std::size_t d = 0; d < b.classes.size(); ++d) {
    if (b.classes[d].card) continue;
    BoundaryPattern j;
    for (std::size_t c = 0; c < b.classes.size(); ++c) {
      if (b.block[c][d]) j.classes.push_back(c);
    }
    out.push_back(canonical_pattern(g, std::move(j)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool MarkovModel::empty_in_ja() const {
  return std::any_of(ja_.begin(), ja_.end(), [](const BoundaryPattern& j) { return j.empty(); });
}

std::optional<std::size_t> MarkovModel::find_boundary(const BoundaryPattern& j) const {
  auto canon = canonical_pattern(graph_, j);
  auto it = std::lower_bound(boundary_.begin(), boundary_.end(), canon);
  if (it == boundary_.end() || *it != canon) return std::nullopt;
  return static_cast<std::size_t>(it - boundary_.begin());
}

ModelPtr validate_model(Graph g, std::vector<BoundaryPattern> boundary) {
  std::shared_ptr<MarkovModel> m(new MarkovModel(std::move(g)));
  const Graph& graph = m->graph_;
  for (auto& j : boundary) j = canonical_pattern(graph, std::move(j));
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
  m->boundary_ = std::move(boundary);
  m->ja_ = compute_JA(graph);

  for (const auto& j : m->ja_) {
    if (!std::binary_search(m->boundary_.begin(), m->boundary_.end(), j)) {
      fail(ErrorKind::validation,
           "boundary family must contain J_A; missing pattern " + format_pattern(j));
    }
  }

  auto covered = [&](Vertex v) {
    for (std::size_t k = 0; k < m->boundary_.size(); ++k) {
      if (m->in_boundary(k, v)) return true;
    }
    return false;
  };
  auto reject = [](Vertex v) {
    fail(ErrorKind::validation, "vertex " + std::to_string(v) +
                                    " has no outgoing edge and lies in no boundary set");
  };

  if (graph.is_finite()) {
    for (Vertex v = 1; v <= graph.size(); ++v) {
      if (graph.out_degree(v) == std::uint64_t{0} && !covered(v)) reject(v);
    }
  } else if (graph.is_block()) {
    const auto& b = graph.as_block();
    for (std::size_t c = 0; c < b.classes.size(); ++c) {
      if (graph.out_degree(b.first[c]) != std::uint64_t{0}) continue;
      const bool whole = std::any_of(m->boundary_.begin(), m->boundary_.end(), [&](const auto& j) {
        return std::binary_search(j.classes.begin(), j.classes.end(), c);
      });
      if (whole) continue;
      // Finite parts are finite, so an uncovered vertex exists in an infinite class.
      for (Vertex v = b.first[c];; ++v) {
        if (b.classes[c].card && v >= b.first[c] + *b.classes[c].card) break;
        if (!covered(v)) reject(v);
      }
    }
  } else {
    const auto& b = graph.as_banded();
    for (Vertex v = 1; v <= b.prefix.size(); ++v) {
      if (graph.out_degree(v) == std::uint64_t{0} && !covered(v)) reject(v);
    }
    if (b.offsets.empty()) {
      for (Vertex v = b.prefix.size() + 1;; ++v) {
        if (graph.out_degree(v) == std::uint64_t{0} && !covered(v)) reject(v);
      }
    }
  }
  m->dense_ = m->boundary_ == m->ja_;
  return m;
}

ModelPtr dense_model(Graph g) {
  auto ja = compute_JA(g);
  return validate_model(std::move(g), std::move(ja));
}

std::string format_point(const MarkovModel& m, const SpectrumPoint& p) {
  std::ostringstream os;
  if (p.word.empty()) os << "∅";
  for (std::size_t k = 0; k < p.word.size(); ++k) os << (k ? "," : "") << p.word[k];
  if (p.boundary) os << ';' << format_pattern(m.boundary()[*p.boundary]);
  return os.str();
}

SpectrumPoint parse_point(const MarkovModel& m, std::uint32_t level, const std::string& text) {
  SpectrumPoint p;
  p.level = level;
  const auto semi = text.find(';');
  std::string word = text.substr(0, semi);
  if (word != "∅" && !word.empty()) p.word = parse_ids(word, "spectrum point");
  for (std::size_t k = 0; k < p.word.size(); ++k) {
    if (!m.graph().has_vertex(p.word[k]) ||
        (k > 0 && !m.graph().edge(p.word[k - 1], p.word[k]))) {
      fail(ErrorKind::validation, "spectrum point '" + text + "' is not an admissible word");
    }
  }
  if (semi == std::string::npos) {
    if (p.word.size() != level + 1) {
      fail(ErrorKind::validation, "full path '" + text + "' does not have length " +
                                      std::to_string(level + 1));
    }
    return p;
  }
  auto idx = m.find_boundary(parse_pattern(text.substr(semi + 1)));
  if (!idx) fail(ErrorKind::validation, "spectrum point '" + text + "': J is not in the family");
  if (p.word.size() > level || (!p.word.empty() && !m.in_boundary(*idx, p.word.back()))) {
    fail(ErrorKind::validation, "spectrum point '" + text + "' is not a level-" +
                                    std::to_string(level) + " terminal path");
  }
  p.boundary = static_cast<std::uint32_t>(*idx);
  return p;
}

Spectrum spectrum_level(const MarkovModel& m, std::uint32_t n, std::optional<Vertex> window) {
  const Graph& g = m.graph();
  if (g.is_finite()) window.reset();
  Spectrum out;
  out.partial = window.has_value();
  const std::size_t nj = m.boundary().size();

  for (std::size_t j = 0; j < nj; ++j) {
    out.points.push_back({n, {}, static_cast<std::uint32_t>(j)});
  }
  Word word;
  auto dfs = [&](auto&& self) -> void {
    const Vertex last = word.back();
    if (word.size() == n + 1) {
      out.points.push_back({n, word, std::nullopt});
      return;
    }
    for (std::size_t j = 0; j < nj; ++j) {
      if (m.in_boundary(j, last)) out.points.push_back({n, word, static_cast<std::uint32_t>(j)});
    }
    for (Vertex s : next_letters(g, last, window)) {
      word.push_back(s);
      self(self);
      word.pop_back();
    }
  };
  for (Vertex v : alphabet(g, window)) {
    word = {v};
    dfs(dfs);
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

SpectrumPoint project_level(const SpectrumPoint& x) {
  if (x.level == 0) fail(ErrorKind::domain, "level-0 points have no projection");
  SpectrumPoint y = x;
  y.level = x.level - 1;
  if (x.is_full()) {
    y.word.pop_back();
  } else if (x.word.size() == x.level) {
    y.boundary.reset();
  }
  return y;
}

std::vector<SpectrumPoint> extensions(const MarkovModel& m, const SpectrumPoint& x) {
  std::vector<SpectrumPoint> out;
  if (!x.is_full()) {
    SpectrumPoint y = x;
    ++y.level;
    out.push_back(std::move(y));
    return out;
  }
  const Vertex last = x.word.back();
  for (std::size_t j = 0; j < m.boundary().size(); ++j) {
    if (m.in_boundary(j, last)) out.push_back({x.level + 1, x.word, static_cast<std::uint32_t>(j)});
  }
  for (Vertex s : m.graph().successors(last)) {
    SpectrumPoint y{x.level + 1, x.word, std::nullopt};
    y.word.push_back(s);
    out.push_back(std::move(y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SpectrumPoint shift_apply(const SpectrumPoint& x) {
  if (x.word.empty()) fail(ErrorKind::domain, "(∅;J) is outside the domain of the shift");
  if (x.is_full() && x.level == 0) {
    fail(ErrorKind::domain, "a level-0 cylinder has no single image; raise it first");
  }
  SpectrumPoint y = x;
  y.word.erase(y.word.begin());
  y.level = x.level - 1;
  return y;
}

std::vector<PeriodicPointRecord> periodic_points(const MarkovModel& m, std::uint32_t max_period,
                                                 std::uint32_t max_preperiod) {
  const Graph& g = m.graph();
  if (!g.is_finite()) fail(ErrorKind::unsupported, "periodic points need a finite graph");
  const auto& fg = g.as_finite();
  const std::size_t n = fg.n;
  std::vector<std::vector<Vertex>> pred(n + 1);
  for (Vertex v = 1; v <= n; ++v) {
    for (Vertex s : fg.succ[v - 1]) pred[s].push_back(v);
  }
  // A periodic point is isolated when its loop has no exit and no vertex
  // on it lies in a boundary set.
  std::vector<bool> stuck(n + 1, false);
  for (Vertex v = 1; v <= n; ++v) {
    bool in_j = false;
    for (std::size_t j = 0; j < m.boundary().size(); ++j) in_j = in_j || m.in_boundary(j, v);
    stuck[v] = fg.succ[v - 1].size() == 1 && !in_j;
  }

  // One pass per period emits the strictly periodic records in order;
  // only the preperiodic ones need sorting.
  std::vector<PeriodicPointRecord> out;
  std::vector<PeriodicPointRecord> pre;
  std::size_t period = 0;
  Word cycle;
  Word prefix;

  auto primitive = [&]() {
    const std::size_t p = cycle.size();
    for (std::size_t d = 1; d < p; ++d) {
      if (p % d) continue;
      bool periodic = true;
      for (std::size_t i = 0; i < p && periodic; ++i) periodic = cycle[i] == cycle[(i + d) % p];
      if (periodic) return false;
    }
    return true;
  };

  auto emit_prefixes = [&](const PeriodicPointRecord& base) {
    // Prefixes are built backwards from the loop's base point; the letter
    // right before the loop must differ from the loop's last letter,
    // otherwise the preperiod would not be minimal.
    auto back = [&](auto&& self, Vertex head) -> void {
      if (prefix.size() == max_preperiod) return;
      for (Vertex p : pred[head]) {
        if (prefix.empty() && p == cycle.back()) continue;
        prefix.insert(prefix.begin(), p);
        PeriodicPointRecord r = base;
        r.preperiod = static_cast<std::uint32_t>(prefix.size());
        r.prefix = prefix;
        pre.push_back(std::move(r));
        self(self, p);
        prefix.erase(prefix.begin());
      }
    };
    prefix.clear();
    back(back, cycle.front());
  };

  auto dfs = [&](auto&& self) -> void {
    const Vertex last = cycle.back();
    if (cycle.size() == period) {
      if (!fg.adj[(last - 1) * n + (cycle.front() - 1)] || !primitive()) return;
      PeriodicPointRecord r;
      r.period = static_cast<std::uint32_t>(cycle.size());
      r.loop.vertices.reserve(cycle.size() + 1);
      r.loop.vertices = cycle;
      r.loop.vertices.push_back(cycle.front());
      bool isolated = true;
      for (Vertex v : cycle) isolated = isolated && stuck[v];
      r.isolated = isolated;
      if (max_preperiod > 0) emit_prefixes(r);
      out.push_back(std::move(r));
      return;
    }
    for (Vertex s : fg.succ[last - 1]) {
      cycle.push_back(s);
      self(self);
      cycle.pop_back();
    }
  };
  cycle.reserve(max_period);
  for (period = 1; period <= max_period; ++period) {
    for (Vertex v = 1; v <= n; ++v) {
      cycle.assign(1, v);
      dfs(dfs);
    }
  }
  std::sort(pre.begin(), pre.end());
  for (auto& r : pre) out.push_back(std::move(r));
  return out;
}

std::uint64_t count_period_dividing(const std::vector<PeriodicPointRecord>& records,
                                    std::uint32_t k) {
  std::uint64_t count = 0;
  for (const auto& r : records) {
    if (r.preperiod == 0 && k % r.period == 0) ++count;
  }
  return count;
}

FreenessScan essential_freeness_scan(const MarkovModel& m, std::uint32_t m0, std::uint32_t n0,
                                     std::uint32_t depth) {
  const Graph& g = m.graph();
  if (!g.is_finite()) fail(ErrorKind::unsupported, "essential-freeness scan needs a finite graph");
  if (m0 == n0) fail(ErrorKind::parameter, "m0 and n0 must differ");
  if (m0 > n0) std::swap(m0, n0);
  if (depth < n0) fail(ErrorKind::parameter, "depth must be at least max(m0, n0)");
  if (depth == 0) fail(ErrorKind::parameter, "depth must be positive");

  const std::size_t d = n0 - m0;
  const std::size_t len = depth + d;  // letters examined per extension
  const std::size_t n = g.size();
  std::vector<bool> in_some_j(n + 1, false);
  for (Vertex v = 1; v <= n; ++v) {
    for (std::size_t j = 0; j < m.boundary().size(); ++j) in_some_j[v] = in_some_j[v] || m.in_boundary(j, v);
  }

  Word word;
  // True when position t satisfies the agreement x_{t-d} = x_t.
  auto consistent_at = [&](std::size_t t) { return t < n0 || word[t - d] == word[t]; };

  // True iff every point of the cylinder (up to `len` letters) satisfies
  // the agreement; a finite terminal path never does.
  auto all_agree = [&](auto&& self) -> bool {
    const Vertex last = word.back();
    if (in_some_j[last]) return false;
    if (word.size() == len) return true;
    for (Vertex s : g.successors(last)) {
      word.push_back(s);
      const bool ok = consistent_at(word.size() - 1) && self(self);
      word.pop_back();
      if (!ok) return false;
    }
    return true;
  };

  FreenessScan out;
  auto search = [&](auto&& self, std::size_t target) -> bool {
    if (word.size() == target) {
      if (all_agree(all_agree)) {
        out.violation = true;
        out.cylinder = word;
        return true;
      }
      return false;
    }
    const auto next = word.empty() ? std::vector<Vertex>{} : g.successors(word.back());
    if (word.empty()) {
      for (Vertex v = 1; v <= n; ++v) {
        word.push_back(v);
        if (self(self, target)) return true;
        word.pop_back();
      }
      return false;
    }
    for (Vertex s : next) {
      word.push_back(s);
      const bool found = consistent_at(word.size() - 1) && self(self, target);
      if (found) return true;
      word.pop_back();
    }
    return false;
  };
  for (std::size_t target = 1; target <= depth; ++target) {
    word.clear();
    if (search(search, target)) return out;
  }
  return out;
}

}  // namespace symdyn
