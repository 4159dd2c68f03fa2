#include "symdyn/cylinder.hpp"

#include <algorithm>
#include <iterator>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

using Points = std::vector<SpectrumPoint>;

Points set_union(const Points& a, const Points& b) {
  Points out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Points set_intersection(const Points& a, const Points& b) {
  Points out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Points set_difference(const Points& a, const Points& b) {
  Points out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void require_same_model(const ClopenSet& a, const ClopenSet& b) {
  if (a.model() != b.model() && !(*a.model() == *b.model())) {
    fail(ErrorKind::validation, "clopen sets belong to different models");
  }
}

Points raise_points(const MarkovModel& m, Points pts, std::uint32_t from, std::uint32_t to) {
  for (std::uint32_t lvl = from; lvl < to; ++lvl) {
    Points next;
    for (const auto& p : pts) {
      auto ext = extensions(m, p);
      next.insert(next.end(), ext.begin(), ext.end());
    }
    std::sort(next.begin(), next.end());
    pts = std::move(next);
  }
  return pts;
}

}  // namespace

ClopenSet::ClopenSet(ModelPtr model, std::uint32_t level, std::vector<SpectrumPoint> members,
                     bool complemented)
    : model_(std::move(model)), level_(level), members_(std::move(members)),
      complemented_(complemented) {
  if (!model_->graph().is_finite() && level_ != 0) {
    fail(ErrorKind::unsupported, "clopen sets of infinite presentations live at level 0");
  }
  for (auto& p : members_) {
    if (p.level != level_) fail(ErrorKind::validation, "clopen member at the wrong level");
  }
  normalize_members();
}

ClopenSet ClopenSet::empty(ModelPtr model) { return ClopenSet(std::move(model), 0, {}); }

ClopenSet ClopenSet::whole(ModelPtr model) { return ClopenSet(std::move(model), 0, {}, true); }

void ClopenSet::normalize_members() {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (complemented_ && model_->graph().is_finite()) {
    members_ = set_difference(spectrum_level(*model_, level_).points, members_);
    complemented_ = false;
  }
}

ClopenSet ClopenSet::canonical() const {
  ClopenSet out = *this;
  out.lower();
  return out;
}

void ClopenSet::lower() {
  if (!model_->graph().is_finite()) return;
  const MarkovModel& m = *model_;
  // Lower while the set is the full preimage of its projection.
  while (level_ > 0) {
    Points lower;
    for (const auto& p : members_) lower.push_back(project_level(p));
    std::sort(lower.begin(), lower.end());
    lower.erase(std::unique(lower.begin(), lower.end()), lower.end());
    std::size_t preimage = 0;
    for (const auto& p : lower) preimage += extensions(m, p).size();
    if (preimage != members_.size()) break;
    members_ = std::move(lower);
    --level_;
  }
}

bool ClopenSet::contains(const SpectrumPoint& p) const {
  if (p.level < level_) {
    const auto ext = raise_points(*model_, {p}, p.level, level_);
    return std::all_of(ext.begin(), ext.end(), [&](const auto& q) { return contains(q); });
  }
  SpectrumPoint q = p;
  while (q.level > level_) q = project_level(q);
  return std::binary_search(members_.begin(), members_.end(), q) != complemented_;
}

bool ClopenSet::operator==(const ClopenSet& other) const {
  if (model_ != other.model_ && !(*model_ == *other.model_)) return false;
  const ClopenSet a = canonical();
  const ClopenSet b = other.canonical();
  return a.level_ == b.level_ && a.complemented_ == b.complemented_ && a.members_ == b.members_;
}

std::vector<SpectrumPoint> members_at(const ClopenSet& a, std::uint32_t n) {
  if (n < a.level()) fail(ErrorKind::parameter, "cannot lower a clopen set below its level");
  if (a.complemented()) fail(ErrorKind::unsupported, "cofinite sets have no explicit member list");
  if (n == a.level()) return a.members();
  return raise_points(*a.model(), a.members(), a.level(), n);
}

ClopenSet raise_level(const ClopenSet& a, std::uint32_t n) {
  if (n < a.level()) fail(ErrorKind::parameter, "raise_level: target level below the set's level");
  return ClopenSet(a.model(), n, members_at(a, n));
}

ClopenSet meet(const ClopenSet& a, const ClopenSet& b) {
  require_same_model(a, b);
  const std::uint32_t n = std::max(a.level(), b.level());
  if (a.complemented() || b.complemented()) {
    // Level 0 only (infinite presentations).
    const auto& x = a.members();
    const auto& y = b.members();
    if (a.complemented() && b.complemented()) return ClopenSet(a.model(), 0, set_union(x, y), true);
    if (a.complemented()) return ClopenSet(a.model(), 0, set_difference(y, x));
    return ClopenSet(a.model(), 0, set_difference(x, y));
  }
  return ClopenSet(a.model(), n, set_intersection(members_at(a, n), members_at(b, n))).canonical();
}

ClopenSet complement(const ClopenSet& a) {
  return ClopenSet(a.model(), a.level(), a.members(), !a.complemented()).canonical();
}

ClopenSet join(const ClopenSet& a, const ClopenSet& b) {
  return complement(meet(complement(a), complement(b)));
}

ClopenSet difference(const ClopenSet& a, const ClopenSet& b) { return meet(a, complement(b)); }

bool leq(const ClopenSet& a, const ClopenSet& b) { return difference(a, b).is_empty(); }

std::string format_clopen(const ClopenSet& a) {
  std::string out = a.complemented() ? "X∖{" : "{";
  for (std::size_t k = 0; k < a.members().size(); ++k) {
    if (k) out += ',';
    out += '(' + format_point(*a.model(), a.members()[k]) + ')';
  }
  return out + "}@" + std::to_string(a.level());
}

std::pair<ClopenSet, ClopenSet> base_sets(const ModelPtr& m, Vertex i) {
  const Graph& g = m->graph();
  if (!g.has_vertex(i)) fail(ErrorKind::validation, "unknown vertex " + std::to_string(i));
  ClopenSet u(m, 0, {SpectrumPoint{0, {i}, std::nullopt}});

  Points boundary_in, boundary_out;
  for (std::size_t j = 0; j < m->boundary().size(); ++j) {
    SpectrumPoint p{0, {}, static_cast<std::uint32_t>(j)};
    (m->in_boundary(j, i) ? boundary_in : boundary_out).push_back(p);
  }
  if (g.out_degree(i)) {
    Points members = boundary_in;
    for (Vertex s : g.successors(i)) members.push_back({0, {s}, std::nullopt});
    return {u, ClopenSet(m, 0, std::move(members))};
  }
  // Infinitely many successors: the row covers the infinite class, so the
  // excluded vertices are those of the finite classes outside the row.
  const auto& b = g.as_block();
  const std::size_t c = g.class_of(i);
  Points excluded = boundary_out;
  for (std::size_t d = 0; d < b.classes.size(); ++d) {
    if (b.block[c][d]) continue;
    for (std::uint64_t k = 0; k < *b.classes[d].card; ++k) {
      excluded.push_back({0, {b.first[d] + k}, std::nullopt});
    }
  }
  return {u, ClopenSet(m, 0, std::move(excluded), true)};
}

Ck4Result ck4_identity(const ModelPtr& m, const std::vector<Vertex>& e,
                       const std::vector<Vertex>& f) {
  const Graph& g = m->graph();
  for (Vertex v : e) {
    if (!g.has_vertex(v)) fail(ErrorKind::validation, "unknown vertex " + std::to_string(v));
  }
  for (Vertex v : f) {
    if (!g.has_vertex(v)) fail(ErrorKind::validation, "unknown vertex " + std::to_string(v));
  }
  auto in_support = [&](Vertex i) {
    for (Vertex j : e) {
      if (!g.edge(j, i)) return false;
    }
    for (Vertex k : f) {
      if (g.edge(k, i)) return false;
    }
    return true;
  };

  // Support {i : A(E,F,i) != 0}, or nullopt when it is infinite.
  std::optional<std::vector<Vertex>> support;
  if (g.is_finite()) {
    support.emplace();
    for (Vertex i = 1; i <= g.size(); ++i) {
      if (in_support(i)) support->push_back(i);
    }
  } else if (g.is_block()) {
    const auto& b = g.as_block();
    support.emplace();
    for (std::size_t d = 0; d < b.classes.size() && support; ++d) {
      if (!in_support(b.first[d])) continue;
      if (!b.classes[d].card) {
        support.reset();
      } else {
        for (std::uint64_t k = 0; k < *b.classes[d].card; ++k) support->push_back(b.first[d] + k);
      }
    }
  } else if (!e.empty()) {
    // Banded rows are finite, so the support sits inside one row.
    support.emplace();
    for (Vertex i : g.successors(e.front())) {
      if (in_support(i)) support->push_back(i);
    }
  }
  if (!support) return {Ck4Result::Status::not_finitely_supported, std::nullopt};

  ClopenSet lhs = ClopenSet::whole(m);
  for (Vertex j : e) lhs = meet(lhs, base_sets(m, j).second);
  for (Vertex k : f) lhs = difference(lhs, base_sets(m, k).second);
  ClopenSet rhs = ClopenSet::empty(m);
  for (Vertex i : *support) rhs = join(rhs, base_sets(m, i).first);

  const ClopenSet diff = join(difference(lhs, rhs), difference(rhs, lhs));
  if (diff.is_empty()) return {Ck4Result::Status::holds, std::nullopt};
  if (diff.complemented()) {
    fail(ErrorKind::unsupported, "CK4 difference is cofinite; no finite witness");
  }
  return {Ck4Result::Status::fails, diff.members().front()};
}

}  // namespace symdyn
