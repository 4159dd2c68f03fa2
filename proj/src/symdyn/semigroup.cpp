#include "symdyn/semigroup.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

void check_word(const MarkovModel& m, const Word& w) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!m.graph().has_vertex(w[k])) {
      fail(ErrorKind::validation, "unknown vertex " + std::to_string(w[k]));
    }
    if (k > 0 && !m.graph().edge(w[k - 1], w[k])) {
      fail(ErrorKind::validation, "word " + format_word(w) + " is not admissible");
    }
  }
}

void require_same_model(const ModelPtr& a, const ModelPtr& b) {
  if (a != b && !(*a == *b)) fail(ErrorKind::validation, "monomials belong to different models");
}

bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

SpectrumPoint concat(const Word& v, const SpectrumPoint& w) {
  SpectrumPoint out{static_cast<std::uint32_t>(w.level + v.size()), v, w.boundary};
  out.word.insert(out.word.end(), w.word.begin(), w.word.end());
  return out;
}

std::string word_or_empty(const Word& w) { return w.empty() ? "∅" : format_word(w); }

std::string format_ids(const std::vector<Vertex>& ids) {
  std::string out = "{";
  for (std::size_t k = 0; k < ids.size(); ++k) out += (k ? "," : "") + std::to_string(ids[k]);
  return out + "}";
}

}  // namespace

Monomial::Monomial(Word alpha, ClopenSet h, Word beta)
    : alpha_(std::move(alpha)), h_(std::move(h)), beta_(std::move(beta)) {
  const ModelPtr m = h_.model();
  check_word(*m, alpha_);
  check_word(*m, beta_);
  h_ = meet(meet(h_, follower_set(m, alpha_)), follower_set(m, beta_));
  while (!h_.is_empty() && !alpha_.empty() && !beta_.empty() && alpha_.back() == beta_.back()) {
    h_ = prepend({alpha_.back()}, h_);
    alpha_.pop_back();
    beta_.pop_back();
  }
  if (h_.is_empty()) {
    alpha_.clear();
    beta_.clear();
    h_ = ClopenSet::empty(m);
  } else {
    h_ = h_.canonical();
  }
}

Monomial Monomial::zero(ModelPtr m) { return Monomial({}, ClopenSet::empty(std::move(m)), {}); }

Monomial Monomial::identity(ModelPtr m) {
  return Monomial({}, ClopenSet::whole(std::move(m)), {});
}

bool Monomial::operator==(const Monomial& other) const {
  return alpha_ == other.alpha_ && beta_ == other.beta_ && h_ == other.h_;
}

ClopenSet follower_set(const ModelPtr& m, const Word& w) {
  if (w.empty()) return ClopenSet::whole(m);
  return base_sets(m, w.back()).second;
}

ClopenSet prepend(const Word& v, const ClopenSet& h) {
  if (v.empty()) return h;
  const ModelPtr& m = h.model();
  const Graph& g = m->graph();
  std::vector<SpectrumPoint> out;
  for (const auto& p : members_at(h, h.level())) {
    const bool fits = p.word.empty() ? m->in_boundary(*p.boundary, v.back())
                                     : g.edge(v.back(), p.word.front());
    if (fits) out.push_back(concat(v, p));
  }
  return ClopenSet(m, static_cast<std::uint32_t>(h.level() + v.size()), std::move(out)).canonical();
}

ClopenSet pullback(const Word& v, const ClopenSet& h) {
  if (v.empty()) return h;
  const std::uint32_t n = std::max<std::uint32_t>(h.level(), static_cast<std::uint32_t>(v.size()));
  std::vector<SpectrumPoint> out;
  for (const auto& p : members_at(h, n)) {
    if (!is_prefix(v, p.word)) continue;
    SpectrumPoint q{static_cast<std::uint32_t>(n - v.size()),
                    Word(p.word.begin() + static_cast<std::ptrdiff_t>(v.size()), p.word.end()),
                    p.boundary};
    out.push_back(std::move(q));
  }
  return ClopenSet(h.model(), static_cast<std::uint32_t>(n - v.size()), std::move(out)).canonical();
}

Monomial generator(const ModelPtr& m, Vertex i) {
  return Monomial({i}, base_sets(m, i).second, {});
}

Monomial adjoint(const Monomial& a) { return Monomial(a.beta(), a.h(), a.alpha()); }

Monomial compose(const Monomial& a, const Monomial& b) {
  require_same_model(a.model(), b.model());
  if (a.is_zero() || b.is_zero()) return Monomial::zero(a.model());
  // b: beta2.x -> alpha2.x, then a: beta1.y -> alpha1.y; match alpha2.x = beta1.y.
  if (is_prefix(b.alpha(), a.beta())) {
    const Word v(a.beta().begin() + static_cast<std::ptrdiff_t>(b.alpha().size()), a.beta().end());
    Word beta = b.beta();
    beta.insert(beta.end(), v.begin(), v.end());
    ClopenSet h = meet(a.h(), pullback(v, b.h()));
    if (h.is_empty()) return Monomial::zero(a.model());
    return Monomial(a.alpha(), std::move(h), std::move(beta));
  }
  if (is_prefix(a.beta(), b.alpha())) {
    const Word v(b.alpha().begin() + static_cast<std::ptrdiff_t>(a.beta().size()), b.alpha().end());
    Word alpha = a.alpha();
    alpha.insert(alpha.end(), v.begin(), v.end());
    ClopenSet h = meet(b.h(), pullback(v, a.h()));
    if (h.is_empty()) return Monomial::zero(a.model());
    return Monomial(std::move(alpha), std::move(h), b.beta());
  }
  return Monomial::zero(a.model());
}

Monomial normalize(const Monomial& a) { return Monomial(a.alpha(), a.h(), a.beta()); }

std::int64_t cocycle(const Monomial& a) {
  if (a.is_zero()) fail(ErrorKind::domain, "the cocycle is undefined on the zero monomial");
  return static_cast<std::int64_t>(a.alpha().size()) - static_cast<std::int64_t>(a.beta().size());
}

std::string format_monomial(const Monomial& a) {
  if (a.is_zero()) return "0";
  return "S(" + word_or_empty(a.alpha()) + ", " + format_clopen(a.h()) + ", " +
         word_or_empty(a.beta()) + ")";
}

Monomial parse_monomial(const ModelPtr& m, const std::string& text) {
  std::string s;
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text.compare(k, 2, "·") == 0) {  // U+00B7
      s += ' ';
      ++k;
    } else {
      s += text[k];
    }
  }
  auto bad = [&](std::size_t pos, const std::string& what) {
    fail(ErrorKind::parse, "monomial '" + text + "', offset " + std::to_string(pos) + ": " + what);
  };

  Monomial result = Monomial::identity(m);
  std::size_t pos = 0;
  bool any = false;
  while (true) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '.')) ++pos;
    if (pos == s.size()) break;
    const std::size_t start = pos;
    const char c = s[pos++];
    std::optional<Monomial> factor;
    if (c == '1' || c == '0') {
      factor = c == '1' ? Monomial::identity(m) : Monomial::zero(m);
    } else if (c == 'S' || c == 'P' || c == 'Q') {
      if (pos >= s.size() || s[pos] != '(') bad(pos, "expected '('");
      const std::size_t close = s.find(')', pos);
      if (close == std::string::npos) bad(pos, "missing ')'");
      std::vector<Vertex> ids;
      std::size_t q = pos + 1;
      while (q < close) {
        while (q < close && s[q] == ' ') ++q;
        std::size_t e = q;
        while (e < close && s[e] >= '0' && s[e] <= '9') ++e;
        if (e == q) bad(q, "expected a vertex id");
        ids.push_back(std::stoull(s.substr(q, e - q)));
        q = e;
        while (q < close && s[q] == ' ') ++q;
        if (q < close && s[q] != ',') bad(q, "expected ','");
        if (q < close) ++q;
      }
      if (ids.empty()) bad(pos, "empty vertex list");
      if (c != 'S' && ids.size() != 1) bad(pos, "P and Q take one vertex");
      pos = close + 1;
      Monomial f = Monomial::identity(m);
      for (Vertex v : ids) f = compose(f, generator(m, v));
      if (c == 'P') f = compose(f, adjoint(f));
      if (c == 'Q') f = compose(adjoint(f), f);
      factor = std::move(f);
    } else {
      bad(start, std::string("unexpected character '") + c + "'");
    }
    while (pos < s.size() && s[pos] == '*') {
      factor = adjoint(*factor);
      ++pos;
    }
    result = compose(result, *factor);
    any = true;
  }
  if (!any) bad(0, "empty expression");
  return result;
}

PartialInjection raise(const MarkovModel& m, const PartialInjection& f, std::uint32_t n) {
  if (n < f.source) fail(ErrorKind::parameter, "cannot lower a partial injection");
  PartialInjection out = f;
  for (std::uint32_t lvl = f.source; lvl < n; ++lvl) {
    std::vector<std::pair<SpectrumPoint, SpectrumPoint>> next;
    for (const auto& [p, q] : out.pairs) {
      for (auto& e : extensions(m, p)) {
        SpectrumPoint r = q;
        ++r.level;
        if (p.is_full()) {
          if (e.is_full()) {
            r.word.push_back(e.word.back());
          } else {
            r.boundary = e.boundary;
          }
        }
        next.emplace_back(std::move(e), std::move(r));
      }
    }
    std::sort(next.begin(), next.end());
    out.pairs = std::move(next);
    out.source = lvl + 1;
  }
  return out;
}

PartialInjection compose(const MarkovModel& m, const PartialInjection& f,
                         const PartialInjection& g) {
  if (f.empty() || g.empty()) return {};
  const std::int64_t t = static_cast<std::int64_t>(g.source) + g.shift;
  const std::int64_t top = std::max<std::int64_t>(t, f.source);
  const PartialInjection gg = raise(m, g, static_cast<std::uint32_t>(g.source + (top - t)));
  const PartialInjection ff = raise(m, f, static_cast<std::uint32_t>(top));
  PartialInjection out;
  out.source = gg.source;
  out.shift = f.shift + g.shift;
  for (const auto& [p, q] : gg.pairs) {
    auto it = std::lower_bound(ff.pairs.begin(), ff.pairs.end(), q,
                               [](const auto& pr, const SpectrumPoint& x) { return pr.first < x; });
    if (it != ff.pairs.end() && it->first == q) out.pairs.emplace_back(p, it->second);
  }
  return out;
}

PartialInjection inverse(const PartialInjection& f) {
  PartialInjection out;
  out.source = static_cast<std::uint32_t>(f.source + f.shift);
  out.shift = -f.shift;
  for (const auto& [p, q] : f.pairs) out.pairs.emplace_back(q, p);
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

bool same_map(const MarkovModel& m, const PartialInjection& f, const PartialInjection& g) {
  if (f.empty() || g.empty()) return f.empty() && g.empty();
  if (f.shift != g.shift) return false;
  const std::uint32_t n = std::max(f.source, g.source);
  return raise(m, f, n).pairs == raise(m, g, n).pairs;
}

std::uint32_t min_evaluation_level(const Monomial& a) {
  return static_cast<std::uint32_t>(std::max(a.alpha().size(), a.beta().size())) + a.h().level();
}

PartialInjection evaluate(const Monomial& a, std::uint32_t n) {
  if (n < min_evaluation_level(a)) {
    fail(ErrorKind::parameter, "evaluation level " + std::to_string(n) + " is below " +
                                   std::to_string(min_evaluation_level(a)));
  }
  if (!a.model()->graph().is_finite()) {
    fail(ErrorKind::unsupported, "evaluation needs a finite graph");
  }
  PartialInjection out;
  out.source = n;
  out.shift = static_cast<std::int64_t>(a.alpha().size()) - static_cast<std::int64_t>(a.beta().size());
  if (a.is_zero()) return out;
  const auto w_level = static_cast<std::uint32_t>(n - a.beta().size());
  for (const auto& w : members_at(a.h(), w_level)) {
    out.pairs.emplace_back(concat(a.beta(), w), concat(a.alpha(), w));
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

bool CkReport::all_passed() const {
  return std::all_of(relations.begin(), relations.end(), [](const auto& r) { return r.passed; });
}

CkReport verify_ck_relations(const ModelPtr& m, Vertex window) {
  const Graph& g = m->graph();
  CkReport rep;
  rep.dense = m->dense_domain();
  rep.partial = !g.is_finite();
  std::vector<Vertex> verts;
  if (g.is_finite()) {
    for (Vertex v = 1; v <= g.size(); ++v) verts.push_back(v);
  } else {
    if (window == 0) fail(ErrorKind::parameter, "the vertex window must be positive");
    for (Vertex v = 1; v <= window; ++v) verts.push_back(v);
  }

  std::map<Vertex, Monomial> p, q;
  for (Vertex i : verts) {
    if (g.is_finite()) {
      const Monomial s = generator(m, i);
      p.emplace(i, compose(s, adjoint(s)));
      q.emplace(i, compose(adjoint(s), s));
    } else {
      auto [u, v] = base_sets(m, i);
      p.emplace(i, Monomial({}, u, {}));
      q.emplace(i, Monomial({}, v, {}));
    }
  }
  const Monomial zero = Monomial::zero(m);

  RelationCheck ck1, ck2, ck3, ck4;
  ck1.name = "CK1";
  ck2.name = "CK2";
  ck3.name = "CK3";
  ck4.name = "CK4";
  for (Vertex i : verts) {
    for (Vertex j : verts) {
      if (i < j) {
        ++ck1.cases;
        if (ck1.passed && !(compose(q.at(i), q.at(j)) == compose(q.at(j), q.at(i)))) {
          ck1.passed = false;
          ck1.witness = "Q_" + std::to_string(i) + " Q_" + std::to_string(j) + " != Q_" +
                        std::to_string(j) + " Q_" + std::to_string(i);
        }
        ++ck2.cases;
        if (ck2.passed && !compose(p.at(i), p.at(j)).is_zero()) {
          ck2.passed = false;
          ck2.witness = "P_" + std::to_string(i) + " P_" + std::to_string(j) + " != 0";
        }
      }
      ++ck3.cases;
      const Monomial lhs = compose(p.at(j), q.at(i));
      if (ck3.passed && !(lhs == (g.edge(i, j) ? p.at(j) : zero))) {
        ck3.passed = false;
        ck3.witness = "P_" + std::to_string(j) + " Q_" + std::to_string(i) + " != " +
                      (g.edge(i, j) ? "P_" + std::to_string(j) : std::string("0"));
      }
    }
  }

  std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>> samples;
  if (g.is_finite() && verts.size() <= 6) {
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < verts.size(); ++k) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<Vertex> e, f;
      std::uint64_t c = code;
      for (Vertex v : verts) {
        if (c % 3 == 1) e.push_back(v);
        if (c % 3 == 2) f.push_back(v);
        c /= 3;
      }
      samples.emplace_back(std::move(e), std::move(f));
    }
  } else {
    samples.emplace_back();
    for (Vertex i : verts) {
      samples.push_back({{i}, {}});
      samples.push_back({{}, {i}});
    }
    for (Vertex i : verts) {
      for (Vertex j : verts) {
        if (i < j) {
          samples.push_back({{i, j}, {}});
          samples.push_back({{}, {i, j}});
        }
        if (i != j) samples.push_back({{i}, {j}});
      }
    }
  }
  for (const auto& [e, f] : samples) {
    const Ck4Result r = ck4_identity(m, e, f);
    if (r.status == Ck4Result::Status::not_finitely_supported) {
      ++rep.ck4_unsupported;
      continue;
    }
    ++ck4.cases;
    if (ck4.passed && r.status == Ck4Result::Status::fails) {
      ck4.passed = false;
      ck4.witness = "(" + format_point(*m, *r.witness) + ")";
      ck4.context = "E=" + format_ids(e) + ", F=" + format_ids(f);
    }
  }
  rep.relations = {ck1, ck2, ck3, ck4};
  const bool ck123 = ck1.passed && ck2.passed && ck3.passed;
  rep.consistent = rep.dense ? rep.all_passed() : (ck123 && !ck4.passed);
  return rep;
}

std::vector<std::vector<SpectrumPoint>> rn_partition(const MarkovModel& m, std::uint32_t big_n,
                                                     std::uint32_t n) {
  if (!m.graph().is_finite()) fail(ErrorKind::unsupported, "R_N partitions need a finite graph");
  if (n < big_n) fail(ErrorKind::parameter, "level n must be at least N");
  // T^k x = T^k y forces equal k-fold tails; on a truncated point T can only
  // be applied |w| times, hence k = min(N, |w|).
  using Key = std::tuple<std::size_t, Word, std::optional<std::uint32_t>>;
  std::map<Key, std::vector<SpectrumPoint>> classes;
  for (const auto& p : spectrum_level(m, n).points) {
    const std::size_t k = p.is_full() ? big_n : std::min<std::size_t>(big_n, p.word.size());
    Key key{k, Word(p.word.begin() + static_cast<std::ptrdiff_t>(k), p.word.end()), p.boundary};
    classes[key].push_back(p);
  }
  std::vector<std::vector<SpectrumPoint>> out;
  for (auto& [key, pts] : classes) out.push_back(std::move(pts));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace symdyn
