#include "symdyn/report.hpp"

#include <algorithm>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

std::string word_text(const Word& w) { return w.empty() ? "∅" : format_word(w); }

std::string point_text(const MarkovModel& m, const SpectrumPoint& p) { return format_point(m, p); }

std::string presentation(const Graph& g) {
  return g.is_finite() ? "finite" : g.is_block() ? "block" : "banded";
}

void flatten(const std::string& path, const Json& v, std::string& out) {
  const std::string head = path.empty() ? "" : path + ": ";
  if (v.is_object()) {
    if (v.empty() && !path.empty()) out += head + "{}\n";
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(path.empty() ? it.key() : path + "." + it.key(), it.value(), out);
    }
    return;
  }
  if (v.is_array()) {
    if (v.empty()) {
      out += head + "[]\n";
      return;
    }
    if (std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_string(); })) {
      for (const auto& e : v) out += head + e.get<std::string>() + "\n";
      return;
    }
    if (std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); })) {
      out += head + v.dump() + "\n";
      return;
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
      flatten(path + "[" + std::to_string(k) + "]", v[k], out);
    }
    return;
  }
  if (v.is_string()) {
    out += head + v.get<std::string>() + "\n";
  } else if (v.is_null()) {
    out += head + "none\n";
  } else {
    out += head + v.dump() + "\n";
  }
}

Json points_json(const MarkovModel& m, const std::vector<SpectrumPoint>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(point_text(m, p));
  return out;
}

Json invariants_of(const IntMatrix& a) {
  const BowenFranks bf = bowen_franks(a);
  Json factors = Json::array();
  for (const auto& f : bf.factors) factors.push_back(bigint_to_json(f));
  return {{"bowen_franks", factors},
          {"det", bigint_to_json(bf.det)},
          {"group", format_group(bf.factors)},
          {"charpoly", format_polynomial(charpoly(a))},
          {"charpoly_nonzero", format_polynomial(charpoly_nonzero_part(a))}};
}

Json vector_json(const std::vector<BigInt>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(bigint_to_json(x));
  return out;
}

Json element_json(const DimGroupElement& x) { return {{"v", vector_json(x.v)}, {"level", x.level}}; }

std::string path_text(char name, const std::vector<Edge>& edges, const EdgePath& p) {
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) out += (k ? " " : "") + format_edge(name, edges[p[k]]);
  return out;
}

}  // namespace

std::string render_json(const Json& body) { return body.dump(2, ' ', false) + "\n"; }

std::string render_text(const Json& body) {
  std::string out;
  flatten("", body, out);
  return out;
}

Json clopen_to_json(const ClopenSet& a) {
  Json out = {{"level", a.level()}, {"members", points_json(*a.model(), a.members())}};
  if (a.complemented()) out["complement"] = true;
  return out;
}

Report classify_report(const Graph& g) {
  const ClassificationReport c = classify(g);
  Report r;
  r.body["presentation"] = presentation(g);
  r.body["no_zero_rows"] = c.no_zero_rows;
  if (c.zero_row) r.body["zero_row"] = *c.zero_row;
  Json l = {{"holds", c.condition_L.holds}};
  if (c.condition_L.witness) l["witness"] = format_word(c.condition_L.witness->vertices);
  r.body["condition_L"] = l;
  Json irr = {{"holds", c.irreducible.holds}};
  if (c.irreducible.witness) {
    irr["witness"] = {c.irreducible.witness->first, c.irreducible.witness->second};
  }
  r.body["irreducible"] = irr;
  Json reach = {{"holds", c.reaches_loop.holds}};
  if (c.reaches_loop.witness) reach["witness"] = *c.reaches_loop.witness;
  r.body["every_vertex_reaches_loop"] = reach;
  r.body["simple"] = to_string(c.simple);
  r.body["purely_infinite"] = to_string(c.purely_infinite);
  r.passed = c.simple == Verdict::criteria_met && c.purely_infinite == Verdict::criteria_met;
  return r;
}

Report jset_report(const Graph& g, const ModelPtr& m) {
  Report r;
  Json ja = Json::array();
  for (const auto& j : compute_JA(g)) ja.push_back(format_pattern(j));
  r.body["presentation"] = presentation(g);
  r.body["JA"] = ja;
  const bool empty_in = m->empty_in_ja();
  r.body["empty_in_JA"] = empty_in;
  r.body["unital_case"] = !empty_in;
  Json fam = Json::array();
  for (const auto& j : m->boundary()) fam.push_back(format_pattern(j));
  r.body["boundary"] = fam;
  r.body["dense_domain"] = m->dense_domain();
  return r;
}

Report spectrum_report(const ModelPtr& m, std::uint32_t level, std::optional<Vertex> window) {
  const Spectrum s = spectrum_level(*m, level, window);
  Report r;
  r.body["level"] = level;
  r.body["count"] = s.points.size();
  r.body["partial"] = s.partial;
  r.body["points"] = points_json(*m, s.points);
  if (level > 0) {
    const Spectrum below = spectrum_level(*m, level - 1, window);
    std::vector<SpectrumPoint> image;
    for (const auto& p : s.points) image.push_back(project_level(p));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    const bool into = std::includes(below.points.begin(), below.points.end(), image.begin(),
                                    image.end());
    const bool onto = into && image.size() == below.points.size();
    r.body["projection"] = {{"into", into}, {"onto", onto}};
    r.passed = into && (onto || s.partial);
  }
  return r;
}

Report ck_report(const ModelPtr& m, Vertex window) {
  const CkReport ck = verify_ck_relations(m, window);
  Report r;
  Json rel = Json::array();
  for (const auto& c : ck.relations) {
    Json e = {{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"cases", c.cases}};
    if (!c.passed) e["witness"] = c.witness;
    if (!c.context.empty()) e["context"] = c.context;
    rel.push_back(std::move(e));
  }
  r.body["relations"] = rel;
  r.body["dense_domain"] = ck.dense;
  r.body["consistent"] = ck.consistent;
  r.body["partial"] = ck.partial;
  if (ck.partial) {
    r.body["window"] = window;
    r.body["ck4_not_finitely_supported"] = ck.ck4_unsupported;
  }
  r.passed = ck.all_passed();
  return r;
}

Report freeness_report(const ModelPtr& m, std::optional<std::pair<std::uint32_t, std::uint32_t>> pair,
                       std::uint32_t depth) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  if (pair) {
    pairs.push_back(*pair);
  } else {
    for (std::uint32_t n = 1; n <= 3; ++n) {
      for (std::uint32_t k = 0; k < n; ++k) pairs.emplace_back(k, n);
    }
  }
  Report r;
  Json scans = Json::array();
  for (auto [a, b] : pairs) {
    const FreenessScan s = essential_freeness_scan(*m, a, b, depth);
    Json e = {{"m", a}, {"n", b}, {"violation", s.violation}};
    if (s.cylinder) e["cylinder"] = format_word(*s.cylinder);
    if (s.violation) r.passed = false;
    scans.push_back(std::move(e));
  }
  r.body["depth"] = depth;
  r.body["scans"] = scans;
  r.body["condition_L"] = condition_L(m->graph()).holds;
  return r;
}

Report periodic_report(const ModelPtr& m, std::uint32_t max_period, std::uint32_t max_preperiod) {
  const auto records = periodic_points(*m, max_period, max_preperiod);
  Report r;
  Json recs = Json::array();
  std::uint64_t isolated = 0;
  for (const auto& p : records) {
    recs.push_back({{"preperiod", p.preperiod},
                    {"period", p.period},
                    {"prefix", word_text(p.prefix)},
                    {"loop", format_word(p.loop.vertices)},
                    {"isolated", p.isolated}});
    if (p.isolated) ++isolated;
  }
  const auto& fg = m->graph().as_finite();
  IntMatrix a(fg.n, fg.n);
  for (std::size_t i = 0; i < fg.n; ++i) {
    for (std::size_t j = 0; j < fg.n; ++j) a(i, j) = fg.adj[i * fg.n + j];
  }
  Json counts = Json::array();
  bool bridge = true;
  for (std::uint32_t k = 1; k <= max_period; ++k) {
    const std::uint64_t c = count_period_dividing(records, k);
    const BigInt t = trace(power(a, k));
    counts.push_back({{"k", k}, {"count", c}, {"trace", bigint_to_json(t)}});
    if (t != BigInt(std::to_string(c))) bridge = false;
  }
  r.body["records"] = recs;
  r.body["period_counts"] = counts;
  r.body["isolated"] = isolated;
  r.body["trace_bridge"] = bridge;
  r.passed = isolated == 0 && bridge;
  return r;
}

Report rn_report(const ModelPtr& m, std::uint32_t big_n, std::uint32_t level) {
  const auto classes = rn_partition(*m, big_n, level);
  Report r;
  Json cls = Json::array(), sizes = Json::array();
  for (const auto& c : classes) {
    cls.push_back(points_json(*m, c));
    sizes.push_back(c.size());
  }
  r.body["N"] = big_n;
  r.body["level"] = level;
  r.body["class_count"] = classes.size();
  r.body["classes"] = cls;
  r.body["sizes"] = sizes;
  return r;
}

Report monomial_report(const ModelPtr& m, const std::string& expr, std::uint32_t level) {
  const Monomial a = parse_monomial(m, expr);
  Report r;
  r.body["expression"] = expr;
  r.body["normal_form"] = format_monomial(a);
  r.body["zero"] = a.is_zero();
  r.body["condition_L"] = condition_L(m->graph()).holds;
  if (a.is_zero()) {
    r.body["cocycle"] = nullptr;
    return r;
  }
  r.body["alpha"] = word_text(a.alpha());
  r.body["beta"] = word_text(a.beta());
  r.body["h"] = clopen_to_json(a.h());
  r.body["cocycle"] = cocycle(a);
  if (m->graph().is_finite()) {
    const std::uint32_t n = level == 0 ? min_evaluation_level(a) : level;
    const PartialInjection f = evaluate(a, n);
    Json pairs = Json::array();
    for (const auto& [p, q] : f.pairs) pairs.push_back(point_text(*m, p) + " -> " + point_text(*m, q));
    r.body["evaluation"] = {{"source_level", f.source},
                            {"target_level", static_cast<std::int64_t>(f.source) + f.shift},
                            {"pairs", pairs}};
  }
  return r;
}

Report sse_verify_report(const Certificate& c) {
  Report r;
  r.body["A"] = matrix_to_json(c.a);
  r.body["B"] = matrix_to_json(c.b);
  if (c.lag) {
    const auto& [rr, s] = c.chain.front();
    const LagCheck l = verify_shift_equivalence(c.a, c.b, rr, s, *c.lag);
    r.body["kind"] = "shift-equivalence";
    r.body["lag"] = *c.lag;
    r.body["identities"] = {{"AR=RB", l.ar_rb}, {"SA=BS", l.sa_bs}, {"RS=A^k", l.rs_ak}, {"SR=B^k", l.sr_bk}};
    r.body["verified"] = l.ok();
    r.passed = l.ok();
  } else if (c.chain.size() == 1) {
    const auto& [rr, s] = c.chain.front();
    const bool ok = verify_elementary(c.a, rr, s, c.b);
    r.body["kind"] = "elementary";
    r.body["identities"] = {{"A=RS", rr * s == c.a}, {"B=SR", s * rr == c.b}};
    r.body["verified"] = ok;
    r.passed = ok;
  } else {
    const ChainCheck ch = verify_chain(c.a, c.b, c.chain);
    r.body["kind"] = "strong-shift-equivalence";
    r.body["steps"] = ch.steps;
    r.body["verified"] = ch.ok;
    if (ch.failed_step) r.body["failed_step"] = *ch.failed_step + 1;
    if (!ch.reason.empty()) r.body["reason"] = ch.reason;
    r.passed = ch.ok;
  }
  const InvariantComparison inv = compare_invariants(c.a, c.b);
  r.body["invariants_agree"] = inv.all();
  return r;
}

Report sse_search_report(const IntMatrix& a, const IntMatrix& b, std::uint64_t inner_dim,
                         std::uint64_t entry_bound) {
  const SearchResult s = search_elementary(a, b, inner_dim, entry_bound);
  Report r;
  r.body["inner_dim_bound"] = inner_dim;
  r.body["entry_bound"] = entry_bound;
  r.body["found"] = s.pair.has_value();
  r.body["candidates"] = s.candidates;
  if (s.screened_out) {
    const InvariantComparison c = compare_invariants(a, b);
    r.body["screened_out"] = {{"det_equal", c.det_equal},
                              {"bowen_franks_equal", c.bowen_franks_equal},
                              {"charpoly_equal", c.charpoly_equal}};
  }
  if (s.inner_dim_too_large) r.body["inner_dim_too_large"] = true;
  if (s.pair) {
    r.body["R"] = matrix_to_json(s.pair->r);
    r.body["S"] = matrix_to_json(s.pair->s);
  }
  r.passed = s.pair.has_value();
  return r;
}

Report invariants_report(const Json& input, std::uint64_t k_max) {
  IntMatrix a;
  if (input.is_object() && input.contains("type")) {
    const Graph g = parse_graph(input);
    if (!g.is_finite()) fail(ErrorKind::unsupported, "invariants need a finite matrix");
    const auto& fg = g.as_finite();
    a = IntMatrix(fg.n, fg.n);
    for (std::size_t i = 0; i < fg.n; ++i) {
      for (std::size_t j = 0; j < fg.n; ++j) a(i, j) = fg.adj[i * fg.n + j];
    }
  } else {
    if (!input.is_object() || !input.contains("A")) {
      fail(ErrorKind::validation, "input: expected {\"A\": matrix} or a finite graph");
    }
    a = parse_matrix(input["A"], "input.A");
  }
  if (!a.is_square()) fail(ErrorKind::validation, "input.A: expected a square matrix");
  Report r;
  r.body = invariants_of(a);
  if (input.contains("B")) {
    const IntMatrix b = parse_matrix(input["B"], "input.B");
    if (!b.is_square()) fail(ErrorKind::validation, "input.B: expected a square matrix");
    const InvariantComparison c = compare_invariants(a, b);
    r.body["B"] = invariants_of(b);
    r.body["comparison"] = {{"det_equal", c.det_equal},
                            {"bowen_franks_equal", c.bowen_franks_equal},
                            {"charpoly_equal", c.charpoly_equal}};
    r.passed = c.all();
  }
  if (input.contains("elements")) {
    const DimensionGroup g(a);
    const Json& els = input["elements"];
    if (!els.is_array()) fail(ErrorKind::validation, "input.elements: expected a list");
    Json out = Json::array();
    for (std::size_t k = 0; k < els.size(); ++k) {
      const std::string p = "input.elements[" + std::to_string(k) + "]";
      if (!els[k].is_object() || !els[k].contains("v")) fail(ErrorKind::validation, p + ": missing 'v'");
      const IntMatrix row = parse_matrix(Json::array({els[k]["v"]}), p + ".v");
      DimGroupElement x;
      for (std::size_t i = 0; i < row.cols(); ++i) x.v.push_back(row(0, i));
      if (els[k].contains("level")) {
        if (!els[k]["level"].is_number_unsigned()) {
          fail(ErrorKind::validation, p + ".level: expected a nonnegative integer");
        }
        x.level = els[k]["level"].get<std::uint64_t>();
      }
      const Positivity pos = g.positive_bounded(x, k_max);
      out.push_back({{"element", element_json(x)},
                     {"tau", element_json(g.tau(x))},
                     {"positivity", {{"verdict", to_string(pos.kind)}, {"k", pos.k}}}});
    }
    r.body["dimension_group"] = out;
  }
  return r;
}

Report conjugacy_report(const Certificate& c, std::size_t max_length) {
  if (c.lag || c.chain.size() != 1) {
    fail(ErrorKind::validation, "conjugacy needs a single elementary pair {A,B,R,S}");
  }
  const auto& [rr, s] = c.chain.front();
  const ConjugacyPair cp = build_conjugacy(rr, s, c.a, c.b);
  Report r;
  Json alpha = Json::array(), beta = Json::array();
  for (std::size_t k = 0; k < cp.ea.size(); ++k) {
    alpha.push_back({{"edge", format_edge('a', cp.ea[k])},
                     {"path", format_edge('r', cp.er[cp.alpha[k].first]) + " " +
                                  format_edge('s', cp.es[cp.alpha[k].second])}});
  }
  for (std::size_t k = 0; k < cp.eb.size(); ++k) {
    beta.push_back({{"edge", format_edge('b', cp.eb[k])},
                    {"path", format_edge('s', cp.es[cp.beta[k].first]) + " " +
                                 format_edge('r', cp.er[cp.beta[k].second])}});
  }
  r.body["alpha"] = alpha;
  r.body["beta"] = beta;

  // psi.phi drops the first edge (T_A); phi.psi likewise on B-paths (T_B);
  // phi commutes with dropping the first edge.
  std::uint64_t n_a = 0, n_b = 0, n_int = 0;
  bool ok_a = true, ok_b = true, ok_int = true;
  Json failures = Json::array();
  for (std::size_t len = 3; len <= max_length; ++len) {
    for (const auto& p : edge_paths(cp.ea, len)) {
      ++n_a;
      const EdgePath img = apply_psi(cp, apply_phi(cp, p));
      if (img != EdgePath(p.begin() + 1, p.end() - 1)) {
        if (ok_a) failures.push_back("psi.phi on " + path_text('a', cp.ea, p));
        ok_a = false;
      }
      ++n_int;
      EdgePath phi = apply_phi(cp, p);
      phi.erase(phi.begin());
      if (apply_phi(cp, EdgePath(p.begin() + 1, p.end())) != phi) {
        if (ok_int) failures.push_back("intertwining on " + path_text('a', cp.ea, p));
        ok_int = false;
      }
    }
    for (const auto& p : edge_paths(cp.eb, len)) {
      ++n_b;
      const EdgePath img = apply_phi(cp, apply_psi(cp, p));
      if (img != EdgePath(p.begin() + 1, p.end() - 1)) {
        if (ok_b) failures.push_back("phi.psi on " + path_text('b', cp.eb, p));
        ok_b = false;
      }
    }
  }
  r.body["max_length"] = max_length;
  r.body["checks"] = {{"psi_phi_is_TA", {{"paths", n_a}, {"ok", ok_a}}},
                      {"phi_psi_is_TB", {{"paths", n_b}, {"ok", ok_b}}},
                      {"phi_intertwines_shift", {{"paths", n_int}, {"ok", ok_int}}}};
  if (!failures.empty()) r.body["failures"] = failures;
  r.passed = ok_a && ok_b && ok_int;
  return r;
}

}  // namespace symdyn
