#include "symdyn/sse.hpp"

#include <algorithm>
#include <functional>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

void require_square_nonneg(const IntMatrix& a, const char* name) {
  if (!a.is_square() || a.rows() == 0) {
    fail(ErrorKind::validation, std::string(name) + " must be a nonempty square matrix");
  }
  if (!a.is_nonnegative()) fail(ErrorKind::validation, std::string(name) + " has a negative entry");
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= q * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

std::uint64_t small(const BigInt& x, const char* what) {
  if (sgn(x) < 0 || !x.fits_ulong_p() || x.get_ui() > 100000) {
    fail(ErrorKind::unsupported, std::string(what) + " entry too large to expand into edges");
  }
  return x.get_ui();
}

void check_path(const std::vector<Edge>& edges, const EdgePath& p, const char* graph) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] >= edges.size()) {
      fail(ErrorKind::validation, std::string("unknown edge id ") + std::to_string(p[k]) +
                                      " in a path of " + graph);
    }
    if (k > 0 && edges[p[k - 1]].target != edges[p[k]].source) {
      fail(ErrorKind::validation, std::string("edges ") + std::to_string(k - 1) + " and " +
                                      std::to_string(k) + " of the path do not meet in " + graph);
    }
  }
  if (p.size() < 2) fail(ErrorKind::parameter, "the path needs at least two edges");
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out;
  out.d = m;
  out.u = IntMatrix::identity(m.rows());
  out.v = IntMatrix::identity(m.cols());
  IntMatrix& d = out.d;
  const std::size_t r = m.rows(), c = m.cols(), len = std::min(r, c);

  for (std::size_t t = 0; t < len; ++t) {
    while (true) {
      // Smallest nonzero |entry| of the trailing block becomes the pivot.
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i) {
        for (std::size_t j = t; j < c; ++j) {
          if (sgn(d(i, j)) != 0 && (pi == r || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == r) break;
      if (pi != t) {
        swap_rows(d, t, pi);
        swap_rows(out.u, t, pi);
      }
      if (pj != t) {
        swap_cols(d, t, pj);
        swap_cols(out.v, t, pj);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        add_row(d, i, t, q);
        add_row(out.u, i, t, q);
        if (sgn(d(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        add_col(d, j, t, q);
        add_col(out.v, j, t, q);
        if (sgn(d(t, j)) != 0) clean = false;
      }
      if (!clean) continue;
      // The pivot must divide the whole trailing block.
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i) {
        for (std::size_t j = t + 1; j < c; ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == r) break;
      add_row(d, t, bad, BigInt(-1));
      add_row(out.u, t, bad, BigInt(-1));
    }
    if (sgn(d(t, t)) < 0) {
      for (std::size_t j = 0; j < c; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < r; ++j) out.u(t, j) = -out.u(t, j);
    }
    out.factors.push_back(d(t, t));
  }
  return out;
}

BowenFranks bowen_franks(const IntMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::validation, "Bowen-Franks needs a square matrix");
  const IntMatrix m = IntMatrix::identity(a.rows()) - a;
  return {smith_normal_form(m).factors, determinant(m)};
}

std::string format_group(const std::vector<BigInt>& factors) {
  // free part first
  std::vector<std::string> parts;
  for (const auto& f : factors) {
    if (sgn(f) == 0) parts.insert(parts.begin(), "Z");
  }
  for (const auto& f : factors) {
    if (sgn(f) != 0 && f != 1) parts.push_back("Z/" + f.get_str());
  }
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ⊕ ") + p;
  return out.empty() ? "trivial" : out;
}

Polynomial charpoly(const IntMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::validation, "characteristic polynomial needs a square matrix");
  const std::size_t n = a.rows();
  std::vector<BigInt> c(n + 1);
  c[n] = 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    BigInt t = trace(a * m);
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), k);
    c[n - k] = -t;
  }
  return {c};
}

Polynomial charpoly_nonzero_part(const IntMatrix& a) {
  Polynomial p = charpoly(a);
  std::size_t k = 0;
  while (k + 1 < p.coeffs.size() && sgn(p.coeffs[k]) == 0) ++k;
  p.coeffs.erase(p.coeffs.begin(), p.coeffs.begin() + static_cast<std::ptrdiff_t>(k));
  return p;
}

BigInt evaluate(const Polynomial& p, const BigInt& x) {
  BigInt acc = 0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string format_polynomial(const Polynomial& p) {
  std::string out;
  for (std::size_t d = p.coeffs.size(); d-- > 0;) {
    const BigInt& c = p.coeffs[d];
    if (sgn(c) == 0) continue;
    const BigInt mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (mag != 1 || d == 0) out += mag.get_str();
    if (d >= 1) out += "x";
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out.empty() ? "0" : out;
}

bool verify_elementary(const IntMatrix& a, const IntMatrix& r, const IntMatrix& s,
                       const IntMatrix& b) {
  if (!a.is_square() || !b.is_square() || r.rows() != a.rows() || r.cols() != b.rows() ||
      s.rows() != b.rows() || s.cols() != a.rows()) {
    fail(ErrorKind::validation, "shape mismatch: need A n x n, R n x m, S m x n, B m x m");
  }
  if (!r.is_nonnegative() || !s.is_nonnegative()) {
    fail(ErrorKind::validation, "R and S must be nonnegative");
  }
  return r * s == a && s * r == b;
}

LagCheck verify_shift_equivalence(const IntMatrix& a, const IntMatrix& b, const IntMatrix& r,
                                  const IntMatrix& s, std::uint64_t lag) {
  if (lag == 0) fail(ErrorKind::parameter, "the lag must be at least 1");
  if (!a.is_square() || !b.is_square() || r.rows() != a.rows() || r.cols() != b.rows() ||
      s.rows() != b.rows() || s.cols() != a.rows()) {
    fail(ErrorKind::validation, "shape mismatch: need A n x n, R n x m, S m x n, B m x m");
  }
  if (!r.is_nonnegative() || !s.is_nonnegative()) {
    fail(ErrorKind::validation, "R and S must be nonnegative");
  }
  LagCheck out;
  out.ar_rb = a * r == r * b;
  out.sa_bs = s * a == b * s;
  out.rs_ak = r * s == power(a, lag);
  out.sr_bk = s * r == power(b, lag);
  return out;
}

ChainCheck verify_chain(const IntMatrix& a, const IntMatrix& b,
                        const std::vector<ElementaryPair>& chain) {
  ChainCheck out;
  out.steps = chain.size();
  IntMatrix cur = a;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const auto& [r, s] = chain[k];
    if (r.rows() != cur.rows() || s.cols() != cur.rows() || r.cols() != s.rows()) {
      out.failed_step = k;
      out.reason = "shape mismatch";
      return out;
    }
    if (!r.is_nonnegative() || !s.is_nonnegative()) {
      out.failed_step = k;
      out.reason = "negative entry";
      return out;
    }
    if (!(r * s == cur)) {
      out.failed_step = k;
      out.reason = "RS differs from the current matrix";
      return out;
    }
    cur = s * r;
  }
  if (!(cur == b)) {
    out.reason = "the chain ends at " + format_matrix(cur) + ", not B";
    return out;
  }
  out.ok = true;
  return out;
}

InvariantComparison compare_invariants(const IntMatrix& a, const IntMatrix& b) {
  const BowenFranks fa = bowen_franks(a), fb = bowen_franks(b);
  InvariantComparison out;
  out.det_equal = fa.det == fb.det;
  // Factor lists of different lengths agree when they differ by units only.
  auto nontrivial = [](std::vector<BigInt> f) {
    f.erase(std::remove(f.begin(), f.end(), BigInt(1)), f.end());
    return f;
  };
  out.bowen_franks_equal = nontrivial(fa.factors) == nontrivial(fb.factors);
  out.charpoly_equal = charpoly_nonzero_part(a) == charpoly_nonzero_part(b);
  return out;
}

SearchResult search_elementary(const IntMatrix& a, const IntMatrix& b,
                               std::uint64_t inner_dim_bound, std::uint64_t entry_bound) {
  if (inner_dim_bound == 0 || entry_bound == 0) {
    fail(ErrorKind::parameter, "search bounds must be positive");
  }
  require_square_nonneg(a, "A");
  require_square_nonneg(b, "B");
  SearchResult out;
  const std::size_t n = a.rows(), m = b.rows();
  if (m > inner_dim_bound) {
    out.inner_dim_too_large = true;
    return out;
  }
  if (!compare_invariants(a, b).all()) {
    out.screened_out = true;
    return out;
  }

  // Nonzero rows of B force nonzero rows of S, so row sums of R are bounded
  // by those of A; dually for columns.
  bool b_rows_nonzero = true, a_cols_nonzero = true;
  std::vector<BigInt> row_a(n), col_b(m);
  for (std::size_t i = 0; i < m; ++i) {
    BigInt s = 0;
    for (std::size_t j = 0; j < m; ++j) s += b(i, j);
    if (sgn(s) == 0) b_rows_nonzero = false;
  }
  for (std::size_t j = 0; j < n; ++j) {
    BigInt s = 0;
    for (std::size_t i = 0; i < n; ++i) s += a(i, j);
    if (sgn(s) == 0) a_cols_nonzero = false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_a[i] += a(i, j);
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) col_b[j] += b(i, j);
  }

  const auto bound = static_cast<long>(entry_bound);

  // Lexicographically first S (row-major) with RS = A and SR = B.
  auto find_s = [&](const IntMatrix& r) -> std::optional<IntMatrix> {
    std::vector<std::vector<std::vector<long>>> cand(n);
    std::vector<long> x(m, 0);
    for (std::size_t j = 0; j < n; ++j) {
      std::function<void(std::size_t)> gen = [&](std::size_t k) {
        if (k == m) {
          for (std::size_t i = 0; i < n; ++i) {
            BigInt t = 0;
            for (std::size_t l = 0; l < m; ++l) t += r(i, l) * x[l];
            if (t != a(i, j)) return;
          }
          cand[j].push_back(x);
          return;
        }
        for (long v = 0; v <= bound; ++v) {
          x[k] = v;
          gen(k + 1);
        }
      };
      gen(0);
      if (cand[j].empty()) return std::nullopt;
    }
    IntMatrix s(m, n);
    std::vector<std::vector<std::size_t>> alive(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < cand[j].size(); ++k) alive[j].push_back(k);
    }
    std::function<bool(std::size_t)> fill = [&](std::size_t pos) -> bool {
      if (pos == m * n) return true;
      const std::size_t row = pos / n, col = pos % n;
      std::vector<long> values;
      for (std::size_t k : alive[col]) values.push_back(cand[col][k][row]);
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      const auto saved = alive[col];
      for (long v : values) {
        alive[col].clear();
        for (std::size_t k : saved) {
          if (cand[col][k][row] == v) alive[col].push_back(k);
        }
        s(row, col) = v;
        bool row_ok = true;
        if (col + 1 == n) {
          for (std::size_t j = 0; j < m && row_ok; ++j) {
            BigInt t = 0;
            for (std::size_t l = 0; l < n; ++l) t += s(row, l) * r(l, j);
            row_ok = t == b(row, j);
          }
        }
        if (row_ok && fill(pos + 1)) return true;
      }
      alive[col] = saved;
      return false;
    };
    if (!fill(0)) return std::nullopt;
    return s;
  };

  IntMatrix r(n, m);
  std::vector<BigInt> row_sum(n), col_sum(m);
  std::function<bool(std::size_t)> enumerate = [&](std::size_t pos) -> bool {
    if (pos == n * m) {
      ++out.candidates;
      if (auto s = find_s(r)) {
        out.pair = ElementaryPair{r, *s};
        return true;
      }
      return false;
    }
    const std::size_t i = pos / m, j = pos % m;
    for (long v = 0; v <= bound; ++v) {
      if (b_rows_nonzero && row_sum[i] + v > row_a[i]) break;
      if (a_cols_nonzero && col_sum[j] + v > col_b[j]) break;
      r(i, j) = v;
      row_sum[i] += v;
      col_sum[j] += v;
      const bool found = enumerate(pos + 1);
      row_sum[i] -= v;
      col_sum[j] -= v;
      if (found) return true;
    }
    r(i, j) = 0;
    return false;
  };
  enumerate(0);
  return out;
}

std::vector<Edge> edge_list(const IntMatrix& m) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::uint64_t k = small(m(i, j), "matrix");
      for (std::uint64_t c = 1; c <= k; ++c) out.push_back({i + 1, j + 1, c});
    }
  }
  if (out.size() > 1000000) fail(ErrorKind::unsupported, "too many edges");
  return out;
}

std::string format_edge(char name, const Edge& e) {
  return std::string(1, name) + "(" + std::to_string(e.source) + "," + std::to_string(e.target) +
         "," + std::to_string(e.copy) + ")";
}

ConjugacyPair build_conjugacy(const IntMatrix& r, const IntMatrix& s, const IntMatrix& a,
                              const IntMatrix& b) {
  if (!verify_elementary(a, r, s, b)) {
    fail(ErrorKind::validation, "(R,S) is not an elementary equivalence between A and B");
  }
  ConjugacyPair c{a, b, r, s, edge_list(a), edge_list(b), edge_list(r), edge_list(s), {}, {}, {}, {}};
  auto index = [](const std::vector<Edge>& edges) {
    std::map<Edge, std::size_t> idx;
    for (std::size_t k = 0; k < edges.size(); ++k) idx.emplace(edges[k], k);
    return idx;
  };
  const auto ri = index(c.er), si = index(c.es);
  const std::size_t n = a.rows(), m = b.rows();

  // Paths r.s from i to j: by middle vertex, then R-copy, then S-copy.
  for (const Edge& e : c.ea) {
    std::uint64_t left = e.copy;
    for (std::size_t k = 1; k <= m && left; ++k) {
      const std::uint64_t nr = small(r(e.source - 1, k - 1), "R");
      const std::uint64_t ns = small(s(k - 1, e.target - 1), "S");
      if (left > nr * ns) {
        left -= nr * ns;
        continue;
      }
      const std::uint64_t rc = (left - 1) / ns + 1, sc = (left - 1) % ns + 1;
      c.alpha.emplace_back(ri.at({e.source, k, rc}), si.at({k, e.target, sc}));
      left = 0;
    }
  }
  // Paths s.r from k to l: by middle vertex, then S-copy, then R-copy.
  for (const Edge& e : c.eb) {
    std::uint64_t left = e.copy;
    for (std::size_t i = 1; i <= n && left; ++i) {
      const std::uint64_t ns = small(s(e.source - 1, i - 1), "S");
      const std::uint64_t nr = small(r(i - 1, e.target - 1), "R");
      if (left > ns * nr) {
        left -= ns * nr;
        continue;
      }
      const std::uint64_t sc = (left - 1) / nr + 1, rc = (left - 1) % nr + 1;
      c.beta.emplace_back(si.at({e.source, i, sc}), ri.at({i, e.target, rc}));
      left = 0;
    }
  }
  for (std::size_t k = 0; k < c.alpha.size(); ++k) c.alpha_inv.emplace(c.alpha[k], k);
  for (std::size_t k = 0; k < c.beta.size(); ++k) c.beta_inv.emplace(c.beta[k], k);
  if (c.alpha.size() != c.ea.size() || c.beta.size() != c.eb.size() ||
      c.alpha_inv.size() != c.alpha.size() || c.beta_inv.size() != c.beta.size()) {
    fail(ErrorKind::domain, "edge bijection construction failed");
  }
  return c;
}

EdgePath apply_phi(const ConjugacyPair& c, const EdgePath& p) {
  check_path(c.ea, p, "the A-graph");
  EdgePath out;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    out.push_back(c.beta_inv.at({c.alpha[p[k]].second, c.alpha[p[k + 1]].first}));
  }
  return out;
}

EdgePath apply_psi(const ConjugacyPair& c, const EdgePath& p) {
  check_path(c.eb, p, "the B-graph");
  EdgePath out;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    out.push_back(c.alpha_inv.at({c.beta[p[k]].second, c.beta[p[k + 1]].first}));
  }
  return out;
}

std::vector<EdgePath> edge_paths(const std::vector<Edge>& edges, std::size_t length) {
  std::vector<EdgePath> out;
  if (length == 0) return out;
  EdgePath cur;
  std::function<void()> dfs = [&] {
    if (cur.size() == length) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (!cur.empty() && edges[cur.back()].target != edges[k].source) continue;
      cur.push_back(k);
      dfs();
      cur.pop_back();
    }
  };
  dfs();
  return out;
}

DimensionGroup::DimensionGroup(IntMatrix a) : a_(std::move(a)) {
  require_square_nonneg(a_, "the base matrix");
}

void DimensionGroup::check(const DimGroupElement& x) const {
  if (x.v.size() != a_.rows()) {
    fail(ErrorKind::validation, "element of dimension " + std::to_string(x.v.size()) +
                                    " over a base matrix of dimension " +
                                    std::to_string(a_.rows()));
  }
}

std::vector<BigInt> DimensionGroup::lift(const DimGroupElement& x, std::uint64_t level) const {
  std::vector<BigInt> v = x.v;
  for (std::uint64_t l = x.level; l < level; ++l) v = a_ * v;
  return v;
}

bool DimensionGroup::equal(const DimGroupElement& x, const DimGroupElement& y) const {
  check(x);
  check(y);
  const std::uint64_t level = std::max(x.level, y.level);
  std::vector<BigInt> d = lift(x, level);
  const std::vector<BigInt> w = lift(y, level);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= w[i];
  // ker A^p is stable from p = dim on.
  d = power(a_, a_.rows()) * d;
  return std::all_of(d.begin(), d.end(), [](const BigInt& t) { return sgn(t) == 0; });
}

DimGroupElement DimensionGroup::add(const DimGroupElement& x, const DimGroupElement& y) const {
  check(x);
  check(y);
  const std::uint64_t level = std::max(x.level, y.level);
  DimGroupElement out{lift(x, level), level};
  const std::vector<BigInt> w = lift(y, level);
  for (std::size_t i = 0; i < w.size(); ++i) out.v[i] += w[i];
  return out;
}

DimGroupElement DimensionGroup::negate(const DimGroupElement& x) const {
  check(x);
  DimGroupElement out = x;
  for (auto& t : out.v) t = -t;
  return out;
}

DimGroupElement DimensionGroup::tau(const DimGroupElement& x) const {
  check(x);
  return {a_ * x.v, x.level};
}

DimGroupElement DimensionGroup::tau_inverse(const DimGroupElement& x) const {
  check(x);
  return {x.v, x.level + 1};
}

Positivity DimensionGroup::positive_bounded(const DimGroupElement& x, std::uint64_t k_max) const {
  check(x);
  std::vector<BigInt> w = x.v;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    if (std::all_of(w.begin(), w.end(), [](const BigInt& t) { return sgn(t) >= 0; })) {
      return {Positivity::Kind::positive, k};
    }
    if (std::all_of(w.begin(), w.end(), [](const BigInt& t) { return sgn(t) <= 0; })) {
      return {Positivity::Kind::negative, k};
    }
    w = a_ * w;
  }
  return {Positivity::Kind::undecided, k_max};
}

std::string to_string(Positivity::Kind k) {
  switch (k) {
    case Positivity::Kind::positive:
      return "positive";
    case Positivity::Kind::negative:
      return "negative";
    case Positivity::Kind::undecided:
      break;
  }
  return "undecided";
}

}  // namespace symdyn
