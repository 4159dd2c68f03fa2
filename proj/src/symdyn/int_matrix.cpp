#include "symdyn/int_matrix.hpp"

#include <algorithm>
#include <utility>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

void require_square(const IntMatrix& a, const char* what) {
  if (!a.is_square()) fail(ErrorKind::validation, std::string(what) + " needs a square matrix");
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) {
      fail(ErrorKind::validation, "row " + std::to_string(i + 1) + " has " +
                                      std::to_string(rows[i].size()) + " entries, expected " +
                                      std::to_string(c));
    }
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::vector<BigInt>> big;
  for (const auto& r : rows) {
    std::vector<BigInt> row;
    for (auto x : r) row.emplace_back(static_cast<long>(x));
    big.push_back(std::move(row));
  }
  return from_rows(big);
}

bool IntMatrix::is_nonnegative() const {
  return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return sgn(x) >= 0; });
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return sgn(x) == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) {
    fail(ErrorKind::validation, "shape mismatch: " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " times " +
                                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::validation, "shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  }
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::validation, "shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  }
  return c;
}

std::vector<BigInt> operator*(const IntMatrix& a, const std::vector<BigInt>& v) {
  if (a.cols() != v.size()) fail(ErrorKind::validation, "shape mismatch: matrix times vector");
  std::vector<BigInt> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  }
  return out;
}

IntMatrix power(const IntMatrix& a, std::uint64_t k) {
  require_square(a, "power");
  IntMatrix result = IntMatrix::identity(a.rows());
  IntMatrix base = a;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

BigInt trace(const IntMatrix& a) {
  require_square(a, "trace");
  BigInt t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

BigInt determinant(const IntMatrix& a) {
  require_square(a, "determinant");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::string format_matrix(const IntMatrix& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < a.cols(); ++j) out += (j ? "," : "") + a(i, j).get_str();
    out += "]";
  }
  return out + "]";
}

}  // namespace symdyn
