#pragma once

// Dense matrices over arbitrary-precision integers.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace symdyn {

using BigInt = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  // Throws a validation error when the rows are ragged.
  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_nonnegative() const;
  bool is_zero() const;

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> a_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
std::vector<BigInt> operator*(const IntMatrix& a, const std::vector<BigInt>& v);

IntMatrix power(const IntMatrix& a, std::uint64_t k);
IntMatrix transpose(const IntMatrix& a);
BigInt trace(const IntMatrix& a);
// Fraction-free (Bareiss) elimination.
BigInt determinant(const IntMatrix& a);

// "[[1,2],[3,4]]"
std::string format_matrix(const IntMatrix& a);

}  // namespace symdyn
