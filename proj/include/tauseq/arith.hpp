#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tauseq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A charge or lattice vector has the wrong coordinate sum.
class DegreeError : public Error {
 public:
  using Error::Error;
};

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q" into a canonicalized rational.
Rational parse_rational(const std::string& text);

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

/// Exact determinant by Gaussian elimination over the rationals.
Rational determinant(RationalMatrix m);

/// Fraction-free (Bareiss) determinant of an integer matrix.
Integer determinant(IntMatrix m);

/// Determinant of the submatrix picked out by `rows` x `cols` (in the given order).
Rational minor(const RationalMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols);

std::size_t rank(RationalMatrix m);

}  // namespace tauseq
