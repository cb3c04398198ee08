#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "siegel/error.hpp"

namespace siegel {

using Complex = std::complex<double>;

/// Largest matrix degree accepted anywhere in the library.
inline constexpr std::size_t kMaxDegree = 8;

/// Dense row-major matrix. Small sizes only; all arithmetic is naive.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> data() const noexcept { return data_; }
  std::span<T> data() noexcept { return data_; }

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(T s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, T s) { return a *= s; }
  friend Matrix operator*(T s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  static Matrix multiply(const Matrix& a, const Matrix& b);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;
using IntMatrix = Matrix<long>;

ComplexMatrix to_complex(const RealMatrix& m);
ComplexMatrix adjoint(const ComplexMatrix& m);
RealMatrix real_part(const ComplexMatrix& m);
RealMatrix imag_part(const ComplexMatrix& m);

double max_abs_entry(const RealMatrix& m);
double max_abs_entry(const ComplexMatrix& m);
double frobenius_norm(const RealMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

/// Gaussian elimination with partial pivoting. Throws SingularMatrix when a
/// pivot falls below `rel_tol` times the largest entry.
RealMatrix inverse(const RealMatrix& m, double rel_tol = 1e-14);
ComplexMatrix inverse(const ComplexMatrix& m, double rel_tol = 1e-14);
Complex determinant(const ComplexMatrix& m);
double determinant(const RealMatrix& m);

/// Real symmetric matrix. Symmetry is exact: the constructor averages the two
/// triangles after checking they agree to a relative tolerance.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : m_(n, n) {}
  explicit SymMatrix(RealMatrix m, double tol = 1e-9);
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : SymMatrix(RealMatrix(rows)) {}

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> d);
  static SymMatrix diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
  }

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, double v);
  const RealMatrix& matrix() const noexcept { return m_; }

  double trace() const;

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a);
  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  RealMatrix m_;
};

double max_abs_entry(const SymMatrix& y);

struct EigenDecomposition {
  std::vector<double> values;  // decreasing
  RealMatrix vectors;          // column i belongs to values[i]
};

struct JacobiOptions {
  double off_diagonal_tol = 1e-13;
  int max_sweeps = 64;
};

/// Cyclic Jacobi. Throws IterationFailure when the off-diagonal norm does not
/// reach the tolerance (relative to the Frobenius norm) within the sweep budget.
EigenDecomposition eigen_sym(const SymMatrix& y, const JacobiOptions& opts = {});
std::vector<double> eigenvalues_sym(const SymMatrix& y);

/// min eigenvalue > rel_tol * (1 + max eigenvalue)
bool is_positive_definite(const SymMatrix& y, double rel_tol = 1e-12);
SymMatrix sqrt_posdef(const SymMatrix& y);
SymMatrix inverse_sqrt_posdef(const SymMatrix& y);
SymMatrix inverse_posdef(const SymMatrix& y);
double det(const SymMatrix& y);

/// Y >= delta*I up to an absolute slack.
bool in_V_delta(const SymMatrix& y, double delta, double slack = 1e-12);

/// Exponents b_{ij}, 1 <= i <= j <= n, of a monomial in the upper-triangular
/// entries of a symmetric matrix. Pairs are 0-based in the API.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : n_(n), b_(n * (n + 1) / 2, 0) {}

  std::size_t dim() const noexcept { return n_; }
  int get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, int exponent);
  int degree() const;
  std::span<const int> exponents() const noexcept { return b_; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::size_t slot(std::size_t i, std::size_t j) const;

  std::size_t n_ = 0;
  std::vector<int> b_;
};

/// prod v_{ij}^{b_{ij}} over i <= j, with 0^0 = 1.
double monomial(const SymMatrix& v, const MultiIndex& beta);

/// All multi-indices of total degree <= p (the set T_n^p), in lexicographic order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int p);

}  // namespace siegel
