#include "siegel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace siegel {

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
  return m;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
Matrix<T> Matrix<T>::block(std::size_t r0, std::size_t c0, std::size_t rows,
                           std::size_t cols) const {
  Matrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

template <class T>
void Matrix<T>::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

template <class T>
Matrix<T>& Matrix<T>::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimension mismatch in +");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

template <class T>
Matrix<T>& Matrix<T>::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimension mismatch in -");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

template <class T>
Matrix<T>& Matrix<T>::operator*=(T s) {
  for (auto& x : data_) x *= s;
  return *this;
}

template <class T>
Matrix<T> Matrix<T>::multiply(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimension mismatch in *");
  }
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const T aik = a(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template class Matrix<double>;
template class Matrix<Complex>;
template class Matrix<long>;

ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j);
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix a(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(j, i) = std::conj(m(i, j));
  return a;
}

RealMatrix real_part(const ComplexMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).real();
  return r;
}

RealMatrix imag_part(const ComplexMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).imag();
  return r;
}

double max_abs_entry(const RealMatrix& m) {
  double best = 0.0;
  for (double x : m.data()) best = std::max(best, std::abs(x));
  return best;
}

double max_abs_entry(const ComplexMatrix& m) {
  double best = 0.0;
  for (const Complex& x : m.data()) best = std::max(best, std::abs(x));
  return best;
}

double frobenius_norm(const RealMatrix& m) {
  double s = 0.0;
  for (double x : m.data()) s += x * x;
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const Complex& x : m.data()) s += std::norm(x);
  return std::sqrt(s);
}

namespace {

template <class T>
struct LU {
  Matrix<T> lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

template <class T>
LU<T> lu_decompose(const Matrix<T>& m, double rel_tol) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "LU of non-square matrix");
  const std::size_t n = m.rows();
  LU<T> out{m, std::vector<std::size_t>(n), 1, false};
  std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
  const double scale = max_abs_entry(m);
  auto& a = out.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (!(std::abs(a(piv, k)) > rel_tol * scale)) {
      out.singular = true;
      return out;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(out.perm[k], out.perm[piv]);
      out.sign = -out.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return out;
}

template <class T>
Matrix<T> lu_inverse(const Matrix<T>& m, double rel_tol) {
  const auto d = lu_decompose(m, rel_tol);
  if (d.singular) throw Error(ErrorCode::SingularMatrix, "matrix is numerically singular");
  const std::size_t n = m.rows();
  Matrix<T> inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = d.perm[i] == col ? T{1} : T{0};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k) x[i] -= d.lu(i, k) * x[k];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) x[i] -= d.lu(i, k) * x[k];
      x[i] /= d.lu(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
  }
  return inv;
}

template <class T>
T lu_determinant(const Matrix<T>& m) {
  const auto d = lu_decompose(m, 0.0);
  if (d.singular) return T{0};
  T det = static_cast<T>(static_cast<double>(d.sign));
  for (std::size_t i = 0; i < m.rows(); ++i) det *= d.lu(i, i);
  return det;
}

}  // namespace

RealMatrix inverse(const RealMatrix& m, double rel_tol) { return lu_inverse(m, rel_tol); }
ComplexMatrix inverse(const ComplexMatrix& m, double rel_tol) { return lu_inverse(m, rel_tol); }
Complex determinant(const ComplexMatrix& m) { return lu_determinant(m); }
double determinant(const RealMatrix& m) { return lu_determinant(m); }

SymMatrix::SymMatrix(RealMatrix m, double tol) : m_(std::move(m)) {
  if (!m_.square()) throw Error(ErrorCode::InvalidArgument, "symmetric matrix must be square");
  if (m_.rows() > kMaxDegree) {
    throw Error(ErrorCode::InvalidArgument, "dimension exceeds the supported maximum of 8");
  }
  const double scale = 1.0 + max_abs_entry(m_);
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = i + 1; j < m_.cols(); ++j) {
      const double a = m_(i, j);
      const double b = m_(j, i);
      if (!(std::abs(a - b) <= tol * scale)) {
        std::ostringstream os;
        os << "matrix is not symmetric at (" << i << "," << j << ")";
        throw Error(ErrorCode::InvalidArgument, os.str());
      }
      const double avg = 0.5 * (a + b);
      m_(i, j) = avg;
      m_(j, i) = avg;
    }
}

SymMatrix SymMatrix::identity(std::size_t n) { return SymMatrix(RealMatrix::identity(n)); }

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.m_(i, i) = d[i];
  return s;
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
  m_(i, j) = v;
  m_(j, i) = v;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i);
  return t;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  SymMatrix s;
  s.m_ = a.m_ + b.m_;
  return s;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  SymMatrix s;
  s.m_ = a.m_ - b.m_;
  return s;
}

SymMatrix operator*(double f, const SymMatrix& a) {
  SymMatrix s;
  s.m_ = a.m_ * f;
  return s;
}

double max_abs_entry(const SymMatrix& y) { return max_abs_entry(y.matrix()); }

EigenDecomposition eigen_sym(const SymMatrix& y, const JacobiOptions& opts) {
  const std::size_t n = y.dim();
  RealMatrix a = y.matrix();
  RealMatrix v = RealMatrix::identity(n);
  for (double x : a.data()) {
    if (!std::isfinite(x)) throw Error(ErrorCode::IterationFailure, "non-finite matrix entry");
  }
  const double total = frobenius_norm(a);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > opts.off_diagonal_tol * total) {
    if (sweep++ >= opts.max_sweeps) {
      throw Error(ErrorCode::IterationFailure, "Jacobi sweeps exhausted");
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  EigenDecomposition out{std::vector<double>(n), RealMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> eigenvalues_sym(const SymMatrix& y) { return eigen_sym(y).values; }

bool is_positive_definite(const SymMatrix& y, double rel_tol) {
  const auto mu = eigenvalues_sym(y);
  if (mu.empty()) return false;
  return mu.back() > rel_tol * (1.0 + std::abs(mu.front()));
}

namespace {

// Q f(Λ) Qᵀ for a scalar function of the eigenvalues; requires positive definiteness.
template <class F>
SymMatrix spectral_apply(const SymMatrix& y, F f) {
  const auto e = eigen_sym(y);
  const std::size_t n = y.dim();
  if (e.values.back() <= 1e-12 * (1.0 + std::abs(e.values.front()))) {
    std::ostringstream os;
    os << "min eigenvalue " << e.values.back() << " is not positive";
    throw Error(ErrorCode::NotPositiveDefinite, os.str());
  }
  RealMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += e.vectors(i, k) * fk * e.vectors(j, k);
  }
  return SymMatrix(out, 1e-6);
}

}  // namespace

SymMatrix sqrt_posdef(const SymMatrix& y) {
  return spectral_apply(y, [](double mu) { return std::sqrt(mu); });
}

SymMatrix inverse_sqrt_posdef(const SymMatrix& y) {
  return spectral_apply(y, [](double mu) { return 1.0 / std::sqrt(mu); });
}

SymMatrix inverse_posdef(const SymMatrix& y) {
  return spectral_apply(y, [](double mu) { return 1.0 / mu; });
}

double det(const SymMatrix& y) {
  const auto mu = eigenvalues_sym(y);
  return std::accumulate(mu.begin(), mu.end(), 1.0, std::multiplies<>());
}

bool in_V_delta(const SymMatrix& y, double delta, double slack) {
  if (!(delta > 0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  return eigenvalues_sym(y).back() >= delta - slack;
}

std::size_t MultiIndex::slot(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (j >= n_) throw Error(ErrorCode::InvalidArgument, "multi-index pair out of range");
  // row-major position of (i, j) in the upper triangle
  return i * n_ - i * (i - 1) / 2 + (j - i);
}

int MultiIndex::get(std::size_t i, std::size_t j) const { return b_[slot(i, j)]; }

void MultiIndex::set(std::size_t i, std::size_t j, int exponent) {
  if (exponent < 0) throw Error(ErrorCode::InvalidArgument, "negative multi-index exponent");
  b_[slot(i, j)] = exponent;
}

int MultiIndex::degree() const { return std::accumulate(b_.begin(), b_.end(), 0); }

double monomial(const SymMatrix& v, const MultiIndex& beta) {
  if (v.dim() != beta.dim()) {
    throw Error(ErrorCode::InvalidArgument, "monomial: dimension mismatch");
  }
  double prod = 1.0;
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = i; j < v.dim(); ++j) {
      const int b = beta.get(i, j);
      for (int e = 0; e < b; ++e) prod *= v(i, j);
    }
  return prod;
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int p) {
  const std::size_t slots = n * (n + 1) / 2;
  std::vector<MultiIndex> out;
  std::vector<int> b(slots, 0);
  // odometer over exponent vectors with bounded total degree
  while (true) {
    MultiIndex m(n);
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m.set(i, j, b[s++]);
    out.push_back(m);
    std::size_t k = slots;
    int total = std::accumulate(b.begin(), b.end(), 0);
    while (k > 0) {
      --k;
      if (total < p) {
        ++b[k];
        break;
      }
      total -= b[k];
      b[k] = 0;
      if (k == 0) return out;
    }
    if (slots == 0) return out;
  }
}

}  // namespace siegel
