#include "siegel/rep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace siegel {

HighestWeight::HighestWeight(std::vector<int> lambda) : lambda_(std::move(lambda)) {
  if (lambda_.empty()) throw Error(ErrorCode::InvalidArgument, "highest weight needs n >= 1 parts");
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    if (lambda_[i] < 0 || (i > 0 && lambda_[i] > lambda_[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "highest weight must be non-increasing and non-negative");
    }
  }
}

namespace {

void compositions(std::size_t n, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = total; a >= 0; --a) {
    cur.push_back(a);
    compositions(n, total - a, cur, out);
    cur.pop_back();
  }
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

using Poly = std::map<std::vector<int>, Complex>;

}  // namespace

Rep make_rep(std::size_t n, int j, int k) {
  if (n == 0 || n > kMaxDegree) throw Error(ErrorCode::InvalidArgument, "degree must be in [1, 8]");
  if (j < 0 || k < 0) {
    throw Error(ErrorCode::UnsupportedWeight, "only Sym^j ⊗ det^k with j, k >= 0 is supported");
  }
  Rep rho;
  rho.key_ = RepKey{n, j, k};
  std::vector<std::vector<int>> exps;
  std::vector<int> cur;
  compositions(n, j, cur, exps);
  const double jf = factorial(j);
  for (auto& a : exps) {
    Rep::BasisVector b;
    b.weight = a;
    for (int& w : b.weight) w += k;
    double num = 1.0;
    for (int ai : a) num *= factorial(ai);
    b.norm_sq = num / jf;
    b.exponents = std::move(a);
    rho.basis_.push_back(std::move(b));
  }
  return rho;
}

Rep make_rep(const HighestWeight& lambda) {
  const std::size_t n = lambda.degree();
  const int k = lambda[n - 1];
  for (std::size_t i = 1; i < n; ++i) {
    if (lambda[i] != k) {
      std::ostringstream os;
      os << "highest weight is not of the form (j+k, k, ..., k)";
      throw Error(ErrorCode::UnsupportedWeight, os.str());
    }
  }
  if (n == 1) return make_rep(1, 0, lambda.top());
  return make_rep(n, lambda.top() - k, k);
}

HighestWeight highest_weight(const Rep& rho) {
  std::vector<int> lambda(rho.degree(), rho.key().k);
  lambda[0] += rho.key().j;
  return HighestWeight(std::move(lambda));
}

ComplexMatrix Rep::matrix(const ComplexMatrix& m) const {
  const std::size_t n = degree();
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorCode::InvalidArgument, "representation applied to a matrix of the wrong size");
  }
  Complex det_factor{1.0};
  if (key_.k > 0) {
    const Complex d = determinant(m);
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) scale *= std::max(1e-300, frobenius_norm(m));
    if (std::abs(d) <= 1e-14 * scale) {
      throw Error(ErrorCode::SingularMatrix, "det(M) = 0 with a nonzero determinant twist");
    }
    det_factor = std::pow(d, key_.k);
  }

  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t b = 0; b < basis_.size(); ++b) index[basis_[b].exponents] = b;

  ComplexMatrix out(dim(), dim());
  for (std::size_t col = 0; col < basis_.size(); ++col) {
    // e_i -> sum_r M(r, i) e_r, expanded over the monomial e^a
    Poly poly{{std::vector<int>(n, 0), Complex{1.0}}};
    const auto& a = basis_[col].exponents;
    for (std::size_t i = 0; i < n; ++i)
      for (int rep = 0; rep < a[i]; ++rep) {
        Poly next;
        for (const auto& [mono, coeff] : poly)
          for (std::size_t r = 0; r < n; ++r) {
            if (m(r, i) == Complex{0.0}) continue;
            auto e = mono;
            ++e[r];
            next[e] += coeff * m(r, i);
          }
        poly = std::move(next);
      }
    for (const auto& [mono, coeff] : poly) out(index.at(mono), col) = coeff * det_factor;
  }
  return out;
}

RepVector::RepVector(const Rep& rho, std::vector<Complex> coords)
    : key_(rho.key()), coords_(std::move(coords)) {
  if (coords_.size() != rho.dim()) {
    std::ostringstream os;
    os << "vector has " << coords_.size() << " coordinates, representation has dimension " << rho.dim();
    throw Error(ErrorCode::MismatchedRep, os.str());
  }
}

RepVector RepVector::zero(const Rep& rho) {
  return RepVector(rho, std::vector<Complex>(rho.dim()));
}

RepVector RepVector::basis(const Rep& rho, std::size_t index) {
  RepVector v = zero(rho);
  v.coords_.at(index) = 1.0;
  return v;
}

RepVector& RepVector::operator+=(const RepVector& o) {
  if (!(key_ == o.key_) || coords_.size() != o.coords_.size()) {
    throw Error(ErrorCode::MismatchedRep, "adding vectors of different representations");
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

RepVector& RepVector::operator-=(const RepVector& o) {
  if (!(key_ == o.key_) || coords_.size() != o.coords_.size()) {
    throw Error(ErrorCode::MismatchedRep, "subtracting vectors of different representations");
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

RepVector& RepVector::operator*=(Complex s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

namespace {

void check_member(const Rep& rho, const RepVector& v) {
  if (!(v.key() == rho.key()) || v.size() != rho.dim()) {
    throw Error(ErrorCode::MismatchedRep, "vector does not belong to this representation");
  }
}

}  // namespace

RepVector apply(const Rep& rho, const ComplexMatrix& m, const RepVector& v) {
  check_member(rho, v);
  const ComplexMatrix r = rho.matrix(m);
  std::vector<Complex> out(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j) out[i] += r(i, j) * v[j];
  return RepVector(rho, std::move(out));
}

RepVector apply_inverse(const Rep& rho, const ComplexMatrix& m, const RepVector& v) {
  return apply(rho, inverse(m), v);
}

Complex inner(const Rep& rho, const RepVector& v, const RepVector& w) {
  check_member(rho, v);
  check_member(rho, w);
  Complex s{0.0};
  for (std::size_t i = 0; i < rho.dim(); ++i) s += v[i] * std::conj(w[i]) * rho.basis()[i].norm_sq;
  return s;
}

double norm(const Rep& rho, const RepVector& v) { return std::sqrt(std::max(0.0, inner(rho, v, v).real())); }

}  // namespace siegel
