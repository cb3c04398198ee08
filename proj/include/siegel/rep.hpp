#pragma once

#include <cstddef>
#include <vector>

#include "siegel/linalg.hpp"

namespace siegel {

/// lambda_1 >= ... >= lambda_n >= 0
class HighestWeight {
 public:
  explicit HighestWeight(std::vector<int> lambda);

  std::size_t degree() const noexcept { return lambda_.size(); }
  int operator[](std::size_t i) const { return lambda_[i]; }
  int top() const { return lambda_.front(); }
  const std::vector<int>& parts() const noexcept { return lambda_; }

  friend bool operator==(const HighestWeight&, const HighestWeight&) = default;

 private:
  std::vector<int> lambda_;
};

/// Identifies a realized representation; two vectors are compatible iff their keys agree.
struct RepKey {
  std::size_t n = 1;
  int j = 0;
  int k = 0;
  friend bool operator==(const RepKey&, const RepKey&) = default;
};

/// Sym^j(C^n) ⊗ det^k, realized on degree-j monomials in n variables.
///
/// The basis is the set of monomials e^a = e_1^{a_1}...e_n^{a_n} with |a| = j,
/// in lexicographically decreasing order of a, so basis vector 0 is the highest
/// weight vector e_1^j. The U(n)-invariant inner product is the one induced from
/// the j-fold tensor power, under which the basis is orthogonal with
/// <e^a, e^a> = (prod a_i!) / j!.
class Rep {
 public:
  struct BasisVector {
    std::vector<int> exponents;  // a, |a| = j
    std::vector<int> weight;     // a + (k, ..., k)
    double norm_sq = 1.0;
  };

  std::size_t degree() const noexcept { return key_.n; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const RepKey& key() const noexcept { return key_; }
  const std::vector<BasisVector>& basis() const noexcept { return basis_; }

  /// d x d matrix of rho(M) in the monomial basis.
  ComplexMatrix matrix(const ComplexMatrix& m) const;

  friend Rep make_rep(std::size_t n, int j, int k);

 private:
  Rep() = default;

  RepKey key_;
  std::vector<BasisVector> basis_;
};

/// Throws UnsupportedWeight for negative j or k, InvalidArgument for n outside [1, 8].
Rep make_rep(std::size_t n, int j, int k);

/// Reverse lookup for the supported family; throws UnsupportedWeight when
/// lambda is not of the shape (j + k, k, ..., k).
Rep make_rep(const HighestWeight& lambda);

HighestWeight highest_weight(const Rep& rho);

class RepVector {
 public:
  RepVector() = default;
  RepVector(const Rep& rho, std::vector<Complex> coords);

  static RepVector zero(const Rep& rho);
  static RepVector basis(const Rep& rho, std::size_t index);

  const RepKey& key() const noexcept { return key_; }
  std::size_t size() const noexcept { return coords_.size(); }
  const std::vector<Complex>& coords() const noexcept { return coords_; }
  Complex operator[](std::size_t i) const { return coords_[i]; }
  Complex& operator[](std::size_t i) { return coords_[i]; }

  RepVector& operator+=(const RepVector& o);
  RepVector& operator-=(const RepVector& o);
  RepVector& operator*=(Complex s);
  friend RepVector operator+(RepVector a, const RepVector& b) { return a += b; }
  friend RepVector operator-(RepVector a, const RepVector& b) { return a -= b; }
  friend RepVector operator*(Complex s, RepVector a) { return a *= s; }

  friend bool operator==(const RepVector&, const RepVector&) = default;

 private:
  RepKey key_;
  std::vector<Complex> coords_;
};

/// rho(M) v; throws SingularMatrix when det M = 0 and k > 0.
RepVector apply(const Rep& rho, const ComplexMatrix& m, const RepVector& v);
/// rho(M)^{-1} v, computed as rho(M^{-1}) v.
RepVector apply_inverse(const Rep& rho, const ComplexMatrix& m, const RepVector& v);

/// Hermitian, linear in the first argument.
Complex inner(const Rep& rho, const RepVector& v, const RepVector& w);
double norm(const Rep& rho, const RepVector& v);

}  // namespace siegel
