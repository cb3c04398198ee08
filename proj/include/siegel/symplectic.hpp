#pragma once

#include <cstddef>
#include <optional>

#include "siegel/linalg.hpp"

namespace siegel {

/// A point Z = X + iY of the Siegel upper half space.
class SiegelPoint {
 public:
  SiegelPoint(SymMatrix x, SymMatrix y);
  /// Symmetrizes and splits a complex matrix; throws NotPositiveDefinite if Im Z is not.
  explicit SiegelPoint(const ComplexMatrix& z);

  static SiegelPoint i_identity(std::size_t n);

  std::size_t degree() const noexcept { return x_.dim(); }
  const SymMatrix& x() const noexcept { return x_; }
  const SymMatrix& y() const noexcept { return y_; }
  ComplexMatrix z() const;

 private:
  SymMatrix x_;
  SymMatrix y_;
};

inline constexpr double kSymplecticTol = 1e-10;

/// gᵀ J g = J entrywise within tol, J = (0, I; -I, 0).
bool is_symplectic(const RealMatrix& g, double tol = kSymplecticTol);

/// Element of Sp_2n(R), stored as the full 2n x 2n array.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(RealMatrix g, double tol = kSymplecticTol);

  static SymplecticMatrix identity(std::size_t n);
  /// (I, B; 0, I)
  static SymplecticMatrix translation(const SymMatrix& b);
  /// (U, 0; 0, U^{-T})
  static SymplecticMatrix embed_gl(const RealMatrix& u);
  /// (0, -I; I, 0), i.e. Z -> -Z^{-1}
  static SymplecticMatrix inversion(std::size_t n);
  /// SL_2 inversion acting on the i-th diagonal coordinate only.
  static SymplecticMatrix partial_inversion(std::size_t n, std::size_t i);
  /// (A, B; -B, A) for A + iB unitary.
  static SymplecticMatrix from_unitary(const ComplexMatrix& u);

  std::size_t degree() const noexcept { return g_.rows() / 2; }
  const RealMatrix& matrix() const noexcept { return g_; }
  RealMatrix a() const { return g_.block(0, 0, degree(), degree()); }
  RealMatrix b() const { return g_.block(0, degree(), degree(), degree()); }
  RealMatrix c() const { return g_.block(degree(), 0, degree(), degree()); }
  RealMatrix d() const { return g_.block(degree(), degree(), degree(), degree()); }

  /// g^{-1} = (Dᵀ, -Bᵀ; -Cᵀ, Aᵀ)
  SymplecticMatrix inverse() const;
  bool is_integral(double tol = 1e-9) const;

  friend SymplecticMatrix operator*(const SymplecticMatrix& l, const SymplecticMatrix& r);
  friend bool operator==(const SymplecticMatrix&, const SymplecticMatrix&) = default;

 private:
  struct Unchecked {};
  SymplecticMatrix(RealMatrix g, Unchecked) : g_(std::move(g)) {}

  RealMatrix g_;
};

/// J(g, Z) = CZ + D
ComplexMatrix automorphy_factor(const SymplecticMatrix& g, const SiegelPoint& z);

/// (AZ + B)(CZ + D)^{-1}; throws SingularFactor if CZ + D is numerically singular.
SiegelPoint act(const SymplecticMatrix& g, const SiegelPoint& z);

/// (I, X; 0, I)(Y^{1/2}, 0; 0, Y^{-1/2}), which maps i*I_n to Z.
SymplecticMatrix from_point(const SiegelPoint& z);

/// sqrt(Tr(gᵀ g))
double group_norm(const SymplecticMatrix& g);

/// True iff g == I mod level entrywise. Throws NonIntegral for non-integral g.
bool is_in_principal_congruence(const SymplecticMatrix& g, long level);

struct ReductionOptions {
  int max_steps = 10000;
  /// An inversion is applied when it raises det(Im) by more than this factor.
  double improvement_tol = 1e-9;
};

struct Reduction {
  SymplecticMatrix gamma;
  SiegelPoint reduced;
  int steps = 0;
};

/// Height-increasing reduction into an approximate fundamental domain of
/// Sp_2n(Z), n in {1, 2}. On return act(gamma, z) == reduced, |Re| <= 1/2
/// entrywise, Im is Lagrange reduced, and none of the candidate inversions
/// raises det(Im).
Reduction reduce_to_fundamental(const SiegelPoint& z, const ReductionOptions& opts = {});

/// Lower bound on the smallest eigenvalue of Im Z over reduced points.
double fundamental_domain_delta(std::size_t n);

/// Max entrywise distance between two points' complex matrices.
double point_distance(const SiegelPoint& a, const SiegelPoint& b);

}  // namespace siegel
