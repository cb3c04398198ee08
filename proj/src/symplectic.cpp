#include "siegel/symplectic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace siegel {

SiegelPoint::SiegelPoint(SymMatrix x, SymMatrix y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.dim() != y_.dim() || x_.dim() == 0) {
    throw Error(ErrorCode::InvalidArgument, "real and imaginary parts must share a positive degree");
  }
  if (!is_positive_definite(y_)) {
    throw Error(ErrorCode::NotPositiveDefinite, "imaginary part of a Siegel point");
  }
}

SiegelPoint::SiegelPoint(const ComplexMatrix& z)
    : SiegelPoint(SymMatrix(real_part(z), 1e-6), SymMatrix(imag_part(z), 1e-6)) {}

SiegelPoint SiegelPoint::i_identity(std::size_t n) {
  return SiegelPoint(SymMatrix(n), SymMatrix::identity(n));
}

ComplexMatrix SiegelPoint::z() const {
  const std::size_t n = degree();
  ComplexMatrix z(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = Complex(x_(i, j), y_(i, j));
  return z;
}

bool is_symplectic(const RealMatrix& g, double tol) {
  if (!g.square() || g.rows() % 2 != 0 || g.rows() == 0) return false;
  const std::size_t n = g.rows() / 2;
  RealMatrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  const RealMatrix lhs = g.transpose() * j * g;
  for (std::size_t r = 0; r < 2 * n; ++r)
    for (std::size_t c = 0; c < 2 * n; ++c)
      if (!(std::abs(lhs(r, c) - j(r, c)) <= tol)) return false;
  return true;
}

SymplecticMatrix::SymplecticMatrix(RealMatrix g, double tol) : g_(std::move(g)) {
  if (!g_.square() || g_.rows() % 2 != 0 || g_.rows() == 0 || g_.rows() > 2 * kMaxDegree) {
    throw Error(ErrorCode::InvalidArgument, "symplectic matrix must be 2n x 2n");
  }
  if (!is_symplectic(g_, tol)) {
    throw Error(ErrorCode::InvalidArgument, "matrix is not symplectic");
  }
}

SymplecticMatrix SymplecticMatrix::identity(std::size_t n) {
  return SymplecticMatrix(RealMatrix::identity(2 * n), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::translation(const SymMatrix& b) {
  const std::size_t n = b.dim();
  RealMatrix g = RealMatrix::identity(2 * n);
  g.set_block(0, n, b.matrix());
  return SymplecticMatrix(std::move(g), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::embed_gl(const RealMatrix& u) {
  const std::size_t n = u.rows();
  RealMatrix g(2 * n, 2 * n);
  g.set_block(0, 0, u);
  g.set_block(n, n, siegel::inverse(u).transpose());
  return SymplecticMatrix(std::move(g), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::inversion(std::size_t n) {
  RealMatrix g(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, n + i) = -1.0;
    g(n + i, i) = 1.0;
  }
  return SymplecticMatrix(std::move(g), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::partial_inversion(std::size_t n, std::size_t i) {
  if (i >= n) throw Error(ErrorCode::InvalidArgument, "partial inversion index out of range");
  RealMatrix g = RealMatrix::identity(2 * n);
  g(i, i) = 0.0;
  g(n + i, n + i) = 0.0;
  g(i, n + i) = -1.0;
  g(n + i, i) = 1.0;
  return SymplecticMatrix(std::move(g), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::from_unitary(const ComplexMatrix& u) {
  const std::size_t n = u.rows();
  const RealMatrix a = real_part(u);
  const RealMatrix b = imag_part(u);
  RealMatrix g(2 * n, 2 * n);
  g.set_block(0, 0, a);
  g.set_block(0, n, b);
  g.set_block(n, 0, b * -1.0);
  g.set_block(n, n, a);
  return SymplecticMatrix(std::move(g), 1e-9);
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const std::size_t n = degree();
  RealMatrix g(2 * n, 2 * n);
  g.set_block(0, 0, d().transpose());
  g.set_block(0, n, b().transpose() * -1.0);
  g.set_block(n, 0, c().transpose() * -1.0);
  g.set_block(n, n, a().transpose());
  return SymplecticMatrix(std::move(g), Unchecked{});
}

bool SymplecticMatrix::is_integral(double tol) const {
  for (double x : g_.data())
    if (!(std::abs(x - std::nearbyint(x)) <= tol)) return false;
  return true;
}

SymplecticMatrix operator*(const SymplecticMatrix& l, const SymplecticMatrix& r) {
  if (l.degree() != r.degree()) {
    throw Error(ErrorCode::InvalidArgument, "symplectic product degree mismatch");
  }
  return SymplecticMatrix(l.g_ * r.g_, SymplecticMatrix::Unchecked{});
}

ComplexMatrix automorphy_factor(const SymplecticMatrix& g, const SiegelPoint& z) {
  if (g.degree() != z.degree()) {
    throw Error(ErrorCode::InvalidArgument, "automorphy factor degree mismatch");
  }
  return to_complex(g.c()) * z.z() + to_complex(g.d());
}

SiegelPoint act(const SymplecticMatrix& g, const SiegelPoint& z) {
  const ComplexMatrix zz = z.z();
  const ComplexMatrix num = to_complex(g.a()) * zz + to_complex(g.b());
  const ComplexMatrix den = automorphy_factor(g, z);
  ComplexMatrix den_inv;
  try {
    den_inv = inverse(den);
  } catch (const Error&) {
    throw Error(ErrorCode::SingularFactor, "CZ + D is numerically singular");
  }
  return SiegelPoint(num * den_inv);
}

SymplecticMatrix from_point(const SiegelPoint& z) {
  const std::size_t n = z.degree();
  const SymMatrix root = sqrt_posdef(z.y());
  const SymMatrix inv_root = inverse_sqrt_posdef(z.y());
  RealMatrix g(2 * n, 2 * n);
  g.set_block(0, 0, root.matrix());
  g.set_block(0, n, z.x().matrix() * inv_root.matrix());
  g.set_block(n, n, inv_root.matrix());
  const double scale = 1.0 + max_abs_entry(g);
  return SymplecticMatrix(std::move(g), kSymplecticTol * scale * scale);
}

double group_norm(const SymplecticMatrix& g) { return frobenius_norm(g.matrix()); }

bool is_in_principal_congruence(const SymplecticMatrix& g, long level) {
  if (level <= 0) throw Error(ErrorCode::InvalidArgument, "level must be positive");
  if (!g.is_integral()) throw Error(ErrorCode::NonIntegral, "matrix entries are not integers");
  const RealMatrix& m = g.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const long v = std::lround(m(i, j)) - (i == j ? 1 : 0);
      if (v % level != 0) return false;
    }
  return true;
}

double fundamental_domain_delta(std::size_t n) {
  if (n == 1) return std::sqrt(3.0) / 2.0;
  if (n == 2) return 0.4;
  throw Error(ErrorCode::InvalidArgument, "fundamental domain only available for n in {1, 2}");
}

double point_distance(const SiegelPoint& a, const SiegelPoint& b) {
  return max_abs_entry(a.z() - b.z());
}

namespace {

// Finds a GL_2(Z) step that moves Y towards |2 y12| <= y11 <= y22, if one is needed.
std::optional<RealMatrix> lagrange_step(const SymMatrix& y) {
  constexpr double slack = 1e-12;
  const double a = y(0, 0);
  const double b = y(0, 1);
  const double c = y(1, 1);
  if (std::abs(b) > 0.5 * a * (1.0 + slack)) {
    const double m = std::nearbyint(b / a);
    if (m != 0.0) return RealMatrix{{1.0, 0.0}, {-m, 1.0}};
  }
  if (a > c * (1.0 + slack)) return RealMatrix{{0.0, 1.0}, {1.0, 0.0}};
  return std::nullopt;
}

}  // namespace

Reduction reduce_to_fundamental(const SiegelPoint& z, const ReductionOptions& opts) {
  const std::size_t n = z.degree();
  if (n != 1 && n != 2) {
    throw Error(ErrorCode::InvalidArgument, "reduction is implemented for n in {1, 2}");
  }

  std::vector<SymplecticMatrix> inversions{SymplecticMatrix::inversion(n)};
  if (n > 1)
    for (std::size_t i = 0; i < n; ++i) inversions.push_back(SymplecticMatrix::partial_inversion(n, i));

  SymplecticMatrix gamma = SymplecticMatrix::identity(n);
  SiegelPoint cur = z;
  int steps = 0;
  auto apply = [&](const SymplecticMatrix& s) {
    if (++steps > opts.max_steps) {
      std::ostringstream os;
      os << "reduction exceeded " << opts.max_steps << " steps";
      throw Error(ErrorCode::NonTermination, os.str());
    }
    cur = act(s, cur);
    gamma = s * gamma;
  };

  while (true) {
    if (n == 2) {
      while (auto u = lagrange_step(cur.y())) apply(SymplecticMatrix::embed_gl(*u));
    }

    SymMatrix shift(n);
    bool shifted = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const double r = std::nearbyint(cur.x()(i, j));
        if (r != 0.0) {
          shift.set(i, j, -r);
          shifted = true;
        }
      }
    if (shifted) apply(SymplecticMatrix::translation(shift));

    // det Im(gZ) = det Im(Z) / |det J(g, Z)|^2
    const SymplecticMatrix* best = nullptr;
    double best_gain = 1.0 + opts.improvement_tol;
    for (const auto& inv : inversions) {
      const double d2 = std::norm(determinant(automorphy_factor(inv, cur)));
      const double gain = d2 > 0 ? 1.0 / d2 : std::numeric_limits<double>::infinity();
      if (gain > best_gain) {
        best_gain = gain;
        best = &inv;
      }
    }
    if (best == nullptr) break;
    apply(*best);
  }
  return Reduction{std::move(gamma), std::move(cur), steps};
}

}  // namespace siegel
