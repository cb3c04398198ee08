#include <doctest.h>

#include <cmath>
#include <complex>

#include "siegel/sampling.hpp"
#include "siegel/symplectic.hpp"

using namespace siegel;

namespace {

SiegelPoint point1(double x, double y) { return SiegelPoint(SymMatrix{{x}}, SymMatrix{{y}}); }

Complex as_scalar(const SiegelPoint& z) { return Complex(z.x()(0, 0), z.y()(0, 0)); }

// Textbook SL2(Z) reduction: translate into the strip, invert while inside the unit disc.
Complex gauss_reduce(Complex z) {
  for (int step = 0; step < 1000; ++step) {
    z -= std::round(z.real());
    if (std::norm(z) >= 1.0) return z;
    z = -1.0 / z;
  }
  return z;
}

double rel(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs_entry(a - b) / (1.0 + max_abs_entry(b));
}

}  // namespace

TEST_CASE("symplectic membership") {
  CHECK(is_symplectic(RealMatrix::identity(4)));
  CHECK(is_symplectic(SymplecticMatrix::inversion(2).matrix()));
  CHECK(is_symplectic(RealMatrix{{2, 0}, {0, 0.5}}));
  CHECK_FALSE(is_symplectic(RealMatrix{{2, 0}, {0, 1}}));
  CHECK_THROWS_AS(SymplecticMatrix(RealMatrix{{1, 1}, {1, 1}}), Error);
}

TEST_CASE("action of simple elements") {
  Rng rng(1);
  for (std::size_t n = 1; n <= 2; ++n) {
    const SiegelPoint z = random_adversarial_point(n, rng);
    CHECK(point_distance(act(SymplecticMatrix::identity(n), z), z) <= 1e-15);
    const SymMatrix b = random_symmetric(n, rng, -2, 2);
    const SiegelPoint shifted = act(SymplecticMatrix::translation(b), z);
    CHECK(max_abs_entry(shifted.x() - (z.x() + b)) <= 1e-14);
    CHECK(max_abs_entry(shifted.y() - z.y()) <= 1e-14);
  }
  const SiegelPoint i1 = point1(0, 1);
  CHECK(point_distance(act(SymplecticMatrix::inversion(1), i1), i1) <= 1e-15);
  // -1/z for z = 1 + i is (-1 + i)/2
  CHECK(std::abs(as_scalar(act(SymplecticMatrix::inversion(1), point1(1, 1))) - Complex(-0.5, 0.5)) <= 1e-15);
}

TEST_CASE("automorphy factors") {
  const SiegelPoint z = point1(0.3, 1.7);
  CHECK(max_abs_entry(automorphy_factor(SymplecticMatrix::translation(SymMatrix{{2.0}}), z) -
                      to_complex(RealMatrix::identity(1))) == 0.0);
  CHECK(std::abs(automorphy_factor(SymplecticMatrix::inversion(1), z)(0, 0) - Complex(0.3, 1.7)) <= 1e-15);

  const SymMatrix y0{{2, 0.5}, {0.5, 1}};
  const SymplecticMatrix g = from_point(SiegelPoint(SymMatrix(2), y0));
  const ComplexMatrix j = automorphy_factor(g, SiegelPoint::i_identity(2));
  CHECK(max_abs_entry(j - to_complex(inverse_sqrt_posdef(y0).matrix())) <= 1e-14);
}

TEST_CASE("from_point") {
  CHECK(from_point(SiegelPoint::i_identity(2)) == SymplecticMatrix::identity(2));
  const SymMatrix x{{0.25, -1}, {-1, 3}};
  const SymplecticMatrix g = from_point(SiegelPoint(x, SymMatrix::identity(2)));
  CHECK(max_abs_entry(g.matrix() - SymplecticMatrix::translation(x).matrix()) <= 1e-15);
  const SymplecticMatrix h = from_point(point1(0, 2));
  CHECK(h.matrix()(0, 0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(h.matrix()(1, 1) == doctest::Approx(1 / std::sqrt(2.0)));

  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const SiegelPoint z = random_adversarial_point(2, rng);
    CHECK(rel(act(from_point(z), SiegelPoint::i_identity(2)).z(), z.z()) <= 1e-12);
  }
}

TEST_CASE("group norm") {
  CHECK(group_norm(SymplecticMatrix::identity(1)) == doctest::Approx(std::sqrt(2.0)));
  for (double t : {0.5, 2.0, 64.0}) {
    CHECK(group_norm(diagonal_ray(1, t)) == doctest::Approx(std::sqrt(t * t + 1 / (t * t))));
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(group_norm(SymplecticMatrix::inversion(n)) == doctest::Approx(std::sqrt(2.0 * n)));
  }
}

TEST_CASE("principal congruence subgroups") {
  CHECK(is_in_principal_congruence(SymplecticMatrix::identity(2), 5));
  SymMatrix b(2);
  b.set(0, 0, 3.0);
  CHECK(is_in_principal_congruence(SymplecticMatrix::translation(b), 3));
  CHECK_FALSE(is_in_principal_congruence(SymplecticMatrix::translation(b), 2));
  CHECK_FALSE(is_in_principal_congruence(SymplecticMatrix::inversion(1), 2));
  CHECK_THROWS_AS(is_in_principal_congruence(diagonal_ray(1, 2.0), 2), Error);
}

TEST_CASE("group identities on random draws") {
  Rng rng(21);
  for (std::size_t n = 1; n <= 2; ++n) {
    for (int t = 0; t < 200; ++t) {
      const SymplecticMatrix g = random_symplectic(n, rng);
      const SymplecticMatrix h = random_symplectic(n, rng);
      const SiegelPoint z = random_adversarial_point(n, rng);
      CHECK(is_symplectic((g * h).matrix(), 1e-8));
      CHECK(max_abs_entry((g * g.inverse()).matrix() - RealMatrix::identity(2 * n)) <= 1e-9);

      // cocycle J(gh, Z) = J(g, hZ) J(h, Z)
      const ComplexMatrix lhs = automorphy_factor(g * h, z);
      const ComplexMatrix rhs = automorphy_factor(g, act(h, z)) * automorphy_factor(h, z);
      CHECK(rel(lhs, rhs) <= 1e-9);
      CHECK(rel(act(g * h, z).z(), act(g, act(h, z)).z()) <= 1e-9);
      CHECK(is_positive_definite(act(g, z).y()));

      const SymplecticMatrix k = random_maximal_compact(n, rng);
      CHECK(is_symplectic(k.matrix(), 1e-9));
      CHECK(std::abs(group_norm(g * k) - group_norm(g)) <= 1e-9 * group_norm(g));
      CHECK(point_distance(act(k, SiegelPoint::i_identity(n)), SiegelPoint::i_identity(n)) <= 1e-12);
    }
  }
}

TEST_CASE("degree-one reduction against the Gauss algorithm") {
  Reduction r = reduce_to_fundamental(point1(5, 1));
  CHECK(r.gamma == SymplecticMatrix::translation(SymMatrix{{-5.0}}));
  CHECK(point_distance(r.reduced, point1(0, 1)) <= 1e-15);

  r = reduce_to_fundamental(point1(0.3, 0.2));
  const Complex expected = gauss_reduce(Complex(0.3, 0.2));
  CHECK(std::abs(as_scalar(r.reduced) - expected) <= 1e-12);
  CHECK(std::abs(r.reduced.x()(0, 0)) <= 0.5);
  CHECK(std::abs(as_scalar(r.reduced)) >= 1.0 - 1e-12);

  r = reduce_to_fundamental(point1(0.1, 2.0));
  CHECK(r.gamma == SymplecticMatrix::identity(1));
  CHECK(r.steps == 0);

  Rng rng(4);
  for (int t = 0; t < 500; ++t) {
    const SiegelPoint z = random_adversarial_point(1, rng);
    const Reduction red = reduce_to_fundamental(z);
    const Complex g = gauss_reduce(as_scalar(z));
    // Interior points have a unique representative; on the boundary only the height is canonical.
    CHECK(red.reduced.y()(0, 0) == doctest::Approx(g.imag()).epsilon(1e-9));
    CHECK(red.gamma.is_integral());
    CHECK(rel(act(red.gamma, z).z(), red.reduced.z()) <= 1e-9);
  }
}

TEST_CASE("degree-two reduction") {
  Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    const SiegelPoint z(random_symmetric(2, rng, -4, 4), SymMatrix::diagonal({5.0, 7.0}));
    const Reduction red = reduce_to_fundamental(z);
    CHECK(in_V_delta(red.reduced.y(), 0.4));
    CHECK(red.gamma.is_integral());
  }
  for (int t = 0; t < 300; ++t) {
    const SiegelPoint z = random_adversarial_point(2, rng);
    const Reduction red = reduce_to_fundamental(z);
    CHECK(in_V_delta(red.reduced.y(), fundamental_domain_delta(2)));
    CHECK(max_abs_entry(red.reduced.x()) <= 0.5 + 1e-12);
    CHECK(rel(act(red.gamma, z).z(), red.reduced.z()) <= 1e-9);
    // A reduced point is a fixed point of the reduction.
    CHECK(reduce_to_fundamental(red.reduced).steps == 0);
  }
}

TEST_CASE("reduction budget") {
  ReductionOptions tight;
  tight.max_steps = 1;
  CHECK_THROWS_AS(reduce_to_fundamental(point1(0.3, 1e-3), tight), Error);
  CHECK_THROWS_AS(reduce_to_fundamental(SiegelPoint::i_identity(3)), Error);
}
