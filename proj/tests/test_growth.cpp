#include <doctest.h>

#include <cmath>

#include "siegel/growth.hpp"
#include "siegel/report.hpp"
#include "siegel/sampling.hpp"

using namespace siegel;

namespace {

SweepConfig small(std::size_t samples, std::uint64_t seed = 1) {
  SweepConfig c;
  c.samples = samples;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("right-hand sides") {
  CHECK(sturm_rhs(SymMatrix::identity(1), 4) == doctest::Approx(2.0));
  CHECK(sturm_rhs(SymMatrix::identity(3), 2) == doctest::Approx(8.0));
  CHECK(sturm_rhs(SymMatrix{{4.0}}, 4) == doctest::Approx(16.0625));
  CHECK(sturm_rhs(SymMatrix::diagonal({4.0, 1.0}), 2) == doctest::Approx(8.5));

  CHECK(corollary_rhs(SymMatrix::identity(2), 2) == doctest::Approx(81.0));
  CHECK(corollary_rhs(SymMatrix{{1.0}}, 4) == doctest::Approx(16.0));

  CHECK_THROWS_AS(sturm_rhs(SymMatrix::diagonal({1.0, -1.0}), 2), Error);
}

TEST_CASE("elementary inequality") {
  const double y[] = {2.0, 3.0};
  CHECK(elementary_product(y, 2) == 50.0);
  CHECK(elementary_majorant(y, 2) == 1296.0);
  Rng rng(7);
  for (int t = 0; t < 2000; ++t) {
    std::vector<double> v(1 + t % 4);
    for (auto& x : v) x = log_uniform(rng, 1e-3, 1e3);
    const int lambda = 1 + t % 6;
    CHECK(elementary_product(v, lambda) <= elementary_majorant(v, lambda) * (1 + 1e-12));
  }
}

TEST_CASE("bound kinds") {
  CHECK(bound_kind_from_string("theorem") == BoundKind::Theorem);
  CHECK(bound_kind_from_string("corollary") == BoundKind::Corollary);
  CHECK(std::string(to_string(BoundKind::ModerateGrowth)) == "moderate-growth");
  CHECK_THROWS_AS(bound_kind_from_string("other"), Error);
}

TEST_CASE("constant estimates") {
  const Rep triv = make_rep(2, 0, 0);
  const RepVector v0 = Complex(3, 4) * RepVector::basis(triv, 0);
  const ConstantEstimate c = estimate_constant(catalog::constant_form(triv, v0), small(500));
  // phi is constant and the right-hand side is 2^n for the trivial weight
  CHECK(c.constant == doctest::Approx(1.25 * 5.0 / 4.0));
  CHECK(c.samples == 500);

  CHECK(estimate_constant(catalog::zero_form(make_rep(1, 0, 4)), small(200)).constant == 0.0);

  const FormPackage e4 = catalog::eisenstein_e4();
  const double a = estimate_constant(e4, small(2000, 3)).constant;
  const double b = estimate_constant(e4, small(4000, 4)).constant;
  CHECK(a > 0);
  CHECK(std::isfinite(a));
  CHECK(std::abs(a - b) <= 0.05 * b);
}

TEST_CASE("growth sweeps") {
  const FormPackage e4 = catalog::eisenstein_e4();
  const double c = estimate_constant(e4, small(2000)).constant;
  const GrowthReport ok = verify_growth_bound(e4, c, BoundKind::Theorem, small(3000, 9));
  CHECK(ok.samples == 3000);
  CHECK(ok.violations == 0);
  CHECK(ok.worst_ratio <= 1.0);
  CHECK(ok.worst_point.has_value());
  CHECK(ok.exponent_r == 2.0);

  const GrowthReport cor = verify_growth_bound(e4, c, BoundKind::Corollary, small(3000, 9));
  CHECK(cor.violations == 0);

  const GrowthReport bad = verify_growth_bound(e4, 1e-6, BoundKind::Theorem, small(500, 9));
  CHECK(bad.violations > 0);
  CHECK(bad.violating.size() == GrowthReport::kListedViolations);

  const GrowthReport zero =
      verify_growth_bound(catalog::zero_form(make_rep(2, 2, 0)), 1.0, BoundKind::Theorem, small(300));
  CHECK(zero.violations == 0);

  CHECK_THROWS_AS(verify_growth_bound(e4, -1.0, BoundKind::Theorem, small(10)), Error);
  CHECK_THROWS_AS(verify_growth_bound(e4, 1.0, BoundKind::ModerateGrowth, small(10)), Error);
}

TEST_CASE("explicit sample lists") {
  const FormPackage e4 = catalog::eisenstein_e4();
  std::vector<SiegelPoint> pts;
  for (double y : {0.05, 0.5, 1.0, 10.0}) pts.emplace_back(SymMatrix{{0.25}}, SymMatrix{{y}});
  const GrowthReport r = verify_growth_bound(e4, 1.25, BoundKind::Theorem, pts, 1e-9, true);
  CHECK(r.samples == 4);
  CHECK(r.rows.size() == 4);
  CHECK(r.rows[0].where.find("0.25") != std::string::npos);
  for (const auto& row : r.rows) CHECK(row.ratio == doctest::Approx(row.phi / (1.25 * row.rhs)));
}

TEST_CASE("sweeps are reproducible and merge in shard order") {
  const FormPackage e6 = catalog::eisenstein_e6();
  const GrowthReport a = verify_growth_bound(e6, 1.25, BoundKind::Theorem, small(1000, 42));
  const GrowthReport b = verify_growth_bound(e6, 1.25, BoundKind::Theorem, small(1000, 42));
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
  const GrowthReport c = verify_growth_bound(e6, 1.25, BoundKind::Theorem, small(1000, 43));
  CHECK(report_to_json(a).dump() != report_to_json(c).dump());

  GrowthReport x, y;
  x.samples = 3;
  x.worst_ratio = 0.5;
  x.worst_point = SiegelPoint::i_identity(1);
  y.samples = 4;
  y.violations = 1;
  y.worst_ratio = 0.5;
  y.worst_point = SiegelPoint(SymMatrix{{0.1}}, SymMatrix{{2.0}});
  GrowthReport m = x;
  m.merge(y);
  CHECK(m.samples == 7);
  CHECK(m.violations == 1);
  CHECK(point_distance(*m.worst_point, SiegelPoint::i_identity(1)) == 0.0);
  y.worst_ratio = 0.6;
  m = x;
  m.merge(y);
  CHECK(m.worst_ratio == 0.6);
  CHECK(m.worst_point->y()(0, 0) == 2.0);
}

TEST_CASE("lift") {
  const FormPackage e4 = catalog::eisenstein_e4();
  const SiegelPoint i1 = SiegelPoint::i_identity(1);
  CHECK(lift(e4, SymplecticMatrix::identity(1)) == evaluate(e4.expansion(), i1));

  Rng rng(12);
  for (std::size_t n = 1; n <= 2; ++n) {
    const FormPackage f = n == 1 ? e4 : catalog::synthetic_degree2();
    for (int t = 0; t < 100; ++t) {
      const SiegelPoint z = random_adversarial_point(n, rng);
      const double want = phi(f.expansion(), z);
      CHECK(std::abs(norm(f.rep(), lift(f, from_point(z))) - want) <= 1e-9 * (want + 1e-300));

      // J(k, iI) = A - iB is unitary, so right translation by k keeps the norm
      const SymplecticMatrix k = random_maximal_compact(n, rng);
      const ComplexMatrix j = automorphy_factor(k, SiegelPoint::i_identity(n));
      CHECK(max_abs_entry(adjoint(j) * j - to_complex(RealMatrix::identity(n))) <= 1e-12);
      CHECK(std::abs(norm(f.rep(), lift(f, from_point(z) * k)) - want) <= 1e-9 * (want + 1e-300));
    }
  }
}

TEST_CASE("moderate growth") {
  const FormPackage e4 = catalog::eisenstein_e4();
  const RepVector w0 = RepVector::basis(e4.rep(), 0);
  CHECK(minimal_exponent(e4) == 2.0);
  CHECK(minimal_exponent(catalog::synthetic_degree2()) == 4.0);
  const double cf = estimate_constant(e4, small(2000)).constant;
  CHECK(moderate_growth_constant(e4, w0, cf) == doctest::Approx(1.25 * cf));

  const GrowthReport r = verify_moderate_growth(e4, w0, 2.0, cf, small(3000, 5));
  CHECK(r.violations == 0);
  CHECK(r.exponent_r == 2.0);
  CHECK(r.worst_element.has_value());

  std::vector<SymplecticMatrix> ray;
  for (double t = 2; t <= 64; t *= 2) ray.push_back(diagonal_ray(1, t));
  CHECK(verify_moderate_growth(e4, w0, 2.0, cf, ray).violations == 0);

  CHECK_THROWS_AS(verify_moderate_growth(e4, w0, 1.5, cf, ray), Error);
  const FormPackage zero = catalog::zero_form(make_rep(1, 0, 4));
  CHECK(verify_moderate_growth(zero, w0, 2.0, 0.0, small(200)).violations == 0);
}

TEST_CASE("report serialization") {
  const FormPackage e4 = catalog::eisenstein_e4();
  SweepConfig cfg = small(50);
  cfg.keep_rows = true;
  const GrowthReport r = verify_growth_bound(e4, 1.25, BoundKind::Corollary, cfg);
  const auto j = report_to_json(r);
  for (const char* key : {"kind", "constant", "exponent_r", "samples", "violations", "worst_ratio", "worst_point", "config"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["kind"] == "corollary");
  CHECK(j["config"]["seed"] == 1);
  std::ostringstream csv;
  write_csv(csv, r);
  const std::string text = csv.str();
  CHECK(text.rfind("where,phi,rhs,ratio\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 51);

  InvarianceReport inv;
  inv.samples = 2;
  const auto ij = invariance_to_json(inv, 1e-9);
  CHECK(ij["samples"] == 2);
  CHECK(ij["worst_point"].is_null());
}
