// Acceptance sweeps: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "siegel/forms.hpp"
#include "siegel/growth.hpp"
#include "siegel/sampling.hpp"

using namespace siegel;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  double worst = 0.0;

  void expect(bool ok, double measure = 0.0) {
    ++checks;
    if (!ok) ++failures;
    if (std::isfinite(measure)) worst = std::max(worst, measure);
  }
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

const std::vector<std::tuple<std::size_t, int, int>> kReps = {{1, 0, 4}, {2, 2, 0}, {2, 2, 1}, {2, 0, 10}};

ComplexMatrix random_complex(std::size_t n, Rng& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return m;
}

RepVector random_vector(const Rep& rho, Rng& rng) {
  std::vector<Complex> c(rho.dim());
  for (auto& x : c) x = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return RepVector(rho, c);
}

double rel(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs_entry(a - b) / (1.0 + max_abs_entry(b));
}

SweepConfig sweep(std::size_t samples, std::uint64_t seed) {
  SweepConfig c;
  c.samples = samples;
  c.seed = seed;
  return c;
}

Outcome linalg_kernel() {
  Rng rng(101);
  Tally t;
  for (int draw = 0; draw < 1000; ++draw) {
    const std::size_t n = 1 + draw % 4;
    const SymMatrix y = random_spd(n, rng, 1e-3, 1e3);
    const double scale = max_abs_entry(y);
    const auto e = eigen_sym(y);
    RealMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = e.values[i];
    const double recon = max_abs_entry(e.vectors * d * e.vectors.transpose() - y.matrix()) / scale;
    const RealMatrix r = sqrt_posdef(y).matrix();
    const double root = max_abs_entry(r * r - y.matrix()) / scale;
    t.expect(recon <= 1e-10, recon);
    t.expect(root <= 1e-10, root);
  }
  return {t.failures == 0, fmt("%zu checks, max relative residual %.2e", t.checks, t.worst)};
}

Outcome vertical_regions() {
  Rng rng(202);
  Tally entries, monomials;
  for (double delta : {0.1, 1.0, 3.0}) {
    for (int draw = 0; draw < 1000; ++draw) {
      const std::size_t n = 1 + draw % 3;
      // offsets down to 1e-8 put many samples on the boundary of the region
      const SymMatrix y = random_spd(n, rng, 1e-8, 1e2) + delta * SymMatrix::identity(n);
      const SymMatrix inv = inverse_posdef(y);
      const double m = max_abs_entry(inv);
      entries.expect(in_V_delta(y, delta) && m <= 1.0 / delta + 1e-12, m - 1.0 / delta);
      if (delta <= 1.0) {
        for (int p = 1; p <= 3; ++p) {
          for (const auto& beta : multi_indices_up_to(n, p)) {
            if (beta.degree() != p) continue;
            const double v = std::abs(monomial(inv, beta));
            monomials.expect(v <= std::pow(delta, -p) * (1 + 1e-12), v * std::pow(delta, p) - 1.0);
          }
        }
      }
    }
  }
  const bool ok = entries.failures == 0 && monomials.failures == 0;
  return {ok, fmt("%zu entry checks, %zu monomial checks, %zu failures", entries.checks, monomials.checks,
                  entries.failures + monomials.failures)};
}

Outcome representation_suite() {
  Rng rng(303);
  Tally t;
  for (auto [n, j, k] : kReps) {
    const Rep rho = make_rep(n, j, k);
    for (int draw = 0; draw < 1000; ++draw) {
      const ComplexMatrix m1 = random_complex(n, rng), m2 = random_complex(n, rng);
      const RepVector v = random_vector(rho, rng), w = random_vector(rho, rng);

      const RepVector lhs = apply(rho, m1 * m2, v);
      const double hom = norm(rho, lhs - apply(rho, m1, apply(rho, m2, v))) / norm(rho, lhs);
      t.expect(hom <= 1e-9, hom);

      const double before = norm(rho, v);
      const double unit = std::abs(norm(rho, apply(rho, random_unitary(n, rng), v)) - before) / before;
      t.expect(unit <= 1e-9, unit);

      const RepVector mv = apply(rho, m1, v);
      const Complex a = inner(rho, mv, w), b = inner(rho, v, apply(rho, adjoint(m1), w));
      const double adj = std::abs(a - b) / (norm(rho, mv) * norm(rho, w));
      t.expect(adj <= 1e-9, adj);
    }
  }
  return {t.failures == 0, fmt("%zu checks over 4 representations, max relative error %.2e", t.checks, t.worst)};
}

Outcome weight_inequalities() {
  Rng rng(404);
  Tally t, scalar;
  for (auto [n, j, k] : kReps) {
    const Rep rho = make_rep(n, j, k);
    const auto lambda = highest_weight(rho).parts();
    const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    for (int draw = 0; draw < 1000; ++draw) {
      const SymMatrix y = random_spd(n, rng, 1e-1, 1e1);
      const auto mu = eigenvalues_sym(y);
      const RepVector v = random_vector(rho, rng);
      double lower = 1, upper = 1;
      for (std::size_t i = 0; i < n; ++i) {
        lower *= std::pow(mu[i], lambda[n - 1 - i]);
        upper *= std::pow(mu[i], lambda[i]);
      }
      const double nv = norm(rho, v);
      const double image = norm(rho, apply(rho, to_complex(y.matrix()), v));
      t.expect(lower * nv <= image * (1 + 1e-9), lower * nv / image - 1);
      t.expect(image <= upper * nv * (1 + 1e-9), image / (upper * nv) - 1);

      const double c = log_uniform(rng, 1e-1, 1e1);
      const double got = norm(rho, apply(rho, to_complex((c * SymMatrix::identity(n)).matrix()), v));
      const double want = std::pow(c, total) * nv;
      scalar.expect(std::abs(got - want) <= 1e-12 * want, std::abs(got - want) / want);
    }
  }
  const bool ok = t.failures == 0 && scalar.failures == 0;
  return {ok, fmt("%zu inequality checks, %zu scalar checks (max rel %.2e), %zu failures", t.checks, scalar.checks,
                  scalar.worst, t.failures + scalar.failures)};
}

Outcome symplectic_suite() {
  Rng rng(505);
  Tally t;
  for (int draw = 0; draw < 1000; ++draw) {
    const std::size_t n = 1 + draw % 2;
    const SymplecticMatrix g = random_symplectic(n, rng), h = random_symplectic(n, rng);
    const SiegelPoint z = random_adversarial_point(n, rng);
    const double cocycle =
        rel(automorphy_factor(g * h, z), automorphy_factor(g, act(h, z)) * automorphy_factor(h, z));
    t.expect(cocycle <= 1e-9, cocycle);
    t.expect(is_positive_definite(act(g, z).y()));
    const SymplecticMatrix k = random_maximal_compact(n, rng);
    const double knorm = std::abs(group_norm(g * k) - group_norm(g)) / group_norm(g);
    t.expect(knorm <= 1e-9, knorm);
  }
  return {t.failures == 0, fmt("%zu checks, max relative error %.2e", t.checks, t.worst)};
}

Outcome reduction() {
  Rng rng(606);
  Tally t;
  for (std::size_t n = 1; n <= 2; ++n) {
    const double delta = n == 1 ? std::sqrt(3.0) / 2 - 1e-9 : 0.4;
    for (int draw = 0; draw < 10000; ++draw) {
      const SiegelPoint z = random_adversarial_point(n, rng);
      const Reduction red = reduce_to_fundamental(z);
      const double err = rel(act(red.gamma, z).z(), red.reduced.z());
      t.expect(err <= 1e-9, err);
      t.expect(in_V_delta(red.reduced.y(), delta, 0.0));
      t.expect(red.gamma.is_integral());
    }
  }
  return {t.failures == 0, fmt("20000 points, %zu failures, max relative residual %.2e", t.failures, t.worst)};
}

// Sum over beta of R_beta(delta I) delta^{-p}: the bound on |F| over Y >= delta I.
double koecher_certificate(const FormPackage& f, double delta) {
  const std::size_t n = f.expansion().degree();
  const SymMatrix y = delta * SymMatrix::identity(n);
  double total = 0.0;
  for (const auto& beta : multi_indices_up_to(n, f.expansion().nh_degree())) {
    total += (majorant(f.expansion(), beta, y) + tail_bound(f, y)) * std::pow(delta, -beta.degree());
  }
  return total;
}

Outcome koecher() {
  Tally t;
  std::string detail;
  for (const char* name : {"e4", "e2star"}) {
    const FormPackage f = catalog::by_name(name);
    const double cert = koecher_certificate(f, 1.0);
    auto sup_over = [&](int nx, int ny) {
      double s = 0.0;
      for (const auto& z : vertical_strip_grid(1.0, 50.0, nx, ny)) {
        s = std::max(s, norm(f.rep(), evaluate(f.expansion(), z)));
      }
      return s;
    };
    const double coarse = sup_over(32, 30), fine = sup_over(64, 150);
    t.expect(std::isfinite(cert) && fine <= cert);
    // refinement by integer factors contains the coarse grid and must not move the sup
    t.expect(fine >= coarse && fine <= coarse * (1 + 1e-3), fine / coarse - 1);
    Rng rng(707);
    for (int draw = 0; draw < 2000; ++draw) {
      const SiegelPoint z(random_symmetric(1, rng, -5, 5), random_spd(1, rng, 1e-3, 1e2) + SymMatrix::identity(1));
      t.expect(norm(f.rep(), evaluate(f.expansion(), z)) <= cert);
    }
    detail += fmt("%s sup %.6f (bound %.4g); ", name, fine, cert);
  }

  const FormPackage e4 = catalog::eisenstein_e4();
  FormPackage tail_only(e4.expansion(), {}, e4.growth());
  Rng rng(708);
  double worst = 0.0;
  for (int draw = 0; draw < 2000; ++draw) {
    const double x = uniform(rng, -0.5, 0.5), y = 10.0 * log_uniform(rng, 1.0, 100.0);
    const SiegelPoint z(SymMatrix{{x}}, SymMatrix{{y}});
    const double dev = std::abs(evaluate(e4.expansion(), z)[0] - 1.0);
    // certified: stored non-constant terms plus the truncation tail
    const double cert = majorant(e4.expansion(), MultiIndex(1), SymMatrix{{y}}) - 1.0 + tail_bound(tail_only, SymMatrix{{y}});
    t.expect(dev <= 1e-8 && cert <= 1e-8, dev);
    worst = std::max(worst, dev);
  }
  detail += fmt("max |E4 - 1| for y >= 10: %.2e", worst);
  return {t.failures == 0, detail};
}

Outcome invariance() {
  const FormPackage e4 = catalog::eisenstein_e4(20);
  Rng rng(808);
  std::vector<SiegelPoint> pts;
  while (pts.size() < 100) {
    // real parts on a 2^-20 lattice so that x + 1 is exactly representable
    const double x = std::round(uniform(rng, -0.5, 0.5) * 1048576.0) / 1048576.0;
    const double y = uniform(rng, std::sqrt(3.0) / 2, 3.0);
    if (x * x + y * y >= 1.0) pts.emplace_back(SymMatrix{{x}}, SymMatrix{{y}});
  }
  const FormPackage shift(e4.expansion(), {SymplecticMatrix::translation(SymMatrix{{1.0}})}, e4.growth());
  const FormPackage flip(e4.expansion(), {SymplecticMatrix::inversion(1)}, e4.growth());
  const InvarianceReport a = check_invariance(shift, pts), b = check_invariance(flip, pts);
  const bool ok = a.max_deviation == 0.0 && b.max_deviation <= 1e-6 && a.violations == 0 && b.violations == 0;
  return {ok, fmt("translation max deviation %.2e, inversion max deviation %.2e", a.max_deviation, b.max_deviation)};
}

struct FormConstants {
  double e4 = 0.0;
};
FormConstants g_constants;

Outcome bound_sweeps(BoundKind kind) {
  Tally t;
  std::string detail;
  for (const char* name : {"e4", "e6", "e2star"}) {
    const auto start = std::chrono::steady_clock::now();
    const FormPackage f = catalog::by_name(name);
    const ConstantEstimate est = estimate_constant(f, sweep(10000, 11));
    if (std::string(name) == "e4") g_constants.e4 = est.constant;
    const GrowthReport r = verify_growth_bound(f, est.constant, kind, sweep(10000, 12));
    const GrowthReport neg = verify_growth_bound(f, 1e-6, kind, sweep(10000, 12));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    t.expect(r.violations == 0 && r.samples == 10000);
    t.expect(neg.violations > 0);
    t.expect(secs < 120.0);
    detail += fmt("%s C_F=%.4g worst %.3f neg-control %zu/%zu (%.1fs); ", name, est.constant, r.worst_ratio,
                  neg.violations, neg.samples, secs);
  }
  if (kind == BoundKind::Corollary) {
    Rng rng(1010);
    std::size_t checked = 0;
    for (int draw = 0; draw < 10000; ++draw) {
      std::vector<double> y(1 + draw % 4);
      for (auto& v : y) v = log_uniform(rng, 1e-3, 1e3);
      const int lambda = 1 + draw % 6;
      t.expect(elementary_product(y, lambda) <= elementary_majorant(y, lambda) * (1 + 1e-12));
      ++checked;
    }
    detail += fmt("elementary inequality %zu tuples", checked);
  }
  return {t.failures == 0, detail};
}

Outcome moderate_growth() {
  const FormPackage e4 = catalog::eisenstein_e4();
  if (g_constants.e4 == 0.0) g_constants.e4 = estimate_constant(e4, sweep(10000, 11)).constant;
  const RepVector w0 = RepVector::basis(e4.rep(), 0);
  const GrowthReport r = verify_moderate_growth(e4, w0, 2.0, g_constants.e4, sweep(10000, 13));
  std::vector<SymplecticMatrix> ray;
  for (int step = 0; step <= 24; ++step) ray.push_back(diagonal_ray(1, std::pow(2.0, step / 4.0)));
  const GrowthReport rr = verify_moderate_growth(e4, w0, 2.0, g_constants.e4, ray);
  const bool ok = r.violations == 0 && rr.violations == 0 && r.samples == 10000;
  return {ok, fmt("C=%.4g, random worst %.3f, ray worst %.3f over t in [1, 64]", r.constant, r.worst_ratio,
                  rr.worst_ratio)};
}

Outcome lift_consistency() {
  Rng rng(1212);
  Tally t;
  for (const char* name : {"e4", "e2star", "synthetic2"}) {
    const FormPackage f = catalog::by_name(name);
    const std::size_t n = f.expansion().degree();
    for (int draw = 0; draw < 1000; ++draw) {
      const SiegelPoint z = random_adversarial_point(n, rng);
      const double want = phi(f.expansion(), z);
      const double got = norm(f.rep(), lift(f, from_point(z)));
      const double err = want == 0.0 ? got : std::abs(got - want) / want;
      t.expect(err <= 1e-9, err);
    }
  }
  return {t.failures == 0, fmt("%zu points over 3 forms, max relative error %.2e", t.checks, t.worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double time_limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "linear-algebra kernel", 5, linalg_kernel},
      {2, "inverse bounds on vertical regions", 0, vertical_regions},
      {3, "representation identities", 0, representation_suite},
      {4, "weight inequalities", 0, weight_inequalities},
      {5, "symplectic identities", 0, symplectic_suite},
      {6, "reduction to the fundamental domain", 60, reduction},
      {7, "boundedness on vertical regions", 0, koecher},
      {8, "invariance of truncated E4", 0, invariance},
      {9, "eigenvalue growth bound", 360, [] { return bound_sweeps(BoundKind::Theorem); }},
      {10, "trace-determinant growth bound", 360, [] { return bound_sweeps(BoundKind::Corollary); }},
      {11, "moderate growth of the lift", 0, moderate_growth},
      {12, "lift consistency", 0, lift_consistency},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += fmt(" [time limit %.0fs exceeded]", c.time_limit);
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %2d: %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
