#include "siegel/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace siegel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void reject_term(std::size_t index, const std::string& why) {
  std::ostringstream os;
  os << "coefficients[" << index << "]: " << why;
  throw Error(ErrorCode::MalformedInput, os.str());
}

SymMatrix scaled_to_real(const IntMatrix& ns, long level) {
  RealMatrix s(ns.rows(), ns.cols());
  for (std::size_t i = 0; i < ns.rows(); ++i)
    for (std::size_t j = 0; j < ns.cols(); ++j) s(i, j) = static_cast<double>(ns(i, j)) / level;
  return SymMatrix(s, 0.0);
}

double trace_product(const SymMatrix& a, const SymMatrix& b) {
  double t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) t += a(i, j) * b(i, j);
  return t;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

FourierExpansion::FourierExpansion(std::size_t n, int p, long level, double t_max, Rep rep,
                                   std::vector<FourierTerm> terms)
    : n_(n), p_(p), level_(level), t_max_(t_max), rep_(std::move(rep)), terms_(std::move(terms)) {
  if (n == 0 || n > kMaxDegree) throw Error(ErrorCode::MalformedInput, "degree n must be in [1, 8]");
  if (p < 0) throw Error(ErrorCode::MalformedInput, "near-holomorphy degree p must be >= 0");
  if (level <= 0) throw Error(ErrorCode::MalformedInput, "level must be a positive integer");
  if (!(t_max >= 0) || !std::isfinite(t_max)) throw Error(ErrorCode::MalformedInput, "T_max must be finite and >= 0");
  if (rep_.degree() != n) throw Error(ErrorCode::MalformedInput, "representation degree differs from n");

  s_.reserve(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto& term = terms_[t];
    if (term.scaled_index.rows() != n || term.scaled_index.cols() != n) reject_term(t, "S has the wrong shape");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (term.scaled_index(i, j) != term.scaled_index(j, i)) reject_term(t, "S is not symmetric");
    SymMatrix s = scaled_to_real(term.scaled_index, level);
    if (eigenvalues_sym(s).back() < -1e-12) reject_term(t, "S is not positive semidefinite");
    if (s.trace() > t_max + 1e-12) reject_term(t, "Tr S exceeds T_max");
    if (term.beta.dim() != n) reject_term(t, "beta has the wrong degree");
    if (term.beta.degree() > p) reject_term(t, "beta has total degree above p");
    if (!(term.value.key() == rep_.key()) || term.value.size() != rep_.dim()) {
      reject_term(t, "value does not live in the form's representation");
    }
    for (const Complex& c : term.value.coords())
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) reject_term(t, "value is not finite");
    s_.push_back(std::move(s));
  }
}

FourierExpansion FourierExpansion::truncated(double t_max) const {
  if (t_max > t_max_) {
    throw Error(ErrorCode::InvalidArgument, "cannot raise T_max of a truncated expansion");
  }
  std::vector<FourierTerm> kept;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (s_[i].trace() <= t_max + 1e-12) kept.push_back(terms_[i]);
  return FourierExpansion(n_, p_, level_, t_max, rep_, std::move(kept));
}

FormPackage::FormPackage(FourierExpansion expansion, std::vector<SymplecticMatrix> gamma_test_set,
                         CoefficientGrowth growth, std::vector<SymplecticMatrix> coset_representatives)
    : expansion_(std::move(expansion)),
      gamma_test_set_(std::move(gamma_test_set)),
      growth_(growth),
      cosets_(std::move(coset_representatives)) {
  const std::size_t n = expansion_.degree();
  auto check_group = [&](const std::vector<SymplecticMatrix>& set, const char* name) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i].degree() != n || !set[i].is_integral()) {
        std::ostringstream os;
        os << name << "[" << i << "] is not an integral symplectic matrix of degree " << n;
        throw Error(ErrorCode::MalformedInput, os.str());
      }
    }
  };
  check_group(gamma_test_set_, "gamma_test_set");
  check_group(cosets_, "coset_representatives");
  if (cosets_.empty()) cosets_.push_back(SymplecticMatrix::identity(n));

  if (!(growth_.amplitude >= 0) || !std::isfinite(growth_.amplitude) || !std::isfinite(growth_.exponent)) {
    throw Error(ErrorCode::MalformedInput, "growth parameters must be finite with A >= 0");
  }
  const auto& terms = expansion_.terms();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const double a = norm(rep(), terms[t].value);
    const double allowed = growth_.amplitude * std::pow(1.0 + expansion_.index_matrix(t).trace(), growth_.exponent);
    if (a > allowed * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "||a|| = " << a << " exceeds the declared growth bound " << allowed;
      reject_term(t, os.str());
    }
  }
}

FormPackage FormPackage::with_truncation(double t_max) const {
  return FormPackage(expansion_.truncated(t_max), gamma_test_set_, growth_, cosets_);
}

RepVector evaluate(const FourierExpansion& f, const SiegelPoint& z) {
  if (z.degree() != f.degree()) throw Error(ErrorCode::InvalidArgument, "point degree differs from form degree");
  const Rep& rho = f.rep();
  std::optional<SymMatrix> y_inv;
  if (f.nh_degree() > 0) y_inv = inverse_posdef(z.y());

  std::vector<Complex> acc(rho.dim());
  const auto& terms = f.terms();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const SymMatrix& s = f.index_matrix(t);
    const double tr_sx = trace_product(s, z.x());
    const double tr_sy = trace_product(s, z.y());
    // e^{2 pi i Tr(SX)} only depends on Tr(SX) mod 1
    const double frac = tr_sx - std::floor(tr_sx);
    Complex factor = std::exp(-kTwoPi * tr_sy) * Complex(std::cos(kTwoPi * frac), std::sin(kTwoPi * frac));
    if (terms[t].beta.degree() > 0) factor *= monomial(*y_inv, terms[t].beta);
    const auto& c = terms[t].value.coords();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += factor * c[i];
  }
  return RepVector(rho, std::move(acc));
}

double phi(const FourierExpansion& f, const SiegelPoint& z) {
  const SymMatrix root = sqrt_posdef(z.y());
  return norm(f.rep(), apply(f.rep(), to_complex(root.matrix()), evaluate(f, z)));
}

double majorant(const FourierExpansion& f, const MultiIndex& beta, const SymMatrix& y) {
  double r = 0.0;
  const auto& terms = f.terms();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (!(terms[t].beta == beta)) continue;
    r += norm(f.rep(), terms[t].value) * std::exp(-kTwoPi * trace_product(f.index_matrix(t), y));
  }
  return r;
}

FormFunction as_function(const FourierExpansion& f) {
  auto shared = std::make_shared<const FourierExpansion>(f);
  return [shared](const SiegelPoint& z) { return evaluate(*shared, z); };
}

FormFunction slash(const Rep& rho, FormFunction f, const SymplecticMatrix& g) {
  auto rep = std::make_shared<const Rep>(rho);
  return [rep, f = std::move(f), g](const SiegelPoint& z) {
    return apply_inverse(*rep, automorphy_factor(g, z), f(act(g, z)));
  };
}

FormFunction slash(const FormPackage& f, const SymplecticMatrix& g) {
  return slash(f.rep(), as_function(f.expansion()), g);
}

double tail_bound(const FormPackage& f, const SymMatrix& y) {
  const double delta = eigenvalues_sym(y).back();
  if (!(delta > 0)) throw Error(ErrorCode::Divergence, "tail bound needs a positive definite Y");
  const auto& growth = f.growth();
  if (growth.amplitude == 0.0) return 0.0;

  const auto& e = f.expansion();
  const int n = static_cast<int>(e.degree());
  const int entries = n * (n + 1) / 2;
  const double level = static_cast<double>(e.level());
  const int p = e.nh_degree();
  const double monomial_factor = std::max(1.0, std::pow(delta, -p)) * binomial(p + entries, p);

  // count of S with Tr(NS) = m is at most (2m+1)^entries; Tr(SY) >= delta Tr(S)
  auto log_term = [&](double m) {
    return entries * std::log(2.0 * m + 1.0) + std::log(growth.amplitude) +
           growth.exponent * std::log1p(m / level) - kTwoPi * delta * m / level;
  };
  const long m0 = static_cast<long>(std::floor(level * e.t_max() + 1e-9)) + 1;
  constexpr long kMaxTerms = 50'000'000;
  double sum = 0.0;
  double prev = -std::numeric_limits<double>::infinity();
  for (long m = m0; m < m0 + kMaxTerms; ++m) {
    const double lt = log_term(static_cast<double>(m));
    const double term = std::exp(lt);
    sum += term;
    if (lt < prev) {
      // consecutive ratios never increase, so the rest is below a geometric series
      const double ratio = std::exp(lt - prev);
      const double rest = term * ratio / (1.0 - ratio);
      if (rest <= 1e-16 * sum || term == 0.0) return (sum + rest) * monomial_factor;
    }
    prev = lt;
  }
  return std::numeric_limits<double>::infinity();
}

InvarianceReport check_invariance(const FormPackage& f, const std::vector<SiegelPoint>& samples,
                                  double tolerance) {
  InvarianceReport report;
  report.samples = samples.size();
  const Rep& rho = f.rep();
  const auto& e = f.expansion();
  const auto& gammas = f.gamma_test_set();

  for (const auto& z : samples) {
    const RepVector fz = evaluate(e, z);
    const double scale = 1.0 + norm(rho, fz);
    const double tail_here = tail_bound(f, z.y());
    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
      const auto& g = gammas[gi];
      const SiegelPoint gz = act(g, z);
      const ComplexMatrix j_inv = inverse(automorphy_factor(g, z));
      const RepVector slashed = apply(rho, j_inv, evaluate(e, gz));
      const double deviation = norm(rho, slashed - fz) / scale;

      // Frobenius norm of rho(J^{-1}) in an orthonormal basis bounds its operator norm.
      const ComplexMatrix r = rho.matrix(j_inv);
      double op = 0.0;
      for (std::size_t a = 0; a < rho.dim(); ++a)
        for (std::size_t b = 0; b < rho.dim(); ++b)
          op += std::norm(r(a, b)) * rho.basis()[a].norm_sq / rho.basis()[b].norm_sq;
      const double threshold = (std::sqrt(op) * tail_bound(f, gz.y()) + tail_here) / scale + tolerance;

      ++report.checks;
      report.max_threshold = std::max(report.max_threshold, threshold);
      if (deviation > threshold) ++report.violations;
      if (deviation > report.max_deviation || !report.worst_point) {
        report.max_deviation = std::max(report.max_deviation, deviation);
        report.worst_gamma = gi;
        report.worst_point = z;
      }
    }
  }
  return report;
}

long long divisor_sum(int k, long long m) {
  long long s = 0;
  for (long long d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    long long p = 1;
    for (int i = 0; i < k; ++i) p *= d;
    s += p;
  }
  return s;
}

std::vector<IntMatrix> psd_lattice_points(std::size_t n, long max_trace) {
  std::vector<IntMatrix> out;
  const std::size_t entries = n * (n + 1) / 2;
  std::vector<long> v(entries, 0);
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pos.emplace_back(i, j);

  // depth-first over the upper triangle, diagonal entries bounded by the trace budget
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == entries) {
      IntMatrix m(n, n);
      long tr = 0;
      for (std::size_t t = 0; t < entries; ++t) {
        m(pos[t].first, pos[t].second) = v[t];
        m(pos[t].second, pos[t].first) = v[t];
        if (pos[t].first == pos[t].second) tr += v[t];
      }
      if (tr > max_trace) return;
      RealMatrix r(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = static_cast<double>(m(i, j));
      if (eigenvalues_sym(SymMatrix(r)).back() >= -1e-9) out.push_back(std::move(m));
      return;
    }
    const auto [i, j] = pos[k];
    const long lo = i == j ? 0 : -max_trace;
    for (long x = lo; x <= max_trace; ++x) {
      v[k] = x;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

namespace catalog {

namespace {

FourierTerm scalar_term(const Rep& rho, long m, double value) {
  MultiIndex beta(1);
  IntMatrix s(1, 1);
  s(0, 0) = m;
  return FourierTerm{beta, s, RepVector(rho, {Complex(value)})};
}

std::vector<SymplecticMatrix> level_one_generators(std::size_t n) {
  std::vector<SymplecticMatrix> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      SymMatrix b(n);
      b.set(i, j, 1.0);
      gens.push_back(SymplecticMatrix::translation(b));
    }
  gens.push_back(SymplecticMatrix::inversion(n));
  return gens;
}

FormPackage eisenstein(int weight, int t_max, long long scale, CoefficientGrowth growth) {
  const Rep rho = make_rep(1, 0, weight);
  std::vector<FourierTerm> terms{scalar_term(rho, 0, 1.0)};
  for (int m = 1; m <= t_max; ++m) {
    terms.push_back(scalar_term(rho, m, static_cast<double>(scale * divisor_sum(weight - 1, m))));
  }
  FourierExpansion e(1, 0, 1, t_max, rho, std::move(terms));
  return FormPackage(std::move(e), level_one_generators(1), growth);
}

}  // namespace

FormPackage constant_form(const Rep& rho, const RepVector& v0) {
  const std::size_t n = rho.degree();
  FourierTerm term{MultiIndex(n), IntMatrix(n, n), v0};
  FourierExpansion e(n, 0, 1, 0.0, rho, {term});
  std::vector<SymplecticMatrix> gens;
  if (rho.key().j == 0 && rho.key().k == 0) {
    gens = level_one_generators(n);
  } else {
    for (auto& g : level_one_generators(n))
      if (g.c() == RealMatrix(n, n)) gens.push_back(g);
  }
  return FormPackage(std::move(e), std::move(gens), CoefficientGrowth{norm(rho, v0), 0.0});
}

FormPackage zero_form(const Rep& rho) {
  const std::size_t n = rho.degree();
  FourierExpansion e(n, 0, 1, 0.0, rho, {});
  return FormPackage(std::move(e), level_one_generators(n), CoefficientGrowth{0.0, 0.0});
}

FormPackage eisenstein_e4(int t_max) { return eisenstein(4, t_max, 240, {300.0, 3.0}); }

FormPackage eisenstein_e6(int t_max) { return eisenstein(6, t_max, -504, {600.0, 5.0}); }

FormPackage eisenstein_e2_star(int t_max) {
  const Rep rho = make_rep(1, 0, 2);
  std::vector<FourierTerm> terms{scalar_term(rho, 0, 1.0)};
  MultiIndex inv_y(1);
  inv_y.set(0, 0, 1);
  terms.push_back(FourierTerm{inv_y, IntMatrix(1, 1), RepVector(rho, {Complex(-3.0 / std::numbers::pi)})});
  for (int m = 1; m <= t_max; ++m) {
    terms.push_back(scalar_term(rho, m, -24.0 * static_cast<double>(divisor_sum(1, m))));
  }
  FourierExpansion e(1, 1, 1, t_max, rho, std::move(terms));
  return FormPackage(std::move(e), level_one_generators(1), CoefficientGrowth{24.0, 2.0});
}

FormPackage synthetic_degree2(int t_max) {
  constexpr long kLevel = 2;
  const Rep rho = make_rep(2, 2, 2);
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> unit(-0.35, 0.35);
  std::vector<FourierTerm> terms;
  for (const auto& ns : psd_lattice_points(2, kLevel * t_max)) {
    for (const auto& beta : multi_indices_up_to(2, 1)) {
      std::vector<Complex> c(rho.dim());
      for (auto& x : c) x = Complex(unit(rng), unit(rng));
      terms.push_back(FourierTerm{beta, ns, RepVector(rho, std::move(c))});
    }
  }
  FourierExpansion e(2, 1, kLevel, t_max, rho, std::move(terms));
  std::vector<SymplecticMatrix> gens;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = i; j < 2; ++j) {
      SymMatrix b(2);
      b.set(i, j, static_cast<double>(kLevel));
      gens.push_back(SymplecticMatrix::translation(b));
    }
  return FormPackage(std::move(e), std::move(gens), CoefficientGrowth{1.0, 0.0});
}

std::vector<std::string> names() { return {"constant", "zero", "e4", "e6", "e2star", "synthetic2"}; }

FormPackage by_name(const std::string& name, std::optional<int> t_max) {
  if (name == "constant") {
    const Rep rho = make_rep(1, 0, 0);
    return constant_form(rho, RepVector(rho, {Complex(1.0)}));
  }
  if (name == "zero") return zero_form(make_rep(1, 0, 4));
  if (name == "e4") return eisenstein_e4(t_max.value_or(20));
  if (name == "e6") return eisenstein_e6(t_max.value_or(20));
  if (name == "e2star") return eisenstein_e2_star(t_max.value_or(20));
  if (name == "synthetic2") return synthetic_degree2(t_max.value_or(2));
  throw Error(ErrorCode::InvalidArgument, "unknown form name '" + name + "'");
}

}  // namespace catalog

}  // namespace siegel
