#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "siegel/linalg.hpp"
#include "siegel/rep.hpp"
#include "siegel/symplectic.hpp"

namespace siegel {

/// One coefficient a_beta(F, S) of a nice Fourier expansion.
struct FourierTerm {
  MultiIndex beta;
  IntMatrix scaled_index;  // N*S, integral and symmetric
  RepVector value;
};

/// Truncated expansion
///   F(Z) = sum_{beta, S} a_beta(F, S) e^{2 pi i Tr(SZ)} [Y^{-1}]^beta
/// over positive semidefinite S in (1/N) Sym_n(Z) with Tr S <= t_max.
class FourierExpansion {
 public:
  /// Validates every term; the diagnostic of a rejected term names its index.
  FourierExpansion(std::size_t n, int p, long level, double t_max, Rep rep,
                   std::vector<FourierTerm> terms);

  std::size_t degree() const noexcept { return n_; }
  int nh_degree() const noexcept { return p_; }
  long level() const noexcept { return level_; }
  double t_max() const noexcept { return t_max_; }
  const Rep& rep() const noexcept { return rep_; }
  const std::vector<FourierTerm>& terms() const noexcept { return terms_; }

  /// S = (N*S) / N for term i.
  const SymMatrix& index_matrix(std::size_t i) const { return s_[i]; }

  /// Same expansion restricted to Tr S <= t_max (which must not exceed the current bound).
  FourierExpansion truncated(double t_max) const;

 private:
  std::size_t n_;
  int p_;
  long level_;
  double t_max_;
  Rep rep_;
  std::vector<FourierTerm> terms_;
  std::vector<SymMatrix> s_;
};

/// Declared coefficient growth ||a_beta(F, S)|| <= amplitude * (1 + Tr S)^exponent.
struct CoefficientGrowth {
  double amplitude = 0.0;
  double exponent = 0.0;
};

/// An expansion together with the data needed to test its modularity.
class FormPackage {
 public:
  /// Throws MalformedInput if the test set is not integral symplectic of the
  /// right degree, or if a stored coefficient exceeds the declared growth.
  FormPackage(FourierExpansion expansion, std::vector<SymplecticMatrix> gamma_test_set,
              CoefficientGrowth growth, std::vector<SymplecticMatrix> coset_representatives = {});

  const FourierExpansion& expansion() const noexcept { return expansion_; }
  const Rep& rep() const noexcept { return expansion_.rep(); }
  const std::vector<SymplecticMatrix>& gamma_test_set() const noexcept { return gamma_test_set_; }
  /// Representatives of Gamma \ Sp_2n(Z); {identity} unless supplied.
  const std::vector<SymplecticMatrix>& coset_representatives() const noexcept { return cosets_; }
  const CoefficientGrowth& growth() const noexcept { return growth_; }

  FormPackage with_truncation(double t_max) const;

 private:
  FourierExpansion expansion_;
  std::vector<SymplecticMatrix> gamma_test_set_;
  CoefficientGrowth growth_;
  std::vector<SymplecticMatrix> cosets_;
};

RepVector evaluate(const FourierExpansion& f, const SiegelPoint& z);

/// ||rho(Y^{1/2}) F(Z)||
double phi(const FourierExpansion& f, const SiegelPoint& z);

/// R_beta(Y) over the stored terms: sum of ||a_beta(F, S)|| e^{-2 pi Tr(SY)}.
double majorant(const FourierExpansion& f, const MultiIndex& beta, const SymMatrix& y);

/// Pointwise V-valued function on H_n.
using FormFunction = std::function<RepVector(const SiegelPoint&)>;

FormFunction as_function(const FourierExpansion& f);

/// Z -> rho(J(g, Z))^{-1} f(gZ)
FormFunction slash(const Rep& rho, FormFunction f, const SymplecticMatrix& g);
FormFunction slash(const FormPackage& f, const SymplecticMatrix& g);

/// Upper bound on the norm of the discarded part of the expansion (Tr S > t_max)
/// at imaginary part Y, from the declared coefficient growth.
double tail_bound(const FormPackage& f, const SymMatrix& y);

struct InvarianceReport {
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double max_deviation = 0.0;
  /// Largest allowed deviation: truncation tails at Z and gamma Z, plus tolerance.
  double max_threshold = 0.0;
  std::optional<std::size_t> worst_gamma;
  std::optional<SiegelPoint> worst_point;
};

/// Relative deviation ||(F|gamma)(Z) - F(Z)|| / (1 + ||F(Z)||) for every gamma
/// in the test set and every sample; a check fails when the deviation exceeds
/// the truncation threshold plus `tolerance`.
InvarianceReport check_invariance(const FormPackage& f, const std::vector<SiegelPoint>& samples,
                                  double tolerance = 1e-9);

/// Sum of divisors d^k of m, by trial division.
long long divisor_sum(int k, long long m);

namespace catalog {

/// v0 at every point, for any representation.
FormPackage constant_form(const Rep& rho, const RepVector& v0);
FormPackage zero_form(const Rep& rho);
/// Degree-one Eisenstein series of weight 4 and 6, truncated at q^{t_max}.
FormPackage eisenstein_e4(int t_max = 20);
FormPackage eisenstein_e6(int t_max = 20);
/// E2*(z) = 1 - 3/(pi y) - 24 sum sigma_1(m) q^m, nearly holomorphic of degree 1.
FormPackage eisenstein_e2_star(int t_max = 20);
/// Degree-two, Sym^2 ⊗ det^2, level 2, p = 1 coefficient set with reproducible
/// pseudo-random values. Not a modular form; only translations by 2 are symmetries.
FormPackage synthetic_degree2(int t_max = 2);

/// Names accepted by `by_name`.
std::vector<std::string> names();
FormPackage by_name(const std::string& name, std::optional<int> t_max = std::nullopt);

}  // namespace catalog

/// Integral symmetric positive semidefinite n x n matrices with trace <= max_trace.
std::vector<IntMatrix> psd_lattice_points(std::size_t n, long max_trace);

}  // namespace siegel
