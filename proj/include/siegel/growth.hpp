#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "siegel/forms.hpp"
#include "siegel/rep.hpp"
#include "siegel/symplectic.hpp"

namespace siegel {

enum class BoundKind { Theorem, Corollary, ModerateGrowth };

const char* to_string(BoundKind kind);
BoundKind bound_kind_from_string(const std::string& s);

/// prod_i (mu_i^{lambda1/2} + mu_i^{-lambda1/2}) over the eigenvalues of Y.
double sturm_rhs(const SymMatrix& y, int lambda1);

/// (1 + Tr Y)^{n lambda1} (det Y)^{-lambda1/2}
double corollary_rhs(const SymMatrix& y, int lambda1);

/// prod_i (1 + y_i^lambda) and (1 + sum_i y_i)^{n lambda}; the first never exceeds the second.
double elementary_product(std::span<const double> y, int lambda);
double elementary_majorant(std::span<const double> y, int lambda);

struct SampleRow {
  std::string where;  // compact rendering of Z or g
  double phi = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct GrowthReport {
  BoundKind kind = BoundKind::Theorem;
  double constant = 0.0;
  double exponent_r = 0.0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;
  std::optional<SiegelPoint> worst_point;
  std::optional<SymplecticMatrix> worst_element;
  double tolerance = 1e-9;
  double delta = 0.0;
  double t_max = 0.0;
  std::uint64_t seed = 0;
  std::vector<SampleRow> rows;
  /// The first kListedViolations violating samples in sweep order.
  std::vector<SampleRow> violating;

  static constexpr std::size_t kListedViolations = 20;

  /// Aggregates another shard's counts and extremum; ties keep this report's witness.
  void merge(const GrowthReport& other);
};

struct SweepConfig {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  /// Ratios above 1 + tolerance are violations.
  double tolerance = 1e-9;
  double safety_factor = 1.25;
  bool keep_rows = false;
  /// Fixed shard count keeps results independent of the number of threads.
  std::size_t shards = 16;
};

struct ConstantEstimate {
  /// safety_factor * sup of phi(F|gamma_r, Z) / sturm_rhs(Im Z)
  double constant = 0.0;
  double sup_ratio = 0.0;
  /// sup of phi(F|gamma_r, Z) / det(Im Z)^{lambda1/2}: the hypothesis constant of the
  /// transfer from the fundamental domain to all of H_n. Diagnostic only.
  double det_ratio = 0.0;
  std::size_t samples = 0;
  double delta = 0.0;
};

/// Fundamental-domain sweep: adversarial points are reduced and phi of every
/// coset-slashed form is compared against sturm_rhs.
ConstantEstimate estimate_constant(const FormPackage& f, const SweepConfig& config);
ConstantEstimate estimate_constant(const FormPackage& f, const std::vector<SiegelPoint>& fundamental_points,
                                   double safety_factor = 1.25);

GrowthReport verify_growth_bound(const FormPackage& f, double constant, BoundKind kind,
                                 const std::vector<SiegelPoint>& samples, double tolerance = 1e-9,
                                 bool keep_rows = false);
/// Draws config.samples adversarial points.
GrowthReport verify_growth_bound(const FormPackage& f, double constant, BoundKind kind, const SweepConfig& config);

/// rho(J(g, iI))^{-1} F(g iI)
RepVector lift(const FormPackage& f, const SymplecticMatrix& g);

/// Phi(g) = <lift(F, g), w0>
Complex lift_functional(const FormPackage& f, const SymplecticMatrix& g, const RepVector& w0);

/// ||w0|| * constant_f * safety_factor
double moderate_growth_constant(const FormPackage& f, const RepVector& w0, double constant_f,
                                double safety_factor = 1.25);

/// Checks |Phi(g)| <= C Tr(gᵀg)^r; throws InvalidExponent when r < n lambda1 / 2.
GrowthReport verify_moderate_growth(const FormPackage& f, const RepVector& w0, double r, double constant_f,
                                    const std::vector<SymplecticMatrix>& samples, double tolerance = 1e-9,
                                    bool keep_rows = false, double safety_factor = 1.25);
/// Draws g = from_point(Z) k over adversarial Z and random maximal-compact k.
GrowthReport verify_moderate_growth(const FormPackage& f, const RepVector& w0, double r, double constant_f,
                                    const SweepConfig& config);

/// Smallest admissible moderate-growth exponent n lambda1 / 2.
double minimal_exponent(const FormPackage& f);

}  // namespace siegel
