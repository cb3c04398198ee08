#include "siegel/growth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "siegel/sampling.hpp"

namespace siegel {

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Theorem: return "theorem";
    case BoundKind::Corollary: return "corollary";
    case BoundKind::ModerateGrowth: return "moderate-growth";
  }
  return "theorem";
}

BoundKind bound_kind_from_string(const std::string& s) {
  if (s == "theorem") return BoundKind::Theorem;
  if (s == "corollary") return BoundKind::Corollary;
  if (s == "moderate-growth" || s == "moderate") return BoundKind::ModerateGrowth;
  throw Error(ErrorCode::InvalidArgument, "unknown bound kind '" + s + "'");
}

double sturm_rhs(const SymMatrix& y, int lambda1) {
  const double half = 0.5 * lambda1;
  double prod = 1.0;
  for (double mu : eigenvalues_sym(y)) {
    if (!(mu > 0)) throw Error(ErrorCode::NotPositiveDefinite, "sturm_rhs needs a positive definite Y");
    prod *= std::pow(mu, half) + std::pow(mu, -half);
  }
  return prod;
}

double corollary_rhs(const SymMatrix& y, int lambda1) {
  const auto mu = eigenvalues_sym(y);
  if (!(mu.back() > 0)) throw Error(ErrorCode::NotPositiveDefinite, "corollary_rhs needs a positive definite Y");
  const double det = std::accumulate(mu.begin(), mu.end(), 1.0, std::multiplies<>());
  const double n = static_cast<double>(y.dim());
  return std::pow(1.0 + y.trace(), n * lambda1) * std::pow(det, -0.5 * lambda1);
}

double elementary_product(std::span<const double> y, int lambda) {
  double prod = 1.0;
  for (double v : y) prod *= 1.0 + std::pow(v, lambda);
  return prod;
}

double elementary_majorant(std::span<const double> y, int lambda) {
  const double sum = std::accumulate(y.begin(), y.end(), 1.0);
  return std::pow(sum, static_cast<double>(y.size()) * lambda);
}

void GrowthReport::merge(const GrowthReport& other) {
  samples += other.samples;
  violations += other.violations;
  const bool other_has_witness = other.worst_point || other.worst_element;
  const bool has_witness = worst_point || worst_element;
  if (other_has_witness && (!has_witness || other.worst_ratio > worst_ratio)) {
    worst_ratio = other.worst_ratio;
    worst_point = other.worst_point;
    worst_element = other.worst_element;
  }
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  for (const auto& row : other.violating) {
    if (violating.size() < kListedViolations) violating.push_back(row);
  }
}

namespace {

// Runs fn(shard) for every shard on a small worker pool; the first exception is rethrown.
template <class Fn>
void for_each_shard(std::size_t shards, Fn fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(shards, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t s; (s = next.fetch_add(1)) < shards;) {
      try {
        fn(s);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::pair<std::size_t, std::size_t> shard_range(std::size_t total, std::size_t shards, std::size_t s) {
  const std::size_t base = total / shards;
  const std::size_t extra = total % shards;
  const std::size_t begin = s * base + std::min(s, extra);
  return {begin, begin + base + (s < extra ? 1 : 0)};
}

std::string render(const RealMatrix& m) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i > 0) os << ';';
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j > 0 ? " " : "") << m(i, j);
  }
  return os.str();
}

std::string render(const SiegelPoint& z) { return render(z.x().matrix()) + " | " + render(z.y().matrix()); }

int top_weight(const FormPackage& f) { return highest_weight(f.rep()).top(); }

double phi_of(const Rep& rho, const FormFunction& fn, const SiegelPoint& z) {
  const SymMatrix root = sqrt_posdef(z.y());
  return norm(rho, apply(rho, to_complex(root.matrix()), fn(z)));
}

GrowthReport blank_report(const FormPackage& f, BoundKind kind, double constant, double tolerance) {
  GrowthReport r;
  r.kind = kind;
  r.constant = constant;
  r.tolerance = tolerance;
  r.t_max = f.expansion().t_max();
  const std::size_t n = f.expansion().degree();
  r.delta = (n <= 2) ? fundamental_domain_delta(n) : 0.0;
  r.exponent_r = 0.5 * top_weight(f);
  return r;
}

// A vanishing value never violates, even against a zero constant.
double bound_ratio(double phi, double rhs, double constant) {
  if (phi == 0.0) return 0.0;
  return phi / (constant * rhs);
}

template <class Where>
void record(GrowthReport& r, double phi, double rhs, double constant, Where where, bool keep_rows) {
  const double ratio = bound_ratio(phi, rhs, constant);
  ++r.samples;
  const bool violated = !(ratio <= 1.0 + r.tolerance);
  if (violated) ++r.violations;
  if (keep_rows || (violated && r.violating.size() < GrowthReport::kListedViolations)) {
    SampleRow row{where(), phi, rhs, ratio};
    if (violated && r.violating.size() < GrowthReport::kListedViolations) r.violating.push_back(row);
    if (keep_rows) r.rows.push_back(std::move(row));
  }
}

GrowthReport check_points(const FormPackage& f, double constant, BoundKind kind,
                          std::span<const SiegelPoint> points, double tolerance, bool keep_rows) {
  GrowthReport r = blank_report(f, kind, constant, tolerance);
  const int lambda1 = top_weight(f);
  for (const auto& z : points) {
    const double value = phi(f.expansion(), z);
    const double rhs = kind == BoundKind::Corollary ? corollary_rhs(z.y(), lambda1) : sturm_rhs(z.y(), lambda1);
    record(r, value, rhs, constant, [&] { return render(z); }, keep_rows);
    const double ratio = bound_ratio(value, rhs, constant);
    if (ratio > r.worst_ratio || !r.worst_point) {
      r.worst_ratio = std::max(r.worst_ratio, ratio);
      r.worst_point = z;
    }
  }
  return r;
}

GrowthReport merge_all(std::vector<GrowthReport>& parts) {
  GrowthReport out = parts.front();
  for (std::size_t s = 1; s < parts.size(); ++s) out.merge(parts[s]);
  return out;
}

struct EstimatePart {
  double sup_ratio = 0.0;
  double det_ratio = 0.0;
  std::size_t samples = 0;
};

EstimatePart estimate_points(const FormPackage& f, std::span<const SiegelPoint> points) {
  const int lambda1 = top_weight(f);
  std::vector<FormFunction> slashed;
  for (const auto& g : f.coset_representatives()) slashed.push_back(slash(f, g));
  EstimatePart part;
  for (const auto& z : points) {
    const double rhs = sturm_rhs(z.y(), lambda1);
    const double det_pow = std::pow(det(z.y()), 0.5 * lambda1);
    for (const auto& fn : slashed) {
      const double value = phi_of(f.rep(), fn, z);
      part.sup_ratio = std::max(part.sup_ratio, value / rhs);
      part.det_ratio = std::max(part.det_ratio, value / det_pow);
    }
    ++part.samples;
  }
  return part;
}

ConstantEstimate finish_estimate(const FormPackage& f, const std::vector<EstimatePart>& parts, double safety) {
  ConstantEstimate est;
  for (const auto& p : parts) {
    est.sup_ratio = std::max(est.sup_ratio, p.sup_ratio);
    est.det_ratio = std::max(est.det_ratio, p.det_ratio);
    est.samples += p.samples;
  }
  est.constant = safety * est.sup_ratio;
  est.delta = fundamental_domain_delta(f.expansion().degree());
  return est;
}

void check_exponent(const FormPackage& f, double r) {
  if (!(r >= minimal_exponent(f) - 1e-12)) {
    std::ostringstream os;
    os << "r = " << r << " is below n*lambda1/2 = " << minimal_exponent(f);
    throw Error(ErrorCode::InvalidExponent, os.str());
  }
}

GrowthReport check_elements(const FormPackage& f, const RepVector& w0, double r, double c,
                            std::span<const SymplecticMatrix> elements, double tolerance, bool keep_rows) {
  GrowthReport rep = blank_report(f, BoundKind::ModerateGrowth, c, tolerance);
  rep.exponent_r = r;
  for (const auto& g : elements) {
    const double lhs = std::abs(lift_functional(f, g, w0));
    const double norm_sq = group_norm(g) * group_norm(g);
    const double rhs = std::pow(norm_sq, r);
    record(rep, lhs, rhs, c, [&] { return render(g.matrix()); }, keep_rows);
    const double ratio = bound_ratio(lhs, rhs, c);
    if (ratio > rep.worst_ratio || !rep.worst_element) {
      rep.worst_ratio = std::max(rep.worst_ratio, ratio);
      rep.worst_element = g;
    }
  }
  return rep;
}

}  // namespace

ConstantEstimate estimate_constant(const FormPackage& f, const std::vector<SiegelPoint>& fundamental_points,
                                   double safety_factor) {
  return finish_estimate(f, {estimate_points(f, fundamental_points)}, safety_factor);
}

ConstantEstimate estimate_constant(const FormPackage& f, const SweepConfig& config) {
  const std::size_t n = f.expansion().degree();
  std::vector<EstimatePart> parts(config.shards);
  for_each_shard(config.shards, [&](std::size_t s) {
    const auto [begin, end] = shard_range(config.samples, config.shards, s);
    Rng rng(shard_seed(config.seed, s));
    std::vector<SiegelPoint> pts;
    for (std::size_t i = begin; i < end; ++i) pts.push_back(random_fundamental_point(n, rng));
    parts[s] = estimate_points(f, pts);
  });
  return finish_estimate(f, parts, config.safety_factor);
}

GrowthReport verify_growth_bound(const FormPackage& f, double constant, BoundKind kind,
                                 const std::vector<SiegelPoint>& samples, double tolerance, bool keep_rows) {
  if (!(constant >= 0)) throw Error(ErrorCode::InvalidArgument, "bound constant must be non-negative");
  if (kind == BoundKind::ModerateGrowth) {
    throw Error(ErrorCode::InvalidArgument, "use verify_moderate_growth for the moderate-growth bound");
  }
  const std::size_t shards = std::min<std::size_t>(16, std::max<std::size_t>(1, samples.size()));
  std::vector<GrowthReport> parts(shards);
  for_each_shard(shards, [&](std::size_t s) {
    const auto [begin, end] = shard_range(samples.size(), shards, s);
    parts[s] = check_points(f, constant, kind, std::span(samples).subspan(begin, end - begin), tolerance, keep_rows);
  });
  return merge_all(parts);
}

GrowthReport verify_growth_bound(const FormPackage& f, double constant, BoundKind kind, const SweepConfig& config) {
  if (!(constant >= 0)) throw Error(ErrorCode::InvalidArgument, "bound constant must be non-negative");
  if (kind == BoundKind::ModerateGrowth) {
    throw Error(ErrorCode::InvalidArgument, "use verify_moderate_growth for the moderate-growth bound");
  }
  const std::size_t n = f.expansion().degree();
  std::vector<GrowthReport> parts(config.shards);
  for_each_shard(config.shards, [&](std::size_t s) {
    const auto [begin, end] = shard_range(config.samples, config.shards, s);
    Rng rng(shard_seed(config.seed, s));
    std::vector<SiegelPoint> pts;
    for (std::size_t i = begin; i < end; ++i) pts.push_back(random_adversarial_point(n, rng));
    parts[s] = check_points(f, constant, kind, pts, config.tolerance, config.keep_rows);
  });
  GrowthReport out = merge_all(parts);
  out.seed = config.seed;
  return out;
}

RepVector lift(const FormPackage& f, const SymplecticMatrix& g) {
  const SiegelPoint base = SiegelPoint::i_identity(f.expansion().degree());
  return apply_inverse(f.rep(), automorphy_factor(g, base), evaluate(f.expansion(), act(g, base)));
}

Complex lift_functional(const FormPackage& f, const SymplecticMatrix& g, const RepVector& w0) {
  return inner(f.rep(), lift(f, g), w0);
}

double moderate_growth_constant(const FormPackage& f, const RepVector& w0, double constant_f, double safety_factor) {
  return norm(f.rep(), w0) * constant_f * safety_factor;
}

double minimal_exponent(const FormPackage& f) {
  return 0.5 * static_cast<double>(f.expansion().degree()) * top_weight(f);
}

GrowthReport verify_moderate_growth(const FormPackage& f, const RepVector& w0, double r, double constant_f,
                                    const std::vector<SymplecticMatrix>& samples, double tolerance,
                                    bool keep_rows, double safety_factor) {
  check_exponent(f, r);
  const double c = moderate_growth_constant(f, w0, constant_f, safety_factor);
  return check_elements(f, w0, r, c, samples, tolerance, keep_rows);
}

GrowthReport verify_moderate_growth(const FormPackage& f, const RepVector& w0, double r, double constant_f,
                                    const SweepConfig& config) {
  check_exponent(f, r);
  const double c = moderate_growth_constant(f, w0, constant_f, config.safety_factor);
  const std::size_t n = f.expansion().degree();
  std::vector<GrowthReport> parts(config.shards);
  for_each_shard(config.shards, [&](std::size_t s) {
    const auto [begin, end] = shard_range(config.samples, config.shards, s);
    Rng rng(shard_seed(config.seed, s));
    std::vector<SymplecticMatrix> gs;
    for (std::size_t i = begin; i < end; ++i) {
      const SiegelPoint z = random_adversarial_point(n, rng);
      gs.push_back(from_point(z) * random_maximal_compact(n, rng));
    }
    parts[s] = check_elements(f, w0, r, c, gs, config.tolerance, config.keep_rows);
  });
  GrowthReport out = merge_all(parts);
  out.seed = config.seed;
  return out;
}

}  // namespace siegel
