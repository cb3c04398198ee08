#include "siegel/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "siegel/form_io.hpp"
#include "siegel/forms.hpp"
#include "siegel/growth.hpp"
#include "siegel/report.hpp"
#include "siegel/sampling.hpp"

namespace siegel::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string form_path;
  std::string name;
  std::string points_path;
  std::string z;
  std::size_t samples = 10000;
  std::size_t check_samples = 100;
  std::uint64_t seed = 1;
  std::optional<double> delta;
  std::optional<int> tmax;
  double tol = 1e-9;
  std::string out_path;
  std::string format = "json";
  std::optional<double> constant;
  std::string kind = "theorem";
  std::optional<double> r;
  std::string w0;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("cannot parse '" + item + "' in " + what);
    }
  }
  return v;
}

// Accepts n(n+1)/2 upper-triangular or n*n row-major entries.
SymMatrix parse_sym(const std::vector<double>& v, const std::string& what) {
  for (std::size_t n = 1; n <= kMaxDegree; ++n) {
    if (v.size() == n * (n + 1) / 2) {
      SymMatrix s(n);
      std::size_t t = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) s.set(i, j, v[t++]);
      return s;
    }
    if (v.size() == n * n) {
      RealMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
      try {
        return SymMatrix(m);
      } catch (const Error& e) {
        throw InputError(what + ": " + e.what());
      }
    }
  }
  throw InputError(what + ": entry count matches no supported degree");
}

SiegelPoint parse_point_flag(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw InputError("--z expects \"x entries;y entries\"");
  const SymMatrix x = parse_sym(parse_numbers(text.substr(0, semi), "--z"), "--z real part");
  const SymMatrix y = parse_sym(parse_numbers(text.substr(semi + 1), "--z"), "--z imaginary part");
  if (x.dim() != y.dim()) throw InputError("--z: real and imaginary parts differ in size");
  try {
    return SiegelPoint(x, y);
  } catch (const Error& e) {
    throw InputError(std::string("--z: ") + e.what());
  }
}

SymMatrix sym_from_json(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw InputError(where + ": expected a square matrix");
  const std::size_t n = v.size();
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].is_array() || v[i].size() != n) throw InputError(where + ": expected a square matrix");
    for (std::size_t j = 0; j < n; ++j) {
      if (!v[i][j].is_number()) throw InputError(where + ": non-numeric entry");
      m(i, j) = v[i][j].get<double>();
    }
  }
  try {
    return SymMatrix(m);
  } catch (const Error& e) {
    throw InputError(where + ": " + e.what());
  }
}

std::vector<SiegelPoint> load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open points file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  if (!doc.is_array()) throw InputError(path + ": expected a list of {\"x\", \"y\"} objects");
  std::vector<SiegelPoint> pts;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string where = path + "[" + std::to_string(i) + "]";
    if (!doc[i].is_object() || !doc[i].contains("x") || !doc[i].contains("y")) {
      throw InputError(where + ": expected {\"x\", \"y\"}");
    }
    try {
      pts.emplace_back(sym_from_json(doc[i]["x"], where + ".x"), sym_from_json(doc[i]["y"], where + ".y"));
    } catch (const Error& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return pts;
}

std::vector<SiegelPoint> requested_points(const Options& o) {
  if (!o.points_path.empty() && !o.z.empty()) throw InputError("give either --points or --z, not both");
  if (!o.points_path.empty()) return load_points(o.points_path);
  if (!o.z.empty()) return {parse_point_flag(o.z)};
  throw InputError("no points given; use --points or --z");
}

FormPackage load_package(const Options& o) {
  if (o.form_path.empty() == o.name.empty()) throw InputError("give exactly one of --form or --name");
  if (!o.name.empty()) {
    try {
      return catalog::by_name(o.name, o.tmax);
    } catch (const Error& e) {
      throw InputError(e.what());
    }
  }
  FormPackage f = load_form(o.form_path);
  if (o.tmax) {
    if (*o.tmax > f.expansion().t_max()) throw InputError("--tmax exceeds the stored truncation");
    f = f.with_truncation(*o.tmax);
  }
  return f;
}

void check_points_degree(const FormPackage& f, const std::vector<SiegelPoint>& pts) {
  for (const auto& z : pts) {
    if (z.degree() != f.expansion().degree()) throw InputError("point degree does not match the form");
  }
}

class Sink {
 public:
  Sink(const Options& o, std::ostream& fallback) : fallback_(fallback) {
    if (!o.out_path.empty()) {
      file_.open(o.out_path);
      if (!file_) throw InputError("cannot write " + o.out_path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void emit(const json& doc, const Options& o, std::ostream& out) {
  Sink sink(o, out);
  sink.stream() << doc.dump(2) << '\n';
}

void emit_report(const GrowthReport& r, const Options& o, std::ostream& out, double safety) {
  Sink sink(o, out);
  if (o.format == "csv") {
    write_csv(sink.stream(), r);
  } else {
    sink.stream() << report_to_json(r, safety).dump(2) << '\n';
  }
}

int cmd_eval(const Options& o, std::ostream& out) {
  const FormPackage f = load_package(o);
  const auto pts = requested_points(o);
  check_points_degree(f, pts);
  json rows = json::array();
  for (const auto& z : pts) {
    rows.push_back({{"point", point_to_json(z)},
                    {"value", vector_to_json(evaluate(f.expansion(), z))},
                    {"phi", phi(f.expansion(), z)}});
  }
  emit(rows, o, out);
  return 0;
}

int cmd_reduce(const Options& o, std::ostream& out, std::ostream& err) {
  const auto pts = requested_points(o);
  json rows = json::array();
  int status = 0;
  for (const auto& z : pts) {
    if (z.degree() > 2) throw InputError("reduction supports degree 1 and 2 only");
    const Reduction red = reduce_to_fundamental(z);
    const double residual = point_distance(act(red.gamma, z), red.reduced);
    const double scale = 1.0 + max_abs_entry(red.reduced.z());
    const bool consistent = residual <= 1e-9 * scale;
    if (!consistent) {
      err << "reduction residual " << residual << " exceeds tolerance\n";
      status = 1;
    }
    rows.push_back({{"point", point_to_json(z)},
                    {"gamma", matrix_to_json(red.gamma.matrix())},
                    {"reduced", point_to_json(red.reduced)},
                    {"steps", red.steps},
                    {"residual", residual}});
  }
  emit(rows, o, out);
  return status;
}

double resolve_constant(const FormPackage& f, const Options& o, const SweepConfig& cfg) {
  if (o.constant) {
    if (!(*o.constant >= 0)) throw InputError("--constant must be non-negative");
    return *o.constant;
  }
  return estimate_constant(f, cfg).constant;
}

SweepConfig sweep_config(const Options& o) {
  if (o.samples == 0) throw InputError("--samples must be positive");
  if (o.format != "json" && o.format != "csv") throw InputError("--format must be json or csv");
  SweepConfig cfg;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.tolerance = o.tol;
  cfg.keep_rows = o.format == "csv";
  return cfg;
}

// The verification sweep draws from a seed distinct from the constant estimate.
SweepConfig fresh(SweepConfig cfg) {
  cfg.seed = shard_seed(cfg.seed, 0xfeedULL);
  return cfg;
}

int cmd_bound(const Options& o, std::ostream& out, std::ostream& err) {
  const FormPackage f = load_package(o);
  BoundKind kind;
  try {
    kind = bound_kind_from_string(o.kind);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  if (kind == BoundKind::ModerateGrowth) throw InputError("use the moderate subcommand for moderate growth");
  const SweepConfig cfg = sweep_config(o);
  const double c = resolve_constant(f, o, cfg);
  GrowthReport r = verify_growth_bound(f, c, kind, fresh(cfg));
  r.seed = cfg.seed;
  if (o.delta) r.delta = *o.delta;
  emit_report(r, o, out, cfg.safety_factor);
  if (r.violations > 0) err << r.violations << " of " << r.samples << " samples violate the bound\n";
  return r.violations == 0 ? 0 : 1;
}

RepVector parse_w0(const Rep& rho, const std::string& text) {
  if (text.empty()) return RepVector::basis(rho, 0);
  std::vector<Complex> c;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto colon = item.find(':');
    const double re = parse_numbers(item.substr(0, colon), "--w0").at(0);
    const double im = colon == std::string::npos ? 0.0 : parse_numbers(item.substr(colon + 1), "--w0").at(0);
    c.emplace_back(re, im);
  }
  if (c.size() != rho.dim()) throw InputError("--w0 needs " + std::to_string(rho.dim()) + " entries");
  return RepVector(rho, std::move(c));
}

int cmd_moderate(const Options& o, std::ostream& out, std::ostream& err) {
  const FormPackage f = load_package(o);
  const SweepConfig cfg = sweep_config(o);
  const RepVector w0 = parse_w0(f.rep(), o.w0);
  const double r = o.r.value_or(minimal_exponent(f));
  if (r < minimal_exponent(f) - 1e-12) {
    throw InputError("--r must be at least " + std::to_string(minimal_exponent(f)));
  }
  const double cf = resolve_constant(f, o, cfg);
  GrowthReport rep = verify_moderate_growth(f, w0, r, cf, fresh(cfg));
  rep.seed = cfg.seed;
  if (o.delta) rep.delta = *o.delta;
  emit_report(rep, o, out, cfg.safety_factor);
  if (rep.violations > 0) err << rep.violations << " of " << rep.samples << " samples violate the bound\n";
  return rep.violations == 0 ? 0 : 1;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const FormPackage f = load_package(o);
  const std::size_t n = f.expansion().degree();
  std::vector<SiegelPoint> pts;
  if (!o.points_path.empty() || !o.z.empty()) {
    pts = requested_points(o);
    check_points_degree(f, pts);
  } else {
    if (o.check_samples == 0) throw InputError("--samples must be positive");
    const double delta = o.delta.value_or(fundamental_domain_delta(std::min<std::size_t>(n, 2)));
    if (!(delta > 0)) throw InputError("--delta must be positive");
    Rng rng(o.seed);
    for (std::size_t i = 0; i < o.check_samples; ++i) {
      SymMatrix y = random_spd(n, rng, 1e-2, 1e1) + delta * SymMatrix::identity(n);
      pts.emplace_back(random_symmetric(n, rng, -0.5, 0.5), std::move(y));
    }
  }
  const InvarianceReport r = check_invariance(f, pts, o.tol);
  emit(invariance_to_json(r, o.tol), o, out);
  if (r.violations > 0) err << r.violations << " of " << r.checks << " invariance checks failed\n";
  return r.violations == 0 ? 0 : 1;
}

int cmd_generate(const Options& o, std::ostream& out) {
  if (o.name.empty()) throw InputError("generate needs --name");
  FormPackage f = load_package(o);
  const json doc = form_to_json(f);
  emit(doc, o, out);
  return 0;
}

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::MalformedInput:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidExponent:
    case ErrorCode::MismatchedRep:
    case ErrorCode::UnsupportedWeight:
    case ErrorCode::NonIntegral:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical growth-bound verification for nearly holomorphic Siegel modular forms"};
  app.require_subcommand(1);
  Options o;

  auto add_form = [&](CLI::App* sub) {
    sub->add_option("--form", o.form_path, "Form package JSON file");
    sub->add_option("--name", o.name, "Built-in form: constant, zero, e4, e6, e2star, synthetic2");
    sub->add_option("--tmax", o.tmax, "Truncate the expansion at Tr S <= T");
  };
  auto add_points = [&](CLI::App* sub) {
    sub->add_option("--points", o.points_path, "JSON list of {\"x\": matrix, \"y\": matrix}");
    sub->add_option("--z", o.z, "Inline point \"x11,x12,x22;y11,y12,y22\" (upper triangle or full)");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Output path (default stdout)");
  };
  auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--samples", o.samples, "Sample count");
    sub->add_option("--seed", o.seed, "64-bit RNG seed");
    sub->add_option("--tol", o.tol, "Relative tolerance on ratios");
    sub->add_option("--delta", o.delta, "Recorded vertical-region bound");
    sub->add_option("--constant", o.constant, "Bound constant; estimated on the fundamental domain when omitted");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* eval = app.add_subcommand("eval", "Evaluate F(Z) and phi(F, Z)");
  add_form(eval);
  add_points(eval);
  add_output(eval);

  auto* reduce = app.add_subcommand("reduce", "Reduce points into the fundamental domain");
  add_points(reduce);
  add_output(reduce);

  auto* bound = app.add_subcommand("bound", "Verify the eigenvalue or corollary growth bound");
  add_form(bound);
  add_output(bound);
  add_sweep(bound);
  bound->add_option("--kind", o.kind, "theorem or corollary");

  auto* moderate = app.add_subcommand("moderate", "Verify moderate growth of the lift");
  add_form(moderate);
  add_output(moderate);
  add_sweep(moderate);
  moderate->add_option("--r", o.r, "Exponent r (default n*lambda1/2)");
  moderate->add_option("--w0", o.w0, "Test vector as re[:im],... (default highest weight vector)");

  auto* check = app.add_subcommand("check", "Check invariance under the form's test set");
  add_form(check);
  add_points(check);
  add_output(check);
  check->add_option("--samples", o.check_samples, "Random sample count when no points are given");
  check->add_option("--seed", o.seed, "64-bit RNG seed");
  check->add_option("--tol", o.tol, "Tolerance added to the truncation threshold");
  check->add_option("--delta", o.delta, "Random samples satisfy Im Z >= delta I");

  auto* generate = app.add_subcommand("generate", "Write a built-in form as a JSON package");
  add_form(generate);
  add_output(generate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (reduce->parsed()) return cmd_reduce(o, out, err);
    if (bound->parsed()) return cmd_bound(o, out, err);
    if (moderate->parsed()) return cmd_moderate(o, out, err);
    if (check->parsed()) return cmd_check(o, out, err);
    if (generate->parsed()) return cmd_generate(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace siegel::cli
