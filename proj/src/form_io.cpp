#include "siegel/form_io.hpp"

#include <fstream>
#include <sstream>

namespace siegel {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& where, const std::string& why) {
  throw Error(ErrorCode::MalformedInput, where + ": " + why);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) malformed(where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) malformed(where, "expected an integer");
  return v.get<long>();
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) malformed(where, "expected a number");
  return v.get<double>();
}

IntMatrix int_matrix(const json& v, std::size_t rows, const std::string& where) {
  if (!v.is_array() || v.size() != rows) malformed(where, "expected a " + std::to_string(rows) + "-row matrix");
  IntMatrix m(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = v[i];
    if (!row.is_array() || row.size() != rows) malformed(where, "row " + std::to_string(i) + " has the wrong length");
    for (std::size_t j = 0; j < rows; ++j) {
      m(i, j) = integer(row[j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  return m;
}

SymplecticMatrix group_element(const json& v, std::size_t n, const std::string& where) {
  const IntMatrix m = int_matrix(v, 2 * n, where);
  RealMatrix g(2 * n, 2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) g(i, j) = static_cast<double>(m(i, j));
  try {
    return SymplecticMatrix(std::move(g));
  } catch (const Error& e) {
    malformed(where, e.what());
  }
}

MultiIndex parse_beta(const json& v, std::size_t n, const std::string& where) {
  if (!v.is_object()) malformed(where, "beta must be an object mapping \"i,j\" to exponents");
  MultiIndex beta(n);
  for (const auto& [key, val] : v.items()) {
    std::size_t i = 0, j = 0;
    char comma = 0;
    std::istringstream is(key);
    if (!(is >> i >> comma >> j) || comma != ',' || !is.eof() || i < 1 || j < i || j > n) {
      malformed(where, "invalid beta key '" + key + "'");
    }
    const long e = integer(val, where + "." + key);
    if (e < 0) malformed(where, "negative exponent for '" + key + "'");
    beta.set(i - 1, j - 1, static_cast<int>(e));
  }
  return beta;
}

json int_matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json group_to_json(const SymplecticMatrix& g) {
  const RealMatrix& m = g.matrix();
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(std::lround(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

FormPackage form_from_json(const json& doc) {
  if (!doc.is_object()) malformed("form", "top level must be an object");
  const long n_raw = integer(field(doc, "n", "form"), "n");
  if (n_raw < 1 || n_raw > static_cast<long>(kMaxDegree)) malformed("n", "degree must be in [1, 8]");
  const std::size_t n = static_cast<std::size_t>(n_raw);
  const long p = integer(field(doc, "p", "form"), "p");
  const long level = integer(field(doc, "level", "form"), "level");
  const double t_max = number(field(doc, "T_max", "form"), "T_max");

  const json& rep_doc = field(doc, "rep", "form");
  const long j = integer(field(rep_doc, "j", "rep"), "rep.j");
  const long k = integer(field(rep_doc, "k", "rep"), "rep.k");
  Rep rho = [&] {
    try {
      return make_rep(n, static_cast<int>(j), static_cast<int>(k));
    } catch (const Error& e) {
      malformed("rep", e.what());
    }
  }();

  const json& growth_doc = field(doc, "growth", "form");
  const CoefficientGrowth growth{number(field(growth_doc, "A", "growth"), "growth.A"),
                                 number(field(growth_doc, "kappa", "growth"), "growth.kappa")};

  std::vector<SymplecticMatrix> gammas;
  if (doc.contains("gamma_test_set")) {
    const json& set = doc.at("gamma_test_set");
    if (!set.is_array()) malformed("gamma_test_set", "expected a list of matrices");
    for (std::size_t i = 0; i < set.size(); ++i) {
      gammas.push_back(group_element(set[i], n, "gamma_test_set[" + std::to_string(i) + "]"));
    }
  }
  std::vector<SymplecticMatrix> cosets;
  if (doc.contains("coset_representatives")) {
    const json& set = doc.at("coset_representatives");
    if (!set.is_array()) malformed("coset_representatives", "expected a list of matrices");
    for (std::size_t i = 0; i < set.size(); ++i) {
      cosets.push_back(group_element(set[i], n, "coset_representatives[" + std::to_string(i) + "]"));
    }
  }

  const json& coeffs = field(doc, "coefficients", "form");
  if (!coeffs.is_array()) malformed("coefficients", "expected a list of records");
  std::vector<FourierTerm> terms;
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    const std::string where = "coefficients[" + std::to_string(t) + "]";
    const json& rec = coeffs[t];
    MultiIndex beta = rec.contains("beta") ? parse_beta(rec.at("beta"), n, where + ".beta") : MultiIndex(n);
    IntMatrix s = int_matrix(field(rec, "S", where), n, where + ".S");
    const json& value = field(rec, "value", where);
    if (!value.is_array() || value.size() != rho.dim()) {
      malformed(where + ".value", "expected " + std::to_string(rho.dim()) + " [re, im] pairs");
    }
    std::vector<Complex> c;
    for (std::size_t i = 0; i < value.size(); ++i) {
      const json& pair = value[i];
      if (!pair.is_array() || pair.size() != 2) malformed(where + ".value", "entries must be [re, im] pairs");
      c.emplace_back(number(pair[0], where + ".value"), number(pair[1], where + ".value"));
    }
    terms.push_back(FourierTerm{std::move(beta), std::move(s), RepVector(rho, std::move(c))});
  }

  FourierExpansion expansion(n, static_cast<int>(p), level, t_max, std::move(rho), std::move(terms));
  return FormPackage(std::move(expansion), std::move(gammas), growth, std::move(cosets));
}

json form_to_json(const FormPackage& form) {
  const auto& e = form.expansion();
  json doc;
  doc["n"] = e.degree();
  doc["p"] = e.nh_degree();
  doc["level"] = e.level();
  doc["T_max"] = e.t_max();
  doc["rep"] = {{"j", e.rep().key().j}, {"k", e.rep().key().k}};
  doc["growth"] = {{"A", form.growth().amplitude}, {"kappa", form.growth().exponent}};
  doc["gamma_test_set"] = json::array();
  for (const auto& g : form.gamma_test_set()) doc["gamma_test_set"].push_back(group_to_json(g));
  const auto& cosets = form.coset_representatives();
  if (!(cosets.size() == 1 && cosets[0] == SymplecticMatrix::identity(e.degree()))) {
    doc["coset_representatives"] = json::array();
    for (const auto& g : cosets) doc["coset_representatives"].push_back(group_to_json(g));
  }
  json coeffs = json::array();
  for (const auto& term : e.terms()) {
    json beta = json::object();
    for (std::size_t i = 0; i < e.degree(); ++i)
      for (std::size_t j = i; j < e.degree(); ++j)
        if (term.beta.get(i, j) != 0) {
          beta[std::to_string(i + 1) + "," + std::to_string(j + 1)] = term.beta.get(i, j);
        }
    coeffs.push_back({{"beta", beta}, {"S", int_matrix_to_json(term.scaled_index)}, {"value", vector_to_json(term.value)}});
  }
  doc["coefficients"] = std::move(coeffs);
  return doc;
}

FormPackage load_form(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot open form file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedInput, path.string() + ": " + e.what());
  }
  return form_from_json(doc);
}

void save_form(const FormPackage& form, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << form_to_json(form).dump(2) << '\n';
}

json matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json point_to_json(const SiegelPoint& z) {
  return {{"x", matrix_to_json(z.x().matrix())}, {"y", matrix_to_json(z.y().matrix())}};
}

json vector_to_json(const RepVector& v) {
  json out = json::array();
  for (const Complex& c : v.coords()) out.push_back({c.real(), c.imag()});
  return out;
}

}  // namespace siegel
