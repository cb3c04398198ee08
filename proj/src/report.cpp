#include "siegel/report.hpp"

#include <iomanip>

#include "siegel/form_io.hpp"

namespace siegel {

using nlohmann::json;

json report_to_json(const GrowthReport& r, double safety_factor) {
  json doc;
  doc["kind"] = to_string(r.kind);
  doc["constant"] = r.constant;
  doc["exponent_r"] = r.exponent_r;
  doc["samples"] = r.samples;
  doc["violations"] = r.violations;
  doc["worst_ratio"] = r.worst_ratio;
  if (r.worst_point) {
    doc["worst_point"] = point_to_json(*r.worst_point);
  } else if (r.worst_element) {
    doc["worst_point"] = {{"g", matrix_to_json(r.worst_element->matrix())}};
  } else {
    doc["worst_point"] = nullptr;
  }
  json listed = json::array();
  for (const auto& row : r.violating) {
    listed.push_back({{"where", row.where}, {"phi", row.phi}, {"rhs", row.rhs}, {"ratio", row.ratio}});
  }
  doc["violating_samples"] = std::move(listed);
  doc["config"] = {{"delta", r.delta},
                   {"t_max", r.t_max},
                   {"seed", r.seed},
                   {"tolerance", r.tolerance},
                   {"safety_factor", safety_factor}};
  return doc;
}

void write_csv(std::ostream& out, const GrowthReport& r) {
  out << "where,phi,rhs,ratio\n" << std::setprecision(17);
  for (const auto& row : r.rows) {
    out << '"' << row.where << "\"," << row.phi << ',' << row.rhs << ',' << row.ratio << '\n';
  }
}

json invariance_to_json(const InvarianceReport& r, double tolerance) {
  json doc;
  doc["kind"] = "invariance";
  doc["samples"] = r.samples;
  doc["checks"] = r.checks;
  doc["violations"] = r.violations;
  doc["max_deviation"] = r.max_deviation;
  doc["max_threshold"] = r.max_threshold;
  doc["worst_gamma"] = r.worst_gamma ? json(*r.worst_gamma) : json(nullptr);
  doc["worst_point"] = r.worst_point ? point_to_json(*r.worst_point) : json(nullptr);
  doc["config"] = {{"tolerance", tolerance}};
  return doc;
}

}  // namespace siegel
