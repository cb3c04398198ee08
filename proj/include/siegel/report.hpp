#pragma once

#include <ostream>

#include <json.hpp>

#include "siegel/forms.hpp"
#include "siegel/growth.hpp"

namespace siegel {

/// {kind, constant, exponent_r, samples, violations, worst_ratio, worst_point, config}
nlohmann::json report_to_json(const GrowthReport& r, double safety_factor = 1.25);

/// One header line, then `where,phi,rhs,ratio` per kept row.
void write_csv(std::ostream& out, const GrowthReport& r);

nlohmann::json invariance_to_json(const InvarianceReport& r, double tolerance);

}  // namespace siegel
