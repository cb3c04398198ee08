#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "siegel/forms.hpp"

namespace siegel {

// Form files are UTF-8 JSON:
//   { "n", "p", "level", "T_max", "rep": {"j", "k"}, "growth": {"A", "kappa"},
//     "gamma_test_set": [2n x 2n integer matrices],
//     "coset_representatives": [...]            (optional)
//     "coefficients": [{"beta": {"i,j": int}, "S": N*S as an integer matrix,
//                       "value": [[re, im], ...]}] }
// beta keys are 1-based with i <= j. S is never written as floats.

FormPackage form_from_json(const nlohmann::json& doc);
nlohmann::json form_to_json(const FormPackage& form);

/// Throws MalformedInput on unreadable files, invalid JSON, or invalid content.
FormPackage load_form(const std::filesystem::path& path);
void save_form(const FormPackage& form, const std::filesystem::path& path);

nlohmann::json matrix_to_json(const RealMatrix& m);
nlohmann::json point_to_json(const SiegelPoint& z);
nlohmann::json vector_to_json(const RepVector& v);

}  // namespace siegel
