#pragma once

#include <string>

#include <json.hpp>

#include "apd/spectral.hpp"

namespace apd {

nlohmann::json spectrum_to_json(const SpectrumReport& r);
/// Columns: k components, intensity, spread@R per ladder radius, verdict.
std::string spectrum_to_csv(const SpectrumReport& r);
/// Intensity against the first k component, one stem per entry coloured by verdict.
std::string spectrum_to_svg(const SpectrumReport& r);

nlohmann::json eigenvalue_to_json(const WaveVector& k, const EigenvalueVerdict& v, double epsilon);
nlohmann::json collision_to_json(const CollisionReport& r);
std::string collisions_to_csv(const std::vector<CollisionReport>& rs);

}  // namespace apd
