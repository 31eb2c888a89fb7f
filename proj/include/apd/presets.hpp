#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apd/cut_project.hpp"
#include "apd/substitution.hpp"

namespace apd {

/// Points i * spacing (per axis, i integer) inside the window.
PointPattern lattice(int dimension, const Point& spacings, const Box& window);

/// 0 → 0110, 1 → 1001, unit tiles.
SubstitutionSystem thue_morse();
/// a → ab, b → a, tile lengths τ and 1.
SubstitutionSystem fibonacci_substitution();
/// a → ab, b → aa, unit tiles.
SubstitutionSystem period_doubling();
/// Basis columns (1, 1) and (τ, τ'), window [−1, τ − 1). Gaps are exactly {1, τ}.
CutProjectScheme fibonacci_cut_project();

std::vector<std::string> substitution_preset_names();
std::vector<std::string> scheme_preset_names();
std::optional<SubstitutionSystem> find_substitution_preset(const std::string& name);
std::optional<CutProjectScheme> find_scheme_preset(const std::string& name);

/// {"alphabet": [...], "rules": {...}, "lengths": {...}}; symbols are one-character strings.
SubstitutionSystem substitution_from_json(const nlohmann::json& j, const std::string& name = "custom");
nlohmann::json substitution_to_json(const SubstitutionSystem& s);
/// {"basis": [[b00, b01], [b10, b11]], "window": [lo, hi, "half-open" | "closed"]}; basis rows
/// are the physical and internal coordinates, so columns are the lattice generators.
CutProjectScheme scheme_from_json(const nlohmann::json& j, const std::string& name = "custom");
nlohmann::json scheme_to_json(const CutProjectScheme& s);

}  // namespace apd
