#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "roughheat/initial_data.hpp"

namespace roughheat {

// Measure-spec document: {"components": [{"kind": "lebesgue", "scale": c}
//   | {"kind": "atom", "location": x0, "mass": m}
//   | {"kind": "exp", "rate": s}
//   | {"kind": "grid", "x": [...], "density": [...]}
//   | {"kind": "grid", "csv": "path"}]}
InitialMeasure measure_from_json(const nlohmann::json& doc);
nlohmann::json measure_to_json(const InitialMeasure& mu);

// Two-column CSV (x, density), optional header line.
GridDensityComponent grid_from_csv(const std::string& path);

// CLI shorthand, components joined by ';':
//   "lebesgue[:scale]", "delta", "atom:<loc>:<mass>", "exp:<rate>",
//   "exp-decay:<beta>" (rate -beta), "grid:<csv path>".
InitialMeasure measure_from_shorthand(const std::string& spec);

}  // namespace roughheat
