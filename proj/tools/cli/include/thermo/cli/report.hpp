#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "thermo/gibbs.hpp"
#include "thermo/local_pressure.hpp"
#include "thermo/measures.hpp"
#include "thermo/pressure.hpp"

namespace thermo {

// Non-finite doubles have no JSON form; every reported quantity is finite by
// construction (ratios are stored as logarithms).
void to_json(nlohmann::json& j, const PressureReport& r);
void to_json(nlohmann::json& j, const GridCell& c);
void to_json(nlohmann::json& j, const TailSummary& t);
void to_json(nlohmann::json& j, const LocalPressureEstimate& e);
void to_json(nlohmann::json& j, const TheoremAReport& r);
void to_json(nlohmann::json& j, const PointDiagnostics& p);
void to_json(nlohmann::json& j, const GibbsDiagnostics& d);
void to_json(nlohmann::json& j, const SandwichEntry& s);
void to_json(nlohmann::json& j, const EquilibriumVerdict& v);

}  // namespace thermo

namespace thermo::cli {

nlohmann::json measure_json(const MarkovMeasure& mu);

/// Writes `text` to `path` through a sibling temporary file and a rename, so
/// readers never observe a partial file.
void write_atomically(const std::string& path, const std::string& text);

}  // namespace thermo::cli
