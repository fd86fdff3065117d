#include "thermo/cli/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace thermo {

using nlohmann::json;

void to_json(json& j, const PressureReport& r) {
  j = {{"value", r.value},
       {"perron_eigenvalue", r.perron_eigenvalue},
       {"right_eigvec", r.right_eigvec},
       {"left_eigvec", r.left_eigvec},
       {"iterations", r.iterations},
       {"residual", r.residual},
       {"recoded", r.recoded}};
}

void to_json(json& j, const GridCell& c) { j = {{"n", c.n}, {"k", c.k}}; }

void to_json(json& j, const TailSummary& t) {
  j = {{"k", t.k}, {"value", t.value}, {"oscillation", t.oscillation}};
}

void to_json(json& j, const LocalPressureEstimate& e) {
  j = {{"point_id", e.point_id},
       {"values", e.values},
       {"entropy_values", e.entropy_values},
       {"tails", e.tails},
       {"extrapolated", e.extrapolated}};
}

void to_json(json& j, const TheoremAReport& r) {
  j = {{"finest", r.finest},
       {"sample_mean", r.sample_mean},
       {"sample_std", r.sample_std},
       {"target", r.target},
       {"invariance_defect", r.invariance_defect},
       {"grid", r.per_point.empty() ? json::array() : json(r.per_point.front().grid)},
       {"per_point", r.per_point}};
}

void to_json(json& j, const PointDiagnostics& p) {
  j = {{"point_id", p.point_id},
       {"log_ratios", p.log_ratios},
       {"log_deltas", p.log_deltas},
       {"slope", p.slope},
       {"max_log_delta", p.max_log_delta},
       {"verdict", to_string(p.verdict)}};
}

void to_json(json& j, const GibbsDiagnostics& d) {
  j = {{"k", d.k},
       {"n_grid", d.n_grid},
       {"p_top", d.p_top},
       {"max_log_delta", d.max_log_delta},
       {"worst_slope", d.worst_slope},
       {"verdict", to_string(d.verdict)},
       {"per_point", d.per_point}};
}

void to_json(json& j, const SandwichEntry& s) {
  j = {{"point_id", s.point_id}, {"n", s.n},         {"lower", s.lower},
       {"middle", s.middle},     {"upper", s.upper}, {"holds", s.holds}};
}

void to_json(json& j, const EquilibriumVerdict& v) {
  j = {{"p_top", v.p_top},
       {"metric_pressure", v.metric_pressure},
       {"gap", v.gap},
       {"is_equilibrium", v.is_equilibrium},
       {"sandwich_holds", v.sandwich_holds},
       {"sandwich_trace", v.sandwich_trace}};
}

}  // namespace thermo

namespace thermo::cli {

nlohmann::json measure_json(const MarkovMeasure& mu) {
  return {{"stochastic", mu.stochastic().to_rows()},
          {"stationary", mu.stationary()},
          {"entropy", entropy(mu)},
          {"fingerprint", mu.fingerprint()}};
}

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto '" + path + "': " + ec.message());
  }
}

}  // namespace thermo::cli
