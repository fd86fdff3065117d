#include "thermo/cli/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "thermo/cli/commands.hpp"
#include "thermo/cli/shipped.hpp"
#include "thermo/error.hpp"
#include "thermo/gibbs.hpp"
#include "thermo/local_pressure.hpp"
#include "thermo/pressure.hpp"

namespace thermo::cli {
namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      else detail.str("");
      pass = false;
      detail << what;
    }
  }
};

std::string fmt(double v, const char* spec = "%.3g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

SampleBatch draw(const MarkovMeasure& mu, const ExperimentConfig& c, unsigned threads) {
  const auto& est = c.require_estimator();
  return sample(mu, est.sample_count, est.capacity, est.seed, threads);
}

// 1: (1/n) log Z_n approaches P_top at rate 1/n, and P_top has its closed form.
void pressure_oracle(Outcome& o, unsigned) {
  const std::pair<const char*, double> cases[] = {
      {"full2_zero", std::numbers::ln2},
      {"full2_ones", std::log(1 + std::numbers::e)},
      {"golden_zero", std::log(std::numbers::phi)},
  };
  double worst = 0.0;
  for (const auto& [name, closed] : cases) {
    const auto c = shipped_config(name);
    const double p = topological_pressure(c.system, c.potential).value;
    o.require(std::abs(p - closed) <= 1e-10, std::string(name) + ": P_top off closed form by " + fmt(p - closed));
    double gap[2];
    const std::size_t ns[2] = {8, 16};
    for (int i = 0; i < 2; ++i) {
      const double z = partition_function_oracle(c.system, c.potential, ns[i]);
      gap[i] = std::abs(std::log(z) / static_cast<double>(ns[i]) - p);
      o.require(gap[i] <= 1.0 / static_cast<double>(ns[i]),
                std::string(name) + ": gap at n=" + std::to_string(ns[i]) + " is " + fmt(gap[i]));
    }
    // exact systems have zero gap at every n; compare above rounding level
    o.require(gap[1] <= gap[0] + 1e-12, std::string(name) + ": gap grew from n=8 to n=16");
    worst = std::max(worst, gap[1]);
  }
  if (o.pass) o.detail << "3 systems, closed forms to 1e-10, max gap at n=16 " << fmt(worst);
}

// 2: equilibrium_measure outputs are Gibbs and equilibrium states.
void corollary_b_exact(Outcome& o, unsigned threads) {
  std::size_t systems = 0;
  double worst_gap = 0.0;
  for (const auto& shipped : shipped_configs()) {
    const auto c = parse_config_text(std::string(shipped.text));
    if (c.measure.kind != MeasureKind::equilibrium) continue;
    ++systems;
    const std::string name(shipped.name);
    const auto mu = build_measure(c);
    const double p = topological_pressure(c.system, c.potential).value;
    const double gap = std::abs(entropy(mu) + integral(mu, c.potential) - p);
    worst_gap = std::max(worst_gap, gap);
    o.require(gap <= 1e-10, name + ": |h + integral - P| = " + fmt(gap));
    const auto verdict = verify_corollary_b(mu, c.potential, draw(mu, c, threads), c.gibbs_options(), threads);
    o.require(verdict.diagnostics.verdict == Verdict::gibbs,
              name + ": verdict " + std::string(to_string(verdict.diagnostics.verdict)));
    o.require(verdict.is_equilibrium, name + ": not an equilibrium state");
  }
  o.require(systems >= 4, "only " + std::to_string(systems) + " shipped equilibrium systems");
  if (o.pass) o.detail << systems << " systems gibbs and equilibrium, max gap " << fmt(worst_gap);
}

// 3: on an exact Gibbs measure every finite-scale value is already the limit.
void theorem_a_exact(Outcome& o, unsigned threads) {
  const auto c = shipped_config("full2_ones");
  const auto mu = build_measure(c);
  const double p = topological_pressure(c.system, c.potential).value;
  const auto grid = make_grid(c.require_estimator().n_grid, std::vector<std::size_t>{0});
  const auto report = verify_theorem_a(mu, c.potential, draw(mu, c, threads), grid, threads);
  double worst = 0.0;
  for (const auto& est : report.per_point)
    for (double v : est.values) worst = std::max(worst, std::abs(v - p));
  o.require(worst <= 1e-10, "max |P_hat - P_top| = " + fmt(worst));
  // zero in exact arithmetic; rounding leaves ~1e-16
  o.require(report.sample_std <= 1e-12, "std = " + fmt(report.sample_std));
  if (o.pass)
    o.detail << report.per_point.size() << " points x " << grid.size() << " scales, max deviation " << fmt(worst)
             << ", std " << fmt(report.sample_std);
}

// 4: Monte Carlo Markov case.
void theorem_a_monte_carlo(Outcome& o, unsigned threads) {
  const auto c = shipped_config("markov_range2");
  const auto results = cmd_local_pressure(c, threads).results;
  const auto& r = results["theorem_a"];
  const double mean = r["sample_mean"];
  const double target = r["target"];
  const double tol = results["tolerance"];
  const double expected = 2.0 / 3.0 * std::numbers::ln2 + 1.0 / 3.0;
  o.require(std::abs(target - expected) <= 1e-12, "target " + fmt(target, "%.12g") + " != 2/3 log2 + 1/3");
  o.require(std::abs(mean - target) <= tol, "|mean - target| = " + fmt(std::abs(mean - target)) + " > " + fmt(tol));
  if (o.pass)
    o.detail << "N=" << r["per_point"].size() << " n=" << r["finest"]["n"] << " k=" << r["finest"]["k"]
             << ": |mean - target| = " << fmt(std::abs(mean - target)) << " <= " << fmt(tol);
}

// Random primitive system: a Hamiltonian cycle, a loop at 0, extra random edges.
SubshiftOfFiniteType random_system(std::mt19937_64& rng, std::size_t m) {
  std::vector<std::vector<int>> a(m, std::vector<int>(m, 0));
  std::bernoulli_distribution extra(0.4);
  for (std::size_t i = 0; i < m; ++i) {
    a[i][(i + 1) % m] = 1;
    for (std::size_t j = 0; j < m; ++j)
      if (extra(rng)) a[i][j] = 1;
  }
  a[0][0] = 1;
  return SubshiftOfFiniteType(std::move(a));
}

MarkovMeasure random_measure(std::mt19937_64& rng, const SubshiftOfFiniteType& sft) {
  const std::size_t m = sft.alphabet_size();
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  std::vector<std::vector<double>> q(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      if (sft.allowed(static_cast<Symbol>(i), static_cast<Symbol>(j))) total += q[i][j] = weight(rng);
    for (double& v : q[i]) v /= total;
  }
  return MarkovMeasure::from_stochastic(sft, Matrix::from_rows(q));
}

LocallyConstantPotential random_potential(std::mt19937_64& rng, std::size_t m, std::size_t r) {
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  std::vector<double> table(static_cast<std::size_t>(std::pow(static_cast<double>(m), static_cast<double>(r))));
  for (double& v : table) v = value(rng);
  return LocallyConstantPotential(m, r, std::move(table));
}

// 5: P_hat = H_hat + S_n phi / n on random tuples.
void decomposition(Outcome& o, unsigned) {
  std::mt19937_64 rng(0x5eed5);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  double worst = 0.0;
  const std::size_t tuples = 10000;
  for (std::size_t t = 0; t < tuples; ++t) {
    const auto sft = random_system(rng, pick(2, 4));
    const auto mu = random_measure(rng, sft);
    const auto phi = random_potential(rng, sft.alphabet_size(), pick(1, 3));
    const std::size_t n = pick(1, 200);
    const std::size_t k = pick(0, 8);
    const auto x = sample(mu, 1, n + k + phi.range() - 1, rng()).points[0];
    const auto d = decomposition_check(mu, phi, x, n, k);
    worst = std::max(worst, std::abs(d.lhs - d.rhs));
  }
  o.require(worst <= 1e-12, "max |P_hat - (H_hat + S_n phi / n)| = " + fmt(worst));
  if (o.pass) o.detail << tuples << " tuples, max residual " << fmt(worst);
}

// 6: the defect |P_hat(f x; n-1) - P_hat(x; n)| decays like 1/n, so
// quadrupling n at least halves it.
void invariance(Outcome& o, unsigned threads) {
  const auto fair = MarkovMeasure::bernoulli(SubshiftOfFiniteType::full_shift(2), {0.5, 0.5});
  const auto parry = build_measure(shipped_config("golden_zero"));
  const LocallyConstantPotential ones(2, 1, {0.0, 1.0});
  const std::size_t k = 3;
  const std::pair<const char*, const MarkovMeasure*> systems[] = {{"fair coin", &fair}, {"golden Parry", &parry}};
  std::size_t failures = 0;
  std::size_t total = 0;
  double worst_ratio = 0.0;
  for (const auto& [name, mu] : systems) {
    const auto batch = sample(*mu, 100, 400 + k, 6060, threads);
    for (const auto& x : batch.points) {
      const double d100 = invariance_defect(*mu, ones, x, 100, k);
      const double d400 = invariance_defect(*mu, ones, x, 400, k);
      ++total;
      if (d400 > 0.5 * d100 + 1e-12) ++failures;
      if (d100 > 0) worst_ratio = std::max(worst_ratio, d400 / d100);
    }
  }
  o.require(failures == 0, std::to_string(failures) + " of " + std::to_string(total) +
                               " points with defect(400) > defect(100) / 2");
  if (o.pass) o.detail << total << " points on 2 systems, max defect(400)/defect(100) " << fmt(worst_ratio);
}

// 7: Bernoulli(0.9) against phi = 0 has exponentially growing delta_n.
void rejection(Outcome& o, unsigned threads) {
  const auto c = shipped_config("bernoulli09_vs_zero");
  const auto mu = build_measure(c);
  const double p_top = topological_pressure(c.system, c.potential).value;
  const auto diag = gibbs_diagnose(mu, c.potential, p_top, draw(mu, c, threads), c.gibbs_options(), threads);
  const double rate = std::abs(std::numbers::ln2 + 0.9 * std::log(0.9) + 0.1 * std::log(0.1));
  std::size_t close = 0;
  for (const auto& p : diag.per_point) close += std::abs(p.slope - rate) <= 0.05;
  const double fraction = static_cast<double>(close) / static_cast<double>(diag.per_point.size());
  const double direct_gap = p_top - (entropy(mu) + integral(mu, c.potential));
  const double closed_gap = std::numbers::ln2 + 0.9 * std::log(0.9) + 0.1 * std::log(0.1);
  o.require(diag.verdict == Verdict::rejected, "verdict " + std::string(to_string(diag.verdict)));
  o.require(std::abs(direct_gap - closed_gap) <= 1e-10, "direct gap off closed form by " + fmt(direct_gap - closed_gap));
  o.require(fraction >= 0.95, "only " + std::to_string(close) + "/" + std::to_string(diag.per_point.size()) +
                                  " slopes within 0.05 of " + fmt(rate, "%.4f") + " (need 95%)");
  if (o.pass) o.detail << close << "/" << diag.per_point.size() << " slopes within 0.05, verdict rejected";
}

// 8: consistency, shift-invariance and total mass, exhaustively to length 10.
void measure_axioms(Outcome& o, unsigned) {
  std::set<std::uint64_t> seen;
  std::size_t checks = 0;
  double worst = 0.0;
  for (const auto& shipped : shipped_configs()) {
    const auto c = parse_config_text(std::string(shipped.text));
    const auto mu = build_measure(c);
    if (!seen.insert(mu.fingerprint()).second) continue;
    const auto& sft = mu.shift_space();
    const std::size_t m = sft.alphabet_size();
    for (std::size_t len = 1; len <= 10; ++len) {
      double total = 0.0;
      std::vector<Symbol> ext(len + 1);
      sft.for_each_admissible_word(len, [&](std::span<const Symbol> w) {
        const double mass = cylinder_measure(mu, w);
        total += mass;
        double right = 0.0;
        double left = 0.0;
        for (Symbol s = 0; s < m; ++s) {
          std::copy(w.begin(), w.end(), ext.begin());
          ext[len] = s;
          right += cylinder_measure(mu, ext);
          ext[0] = s;
          std::copy(w.begin(), w.end(), ext.begin() + 1);
          left += cylinder_measure(mu, ext);
        }
        worst = std::max({worst, std::abs(right - mass), std::abs(left - mass)});
        checks += 2;
      });
      worst = std::max(worst, std::abs(total - 1.0));
      ++checks;
    }
  }
  o.require(worst <= 1e-10, "max violation " + fmt(worst));
  if (o.pass) o.detail << seen.size() << " measures, " << checks << " identities, max violation " << fmt(worst);
}

// 9: range-3 potentials through the higher-block presentation.
void block_recoding(Outcome& o, unsigned) {
  double worst = 0.0;
  for (const char* name : {"golden_range2", "full2_ones", "full3_range1"}) {
    const auto c = shipped_config(name);
    const auto& sft = c.system;
    const auto& psi = c.potential;
    const auto phi = psi.extended_to(3);
    const auto direct = topological_pressure(sft, psi);
    const auto recoded = topological_pressure(sft, phi);
    o.require(recoded.recoded, std::string(name) + ": range-3 pressure did not recode");
    o.require(std::abs(direct.value - recoded.value) <= 1e-10,
              std::string(name) + ": pressure differs by " + fmt(direct.value - recoded.value));
    worst = std::max(worst, std::abs(direct.value - recoded.value));

    const auto rec = block_recode(sft, phi);
    const auto mu_direct = equilibrium_measure(sft, psi);
    const auto mu_rec = equilibrium_measure(rec.shift_space, rec.potential);
    for (std::size_t len = 2; len <= 8; ++len)
      for (const auto& w : sft.admissible_words(len)) {
        const double diff = std::abs(cylinder_measure(mu_rec, rec.encode(w)) - cylinder_measure(mu_direct, w));
        worst = std::max(worst, diff);
      }
  }
  // a genuine range-3 potential: recoded Birkhoff sums agree word by word
  const auto g = shipped_config("full2_range3");
  const auto rec = block_recode(g.system, g.potential);
  for (const auto& w : g.system.admissible_words(10)) {
    const double a = birkhoff_sum(g.potential, PointPrefix(g.system, w), 8);
    const double b = birkhoff_sum(rec.potential, PointPrefix(rec.shift_space, rec.encode(w)), 8);
    worst = std::max(worst, std::abs(a - b));
  }
  o.require(worst <= 1e-10, "max discrepancy " + fmt(worst));
  if (o.pass) o.detail << "3 systems + range-3 Birkhoff sums, max discrepancy " << fmt(worst);
}

// 10: same config and seed, byte-identical payloads (thread counts differ on purpose).
void determinism(Outcome& o, unsigned threads) {
  const auto c = shipped_config("markov_range2");
  const auto a = cmd_local_pressure(c, 1).results.dump();
  const auto b = cmd_local_pressure(c, std::max(2u, threads)).results.dump();
  o.require(a == b, "payloads differ");
  if (o.pass) o.detail << "two runs, " << a.size() << " identical bytes";
}

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds; 0 means none
  std::function<void(Outcome&, unsigned)> run;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out, unsigned threads) {
  const Criterion criteria[] = {
      {1, "pressure oracle equivalence", 5.0, pressure_oracle},
      {2, "equilibrium states on exact Gibbs measures", 5.0, corollary_b_exact},
      {3, "local pressure, exact case", 0.0, theorem_a_exact},
      {4, "local pressure, Monte Carlo case", 60.0, theorem_a_monte_carlo},
      {5, "decomposition identity", 0.0, decomposition},
      {6, "finite-n invariance", 0.0, invariance},
      {7, "Gibbs rejection soundness", 0.0, rejection},
      {8, "measure axioms", 0.0, measure_axioms},
      {9, "block recoding conservation", 0.0, block_recoding},
      {10, "determinism", 0.0, determinism},
  };
  std::vector<CriterionResult> results;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o, threads);
    } catch (const std::exception& e) {
      o.require(false, std::string("error: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0) o.require(seconds < c.time_limit, "took " + fmt(seconds) + " s, limit " + fmt(c.time_limit) + " s");
    CriterionResult r{c.id, c.title, o.pass, o.detail.str(), seconds};
    char head[96];
    std::snprintf(head, sizeof head, "[%s] %2d %-44s %7.2fs  ", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), seconds);
    out << head << r.detail << '\n' << std::flush;
    results.push_back(std::move(r));
  }
  return results;
}

int cmd_selftest(std::ostream& out, unsigned threads) {
  const auto results = run_acceptance(out, threads);
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  out << passed << "/" << results.size() << " criteria passed\n";
  return passed == static_cast<long>(results.size()) ? 0 : 1;
}

}  // namespace thermo::cli
