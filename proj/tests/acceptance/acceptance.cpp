// Acceptance suite: one line per criterion, "criterion N: PASS|FAIL ...".
// Usage: acceptance [N ...]  (no arguments runs all ten)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "boltzgap/battery.hpp"
#include "boltzgap/direct.hpp"
#include "boltzgap/experiments.hpp"
#include "oracles.hpp"

using namespace boltzgap;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string g4(double x) { return fmt("%.4g", x); }

Outcome ode_sandwich() {
  Outcome o{true, ""};
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    OdeExperimentOptions opt;
    opt.eps = eps;
    opt.dt = 1e-4;
    const OdeExperiment ex = run_ode_experiment(opt);
    const auto& s = ex.sandwich;
    o.pass = o.pass && ex.pass();
    o.detail += "eps=" + g4(eps) + " t*=" + g4(ex.t_star) + " violations=" +
                std::to_string(s.exp_violations + s.poly_violations + s.combined_violations) + " bracket[" +
                g4(ex.bracket.lo) + "," + g4(ex.bracket.hi) + "]" + (ex.in_bracket ? "" : " OUTSIDE") +
                " (-ln4 form " + (ex.bracket_alt.contains(ex.t_star) ? "contains" : "excludes") + "); ";
  }
  return o;
}

Outcome fgap_bounds() {
  const FgapReport r = check_fgap_bounds(100000, 20240607);
  Outcome o;
  o.pass = r.small_violations == 0 && r.large_violations == 0 && r.samples == 100000;
  o.detail = "samples=" + std::to_string(r.samples) + " small=" + std::to_string(r.small_checked) + "/" +
             std::to_string(r.small_violations) + " large=" + std::to_string(r.large_checked) + "/" +
             std::to_string(r.large_violations) + " (checked/violations)";
  return o;
}

Outcome symbol_bands() {
  SymbolOptions base;
  const SymbolExperiment a = run_symbol_experiment(base);
  base.angular_refine = 4;
  const SymbolExperiment b = run_symbol_experiment(base);
  auto shift = [](const RatioBand& x, const RatioBand& y) {
    return std::max(std::abs(y.lo / x.lo - 1.0), std::abs(y.hi / x.hi - 1.0));
  };
  const double move = std::max(shift(a.low, b.low), shift(a.high, b.high));
  Outcome o;
  o.pass = a.low.span() <= 20.0 && a.high.span() <= 20.0 && move < 0.1;
  o.detail = "low band [" + g4(a.low.lo) + "," + g4(a.low.hi) + "] span " + g4(a.low.span()) + "; high band [" +
             g4(a.high.lo) + "," + g4(a.high.hi) + "] span " + g4(a.high.span()) + "; endpoint shift under 4x refinement " +
             g4(move);
  return o;
}

Outcome operator_sanity() {
  const SanityExperiment ex = run_sanity_experiment({});
  // Tiny grid against the naive oracle.
  auto G = make_grid(8, 4.0);
  KernelConfig k;
  k.eps = 0.25;
  CollisionWorkspace ws(G, k, 1);
  auto g = Field::from_function(G, [](const Vec3& v) { return std::exp(-0.5 * dot3(v, v)) * (1.0 + 0.2 * v[1]); });
  auto h = Field::from_function(G, [](const Vec3& v) {
    const Vec3 d{v[0] + 0.7, v[1], v[2] - 0.4};
    return std::exp(-dot3(d, d));
  });
  const Field q = Q_eps(g, h, ws), ref = oracle::brute_force_Q(g, h, k);
  double err = 0.0, scale = 0.0;
  for (std::size_t p = 0; p < q.size(); ++p) {
    err = std::max(err, std::abs(q[p] - ref[p]));
    scale = std::max(scale, std::abs(ref[p]));
  }
  const double oracle_rel = err / scale;
  Outcome o;
  o.pass = ex.qmumu_residual <= 1e-3 && ex.max_moment <= 1e-3 && ex.max_null <= 1e-3 && oracle_rel <= 1e-8;
  o.detail = "Q(mu,mu) " + g4(ex.qmumu_residual) + ", max moment " + g4(ex.max_moment) + ", max null-space " +
             g4(ex.max_null) + ", n=8 oracle " + g4(oracle_rel);
  return o;
}

Outcome norm_equivalence() {
  const EquivalenceExperiment ex = run_equivalence_experiment({});
  Outcome o;
  o.pass = ex.max_span <= 100.0 && ex.refinement_change <= 0.2;
  for (std::size_t i = 0; i < ex.bands.size(); ++i)
    o.detail += "n=" + std::to_string(ex.options.grid_n[i]) + " [" + g4(ex.bands[i].lo) + "," + g4(ex.bands[i].hi) +
                "] span " + g4(ex.bands[i].span()) + "; ";
  o.detail += "change under refinement " + g4(ex.refinement_change);
  return o;
}

Outcome semigroup_dichotomy() {
  const RetentionExperiment r = run_retention_experiment({});
  const CrossoverExperiment c = run_crossover_experiment({});
  Outcome o;
  o.pass = r.pass() && c.pass();
  o.detail = "(a) C_fit";
  for (const auto& rep : r.reports) o.detail += " " + g4(rep.C_fit) + (rep.holds ? "" : "(violated)");
  o.detail += " variation " + g4(r.C_fit_variation) + "; (b) t*";
  for (const auto& t : c.t_star) o.detail += " " + (t ? g4(*t) : std::string("none"));
  o.detail += " slope " + g4(c.fit.slope) + " R2 " + g4(c.fit.r2);
  return o;
}

Outcome commutator_scaling() {
  Outcome o{true, ""};
  for (double s : {0.25, 0.5}) {
    CommutatorOptions opt;
    opt.s = s;
    const CommutatorExperiment ex = run_commutator_experiment(opt);
    o.pass = o.pass && ex.pass();
    o.detail += "s=" + g4(s) + " exponent " + g4(ex.fit.slope) + " (target " + g4(ex.target) + ", R2 " +
                g4(ex.fit.r2) + "); ";
  }
  return o;
}

Outcome operator_difference() {
  Outcome o{true, ""};
  for (double s : {0.25, 0.5}) {
    OperatorDiffOptions opt;
    opt.s = s;
    const OperatorDiffExperiment ex = run_operator_diff_experiment(opt);
    o.pass = o.pass && ex.pass();
    o.detail += "s=" + g4(s) + " exponent " + g4(ex.fit.exponent) + " (target " + g4(ex.target) + ", R2 " +
                g4(ex.fit.r2) + "); ";
  }
  return o;
}

Outcome bobylev_identity() {
  const BobylevExperiment ex = run_bobylev_experiment({});
  Outcome o;
  o.pass = ex.max_relative <= 0.02;
  for (const auto& r : ex.rows) o.detail += r.function_id + " " + g4(r.relative) + "; ";
  o.detail += "max " + g4(ex.max_relative);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "boltzgap_acceptance_determinism";
  fs::remove_all(root);
  Outcome o{true, ""};
  const std::vector<std::pair<std::string, std::string>> runs{{"ode", "--eps 1e-2 --stride 50"},
                                                              {"symbol", ""},
                                                              {"fgap", "--seed 7"}};
  int files = 0;
  for (const auto& [exp, extra] : runs) {
    for (int k : {1, 2}) {
      const fs::path dir = root / (exp + std::to_string(k));
      const std::string cmd = std::string("\"") + BOLTZGAP_EXE + "\" " + exp + " " + extra + " --out \"" +
                              dir.string() + "\" > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) {
        o.pass = false;
        o.detail += exp + " run " + std::to_string(k) + " failed; ";
      }
    }
    for (const auto& e : fs::directory_iterator(root / (exp + "1"))) {
      if (e.path().extension() != ".csv") continue;
      ++files;
      const std::string a = slurp(e.path()), b = slurp(root / (exp + "2") / e.path().filename());
      if (a.empty() || a != b) {
        o.pass = false;
        o.detail += e.path().filename().string() + " differs; ";
      }
    }
  }
  o.pass = o.pass && files > 0;
  o.detail += std::to_string(files) + " CSV files compared byte for byte";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{{1, "ODE sandwich", ode_sandwich},
                                   {2, "f_gap bounds", fgap_bounds},
                                   {3, "symbol equivalence", symbol_bands},
                                   {4, "operator sanity", operator_sanity},
                                   {5, "norm equivalence", norm_equivalence},
                                   {6, "semigroup dichotomy", semigroup_dichotomy},
                                   {7, "commutator scaling", commutator_scaling},
                                   {8, "operator-difference scaling", operator_difference},
                                   {9, "Bobylev identity", bobylev_identity},
                                   {10, "determinism", determinism}};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << fmt("%.1f", sec)
              << " s]  " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
