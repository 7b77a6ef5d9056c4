#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <regex>
#include <sstream>
#include <variant>

#include "boltzgap/experiments.hpp"
#include "boltzgap/semigroup.hpp"

#ifndef BOLTZGAP_VERSION
#define BOLTZGAP_VERSION "unknown"
#endif

namespace boltzgap::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- parsing and validation

namespace {

double parse_one_eps(std::string tok) {
  tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
  static const std::regex pow2(R"(2\^(-?\d+))");
  std::smatch m;
  if (std::regex_match(tok, m, pow2)) return std::ldexp(1.0, std::stoi(m[1].str()));
  double x = 0.0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc() || p != tok.data() + tok.size()) throw ConfigError("cannot parse eps value '" + tok + "'");
  return x;
}

std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

bool is(const RunConfig& c, const char* name) { return c.experiment == name; }

double default_gamma(const RunConfig& c) { return is(c, "semigroup") ? -1.0 : 0.0; }

std::vector<int> default_grid(const RunConfig& c) {
  if (is(c, "norm-equivalence")) return {16, 32};
  if (is(c, "sanity") || is(c, "bobylev")) return {32};
  return {};
}

std::vector<double> default_eps(const RunConfig& c) {
  if (is(c, "ode")) return {1e-2};
  if (is(c, "symbol")) return dyadic_eps(3, 7);
  if (is(c, "norm-equivalence") || is(c, "commutator") || is(c, "operator-diff")) return dyadic_eps(3, 6);
  if (is(c, "sanity")) return {0.125};
  if (is(c, "bobylev")) return {0.0625};
  return {};
}

}  // namespace

std::vector<double> parse_eps_list(const std::string& text) {
  static const std::regex range(R"(\s*2\^(-?\d+)\s*\.\.\s*2\^(-?\d+)\s*)");
  std::smatch m;
  std::vector<double> out;
  if (std::regex_match(text, m, range)) {
    const int a = std::stoi(m[1].str()), b = std::stoi(m[2].str());
    const int step = a <= b ? 1 : -1;
    for (int k = a;; k += step) {
      out.push_back(std::ldexp(1.0, k));
      if (k == b) break;
    }
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_one_eps(tok));
  if (out.empty()) throw ConfigError("empty eps list");
  return out;
}

std::vector<double> effective_eps(const RunConfig& c) {
  if (c.eps) return {*c.eps};
  if (!c.eps_list.empty()) return parse_eps_list(c.eps_list);
  return default_eps(c);
}

void validate(const RunConfig& c) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), c.experiment) == names.end())
    throw ConfigError("unknown experiment '" + c.experiment + "'");
  if (c.eps && !c.eps_list.empty()) throw ConfigError("give either eps or eps-list, not both");
  // The kernel needs 4 eps / 3 <= 1 on the angular band; the scalar ODE only eps < 1.
  const bool scalar = is(c, "ode") || is(c, "fgap");
  const double eps_hi = scalar ? 1.0 : std::sqrt(0.5);
  for (double e : effective_eps(c))
    if (!(e > 0.0 && (scalar ? e < eps_hi : e <= eps_hi)))
      throw ConfigError("eps must lie in (0, " + std::string(scalar ? "1)" : "sqrt(2)/2]") + ", got " + format_number(e));
  const double s = c.s.value_or(0.5);
  if (!(s > 0.0 && s < 1.0)) throw ConfigError("s must lie in (0, 1)");
  const double g = c.gamma.value_or(default_gamma(c));
  if (!(g > -3.0 && g <= 2.0)) throw ConfigError("gamma must lie in (-3, 2]");
  if (!(g + 2.0 * s > -1.0)) throw ConfigError("gamma + 2s must exceed -1");
  if (g < -2.0 * s && is(c, "semigroup")) throw ConfigError("semigroup needs gamma >= -2s");
  if ((is(c, "bobylev") || is(c, "symbol")) && g != 0.0) throw ConfigError(c.experiment + " is defined for gamma = 0");
  for (int n : c.grid_n)
    if (n < 8 || n % 2) throw ConfigError("grid-n must be even and >= 8");
  if (!(c.half_width > 0.0)) throw ConfigError("half-width must be positive");
  if (!(c.dt > 0.0)) throw ConfigError("dt must be positive");
  if (c.stride < 1) throw ConfigError("stride must be >= 1");
  if (c.mode != "both" && c.mode != "retention" && c.mode != "crossover")
    throw ConfigError("mode must be retention, crossover or both");
  if (is(c, "ode") && effective_eps(c).empty()) throw ConfigError("ode needs eps");
}

std::string canonical_text(const RunConfig& c) {
  std::ostringstream o;
  o << "experiment=" << c.experiment << "\n";
  if (is(c, "semigroup") && !c.eps && c.eps_list.empty())
    o << "eps=default\n";
  else if (!is(c, "fgap"))
    o << "eps=" << join_numbers(effective_eps(c)) << "\n";
  o << "s=" << format_number(c.s.value_or(0.5)) << "\n";
  o << "gamma=" << format_number(c.gamma.value_or(default_gamma(c))) << "\n";
  o << "grid_n=" << join_ints(c.grid_n.empty() ? default_grid(c) : c.grid_n) << "\n";
  o << "half_width=" << format_number(c.half_width) << "\n";
  o << "seed=" << c.seed << "\n";
  if (is(c, "ode")) o << "dt=" << format_number(c.dt) << "\nstride=" << c.stride << "\n";
  if (is(c, "semigroup")) o << "mode=" << c.mode << "\n";
  return o.str();
}

std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_text(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------- output

namespace {

using Cell = std::variant<std::monostate, std::string, double, long long>;

class CsvFile {
 public:
  CsvFile(const fs::path& path, const std::vector<std::string>& header, const RunConfig& cfg,
          const std::vector<std::string>& comments = {})
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    out_ << "# config_hash=" << config_hash(cfg) << "\n";
    out_ << "# code_version=" << BOLTZGAP_VERSION << "\n";
    out_ << "# seed=" << cfg.seed << "\n";
    for (const auto& c : comments) out_ << "# " << c << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << "\n";
  }
  void row(const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ",";
      std::visit(
          [this](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>)
              out_ << v;
            else if constexpr (std::is_same_v<T, double>)
              out_ << format_number(v);
            else if constexpr (std::is_same_v<T, long long>)
              out_ << v;
          },
          cells[i]);
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

Cell opt_cell(const std::optional<double>& x) { return x ? Cell{*x} : Cell{}; }

struct Context {
  const RunConfig& cfg;
  fs::path dir;
  json fitted = json::object();
  json flags = json::object();
  json extra = json::object();
  std::vector<std::string> files;
  std::ostream& log;

  CsvFile csv(const std::string& name, const std::vector<std::string>& header,
              const std::vector<std::string>& comments = {}) {
    files.push_back(name);
    log << "writing " << (dir / name).string() << "\n";
    return CsvFile(dir / name, header, cfg, comments);
  }
};

double s_of(const RunConfig& c) { return c.s.value_or(0.5); }
double gamma_of(const RunConfig& c) { return c.gamma.value_or(default_gamma(c)); }
std::vector<int> grid_of(const RunConfig& c) { return c.grid_n.empty() ? default_grid(c) : c.grid_n; }

void run_ode(Context& ctx) {
  const auto eps = effective_eps(ctx.cfg);
  bool all = true;
  json per = json::array();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    OdeExperimentOptions o;
    o.eps = eps[i];
    o.s = s_of(ctx.cfg);
    o.dt = ctx.cfg.dt;
    const OdeExperiment ex = run_ode_experiment(o);
    const std::string name = eps.size() == 1 ? "ode_series.csv" : "ode_series_" + std::to_string(i + 1) + ".csv";
    auto f = ctx.csv(name, {"t", "X", "lower_exp", "upper_exp", "lower_poly", "upper_poly"},
                     {"eps=" + format_number(eps[i]), "t_star=" + format_number(ex.t_star)});
    const auto& S = ex.series;
    for (std::size_t k = 0; k < S.t.size(); ++k) {
      const bool crossing = S.crossing && S.t[k] == *S.crossing;
      if (k % static_cast<std::size_t>(ctx.cfg.stride) != 0 && k + 1 != S.t.size() && !crossing) continue;
      const OdeBounds b = ode_bounds(eps[i], o.s, S.t[k], ex.t_star);
      f.row({S.t[k], S.X[k], opt_cell(b.lower_exp), opt_cell(b.upper_exp), opt_cell(b.lower_poly),
             opt_cell(b.upper_poly)});
    }
    per.push_back({{"eps", eps[i]},
                   {"t_star", ex.t_star},
                   {"bracket", {ex.bracket.lo, ex.bracket.hi}},
                   {"bracket_minus_ln4", {ex.bracket_alt.lo, ex.bracket_alt.hi}},
                   {"records", ex.sandwich.records},
                   {"exp_violations", ex.sandwich.exp_violations},
                   {"poly_violations", ex.sandwich.poly_violations},
                   {"combined_violations", ex.sandwich.combined_violations}});
    all = all && ex.pass();
  }
  ctx.fitted["runs"] = per;
  if (eps.size() == 1) ctx.fitted["t_star"] = per[0]["t_star"];
  ctx.flags["sandwich_and_bracket"] = all;
}

void run_fgap(Context& ctx) {
  const FgapReport r = check_fgap_bounds(100000, ctx.cfg.seed);
  auto f = ctx.csv("fgap.csv", {"regime", "checked", "violations"});
  f.row({std::string("x<=1/4"), static_cast<long long>(r.small_checked), static_cast<long long>(r.small_violations)});
  f.row({std::string("x>=1/4"), static_cast<long long>(r.large_checked), static_cast<long long>(r.large_violations)});
  ctx.fitted["samples"] = r.samples;
  ctx.flags["bounds_hold"] = r.small_violations == 0 && r.large_violations == 0;
}

void run_symbol(Context& ctx) {
  SymbolOptions o;
  o.eps_list = effective_eps(ctx.cfg);
  o.s = s_of(ctx.cfg);
  const SymbolExperiment ex = run_symbol_experiment(o);
  o.angular_refine = 4;
  const SymbolExperiment fine = run_symbol_experiment(o);
  auto f = ctx.csv("symbol.csv", {"xi", "eps", "A_eps", "reference", "ratio"});
  for (const auto& r : ex.rows) f.row({r.xi, r.eps, r.A, r.reference, r.ratio});
  auto move = [](const RatioBand& a, const RatioBand& b) {
    return std::max(std::abs(b.lo / a.lo - 1.0), std::abs(b.hi / a.hi - 1.0));
  };
  ctx.fitted["low_band"] = {ex.low.lo, ex.low.hi};
  ctx.fitted["high_band"] = {ex.high.lo, ex.high.hi};
  ctx.fitted["low_band_refined"] = {fine.low.lo, fine.low.hi};
  ctx.fitted["high_band_refined"] = {fine.high.lo, fine.high.hi};
  ctx.fitted["endpoint_shift"] = std::max(move(ex.low, fine.low), move(ex.high, fine.high));
  ctx.flags["bands_within_20"] = ex.low.span() <= 20.0 && ex.high.span() <= 20.0;
  ctx.flags["refinement_shift_below_10pct"] = std::max(move(ex.low, fine.low), move(ex.high, fine.high)) < 0.1;
}

void run_equivalence(Context& ctx) {
  EquivalenceOptions o;
  o.eps_list = effective_eps(ctx.cfg);
  o.s = s_of(ctx.cfg);
  o.gamma = gamma_of(ctx.cfg);
  o.grid_n = grid_of(ctx.cfg);
  o.half_width = ctx.cfg.half_width;
  o.seed = ctx.cfg.seed;
  const EquivalenceExperiment ex = run_equivalence_experiment(o);
  auto f = ctx.csv("ratios.csv", {"function_id", "eps", "lhs", "rhs", "ratio", "n", "quadratic_form", "tail"});
  for (const auto& r : ex.rows)
    f.row({r.function_id, r.eps, r.lhs, r.rhs, r.ratio, static_cast<long long>(r.n), r.quadratic_form, r.tail});
  json bands = json::array();
  for (std::size_t g = 0; g < ex.bands.size(); ++g)
    bands.push_back({{"n", o.grid_n[g]},
                     {"min_ratio", ex.bands[g].lo},
                     {"max_ratio", ex.bands[g].hi},
                     {"span", ex.bands[g].span()}});
  ctx.fitted["bands"] = bands;
  ctx.fitted["refinement_change"] = ex.refinement_change;
  ctx.flags["span_below_100"] = ex.max_span <= 100.0;
  if (ex.bands.size() > 1) ctx.flags["refinement_change_below_20pct"] = ex.refinement_change <= 0.2;
}

void run_semigroup(Context& ctx) {
  const bool user_eps = ctx.cfg.eps || !ctx.cfg.eps_list.empty();
  const double s = s_of(ctx.cfg), gamma = gamma_of(ctx.cfg);
  if (ctx.cfg.mode != "crossover") {
    RetentionOptions o;
    if (user_eps) o.eps_list = effective_eps(ctx.cfg);
    o.s = s;
    o.gamma = gamma;
    const RetentionExperiment ex = run_retention_experiment(o);
    auto f = ctx.csv("retention.csv", {"eps", "t", "energy", "block"}, {"j=" + std::to_string(o.j)});
    json per = json::array();
    for (std::size_t i = 0; i < ex.series.size(); ++i) {
      const auto& S = ex.series[i];
      for (std::size_t k = 0; k < S.times.size(); ++k) f.row({o.eps_list[i], S.times[k], S.energy[k], S.blocks[0][k]});
      const auto& r = ex.reports[i];
      per.push_back({{"eps", o.eps_list[i]},
                     {"window_end", r.window_end},
                     {"C_fit", r.C_fit},
                     {"min_block", r.min_block},
                     {"bound", r.bound},
                     {"margin", r.margin}});
    }
    ctx.fitted["retention"] = per;
    ctx.fitted["C_fit_variation"] = ex.C_fit_variation;
    ctx.flags["retention"] = ex.pass();
  }
  if (ctx.cfg.mode != "retention") {
    CrossoverOptions o;
    if (user_eps) o.eps_list = effective_eps(ctx.cfg);
    o.s = s;
    o.gamma = gamma;
    const CrossoverExperiment ex = run_crossover_experiment(o);
    auto f = ctx.csv("crossover.csv", {"eps", "t", "energy", "low", "high"});
    json per = json::array();
    for (std::size_t i = 0; i < ex.series.size(); ++i) {
      const auto& S = ex.series[i];
      for (std::size_t k = 0; k < S.times.size(); ++k) f.row({o.eps_list[i], S.times[k], S.energy[k], S.low[k], S.high[k]});
      per.push_back({{"eps", o.eps_list[i]}, {"t_star", ex.t_star[i] ? json(*ex.t_star[i]) : json(nullptr)}});
    }
    ctx.fitted["crossover"] = per;
    ctx.fitted["t_star_slope"] = ex.fit.slope;
    ctx.fitted["t_star_r2"] = ex.fit.r2;
    ctx.flags["crossover"] = ex.pass();
  }
}

void run_commutator(Context& ctx) {
  CommutatorOptions o;
  o.eps_list = effective_eps(ctx.cfg);
  o.s = s_of(ctx.cfg);
  o.gamma = gamma_of(ctx.cfg);
  const CommutatorExperiment ex = run_commutator_experiment(o);
  auto f = ctx.csv("commutator.csv", {"eps", "M", "pairing"});
  for (const auto& r : ex.rows) f.row({r.eps, r.M, r.pairing});
  ctx.fitted["exponent"] = ex.fit.slope;
  ctx.fitted["r2"] = ex.fit.r2;
  ctx.fitted["target"] = ex.target;
  ctx.flags["exponent_within_0.1"] = ex.pass();
}

void run_operator_diff(Context& ctx) {
  OperatorDiffOptions o;
  o.eps_list = effective_eps(ctx.cfg);
  o.s = s_of(ctx.cfg);
  o.gamma = gamma_of(ctx.cfg);
  const OperatorDiffExperiment ex = run_operator_diff_experiment(o);
  auto f = ctx.csv("operator_diff.csv", {"eps", "pairing", "difference"}, {"eps_ref=" + format_number(ex.eps_ref)});
  for (const auto& r : ex.rows) f.row({r.eps, r.pairing, r.difference});
  ctx.fitted["eps_ref"] = ex.eps_ref;
  ctx.fitted["exponent"] = ex.fit.exponent;
  ctx.fitted["C"] = ex.fit.C;
  ctx.fitted["r2"] = ex.fit.r2;
  ctx.fitted["target"] = ex.target;
  ctx.flags["exponent_within_0.15"] = ex.pass();
}

void run_sanity(Context& ctx) {
  SanityOptions o;
  o.eps = effective_eps(ctx.cfg).front();
  o.s = s_of(ctx.cfg);
  o.gamma = gamma_of(ctx.cfg);
  o.n = grid_of(ctx.cfg).front();
  o.half_width = ctx.cfg.half_width;
  o.seed = ctx.cfg.seed;
  const SanityExperiment ex = run_sanity_experiment(o);
  auto m = ctx.csv("moments.csv", {"function_id", "moment", "value", "scale", "relative"});
  for (const auto& r : ex.moments) m.row({r.function_id, r.moment, r.value, r.scale, r.relative});
  auto n = ctx.csv("null_space.csv", {"element", "residual", "scale", "relative"});
  for (const auto& r : ex.null_space) n.row({r.element, r.residual, r.scale, r.relative});
  ctx.fitted["qmumu_residual"] = ex.qmumu_residual;
  ctx.fitted["max_moment_relative"] = ex.max_moment;
  ctx.fitted["max_null_relative"] = ex.max_null;
  ctx.flags["qmumu"] = ex.qmumu_residual <= 1e-3;
  ctx.flags["moments"] = ex.max_moment <= 1e-3;
  ctx.flags["null_space"] = ex.max_null <= 1e-3;
}

void run_bobylev(Context& ctx) {
  BobylevExperimentOptions o;
  o.eps = effective_eps(ctx.cfg).front();
  o.s = s_of(ctx.cfg);
  o.n = grid_of(ctx.cfg).front();
  o.half_width = ctx.cfg.half_width;
  o.seed = ctx.cfg.seed;
  const BobylevExperiment ex = run_bobylev_experiment(o);
  auto f = ctx.csv("bobylev.csv", {"function_id", "frequency", "physical", "relative"});
  for (const auto& r : ex.rows) f.row({r.function_id, r.frequency, r.physical, r.relative});
  ctx.fitted["max_relative"] = ex.max_relative;
  ctx.flags["agree_within_2pct"] = ex.max_relative <= 0.02;
}

void error_line(std::ostream& err, const char* kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << std::endl;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    validate(cfg);
    const std::string hash = config_hash(cfg);
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    const fs::path summary = dir / "summary.json";
    if (fs::exists(summary) && !cfg.force) {
      std::ifstream in(summary);
      const json old = json::parse(in, nullptr, false);
      if (!old.is_discarded() && old.value("experiment", "") == cfg.experiment &&
          old.value("config_hash", "") != hash)
        throw ConfigError("summary.json in " + dir.string() + " has config hash " + old.value("config_hash", "") +
                          ", this run has " + hash + " (use --force to overwrite)");
    }
    Context ctx{cfg, dir, json::object(), json::object(), json::object(), {}, log};
    const std::string& e = cfg.experiment;
    if (e == "ode") run_ode(ctx);
    else if (e == "fgap") run_fgap(ctx);
    else if (e == "symbol") run_symbol(ctx);
    else if (e == "norm-equivalence") run_equivalence(ctx);
    else if (e == "semigroup") run_semigroup(ctx);
    else if (e == "commutator") run_commutator(ctx);
    else if (e == "operator-diff") run_operator_diff(ctx);
    else if (e == "sanity") run_sanity(ctx);
    else if (e == "bobylev") run_bobylev(ctx);

    json j;
    j["experiment"] = e;
    j["config_hash"] = hash;
    j["fitted_constants"] = ctx.fitted;
    j["pass_flags"] = ctx.flags;
    j["code_version"] = BOLTZGAP_VERSION;
    j["seed"] = cfg.seed;
    j["config"] = canonical_text(cfg);
    j["files"] = ctx.files;
    std::ofstream out(summary, std::ios::binary);
    out << j.dump(2) << "\n";
    log << "writing " << summary.string() << "\n";
    return 0;
  } catch (const ConfigError& ex) {
    error_line(err, "config", ex.what());
    return 2;
  } catch (const std::invalid_argument& ex) {
    error_line(err, "config", ex.what());
    return 2;
  } catch (const StabilityError& ex) {
    error_line(err, "stability", ex.what());
    return 3;
  } catch (const std::exception& ex) {
    error_line(err, "runtime", ex.what());
    return 1;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for the grazing-limit Boltzmann operator"};
  app.set_config("--config", "", "Flat key = value file; keys are the long option names");
  RunConfig cfg;
  double eps = 0.0, s = 0.0, gamma = 0.0;
  app.add_option("experiment", cfg.experiment, "Experiment to run")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  auto* o_eps = app.add_option("--eps", eps, "Single eps value");
  app.add_option("--eps-list", cfg.eps_list, "eps values: 2^-3..2^-7 or a comma separated list");
  auto* o_s = app.add_option("--s", s, "Angular singularity order s in (0, 1)");
  auto* o_gamma = app.add_option("--gamma", gamma, "Kinetic exponent gamma");
  app.add_option("--grid-n", cfg.grid_n, "Nodes per axis (repeat or comma separate for several)")->delimiter(',');
  app.add_option("--half-width", cfg.half_width, "Half width L of the velocity box");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--seed", cfg.seed, "Seed for the random battery member and samplers");
  app.add_option("--dt", cfg.dt, "ode: time step");
  app.add_option("--stride", cfg.stride, "ode: write every k-th record");
  app.add_option("--mode", cfg.mode, "semigroup: retention, crossover or both");
  app.add_flag("--force", cfg.force, "Overwrite outputs written with a different config");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_line(std::cerr, "config", e.what());
    return 2;
  }
  if (o_eps->count()) cfg.eps = eps;
  if (o_s->count()) cfg.s = s;
  if (o_gamma->count()) cfg.gamma = gamma;
  return run(cfg, std::cerr, std::cerr);
}

}  // namespace boltzgap::cli
