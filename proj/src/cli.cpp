#include "pdczeno/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "pdczeno/closed_forms.hpp"
#include "pdczeno/core_dynamics.hpp"
#include "pdczeno/dressed.hpp"
#include "pdczeno/errors.hpp"
#include "pdczeno/regime.hpp"
#include "pdczeno/sweep.hpp"

namespace pdczeno::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kOdeStepTolerance = 1e-11;
constexpr double kDressedResidualLimit = 1e-8;

template <typename T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

double number_of(const Json& value, const std::string& key) {
  if (!value.is_number()) throw InvalidParameter("config key '" + key + "' must be a number");
  return value.get<double>();
}

std::size_t count_of(const Json& value, const std::string& key) {
  if (!value.is_number_unsigned()) {
    throw InvalidParameter("config key '" + key + "' must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

std::string string_of(const Json& value, const std::string& key) {
  if (!value.is_string()) throw InvalidParameter("config key '" + key + "' must be a string");
  return value.get<std::string>();
}

Json number_json(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

std::string resolve_out_path(const std::string& path) {
  const char* dir = std::getenv(kOutDirEnv);
  const std::filesystem::path p(path);
  if (dir != nullptr && *dir != '\0' && p.is_relative()) {
    return (std::filesystem::path(dir) / p).string();
  }
  return path;
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (!cfg.out) {
    out << content;
    return;
  }
  const std::string path = resolve_out_path(*cfg.out);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InvalidParameter("cannot open output file '" + path + "'");
  file << content;
}

std::string output_format(const RunConfig& cfg, const std::string& fallback) {
  const std::string fmt = cfg.format.value_or(fallback);
  if (fmt != "csv" && fmt != "json" && fmt != "text") {
    throw InvalidParameter("unknown format '" + fmt + "'");
  }
  return fmt;
}

CouplerParams params_of(const RunConfig& cfg) {
  CouplerParams p{cfg.gamma.value_or(0.0), cfg.kappa.value_or(0.0), cfg.delta.value_or(0.0),
                  cfg.length.value_or(0.0)};
  validate(p);
  return p;
}

Json params_json(const CouplerParams& p) {
  return Json{{"gamma", p.gamma}, {"kappa", p.kappa}, {"delta", p.delta}, {"length", p.length}};
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CouplerParams p = params_of(cfg);
  const std::string engine = cfg.engine.value_or("exact");
  const std::string fmt = output_format(cfg, "text");

  std::optional<ModeOccupations> occ;
  std::optional<double> n_s_only;
  std::optional<double> residual;
  std::string branch;

  if (engine == "exact" || engine == "ode") {
    const BogoliubovMap map =
        engine == "exact" ? propagate_exact(p) : propagate_ode(p, kOdeStepTolerance);
    occ = vacuum_occupations(map).clamped();
    residual = check_symplectic(map);
  } else if (engine == "closed-form") {
    if (p.kappa != 0.0 && p.delta != 0.0) {
      err << "error: no closed form with both kappa and delta nonzero; use --engine exact\n";
      return kEngineMismatch;
    }
    if (p.delta == 0.0) {
      const ClosedFormResult r = n_s_coupled_matched(p.gamma, p.kappa, p.length);
      branch = to_string(r.branch);
      if (p.kappa == 0.0) {
        occ = ModeOccupations{r.n_s, r.n_s, 0.0};
      } else {
        n_s_only = r.n_s;
      }
    } else {
      const ClosedFormResult r = n_s_mismatched_uncoupled(p.gamma, p.delta, p.length);
      branch = to_string(r.branch);
      occ = ModeOccupations{r.n_s, r.n_s, 0.0};
    }
  } else {
    throw InvalidParameter("unknown engine '" + engine + "' (exact, ode, closed-form)");
  }

  const double n_s = occ ? occ->n_s : *n_s_only;
  std::ostringstream text;
  if (fmt == "json") {
    Json doc = params_json(p);
    doc["engine"] = engine;
    if (!branch.empty()) doc["branch"] = branch;
    doc["n_s"] = number_json(n_s);
    doc["n_i"] = occ ? number_json(occ->n_i) : Json(nullptr);
    doc["n_b"] = occ ? number_json(occ->n_b) : Json(nullptr);
    doc["symplectic_residual"] = residual ? number_json(*residual) : Json(nullptr);
    text << doc.dump(2) << '\n';
  } else {
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : "n/a"; };
    text << "engine: " << engine << '\n';
    if (!branch.empty()) text << "branch: " << branch << '\n';
    text << "n_s: " << format_number(n_s) << '\n';
    text << "n_i: " << (occ ? format_number(occ->n_i) : "n/a") << '\n';
    text << "n_b: " << (occ ? format_number(occ->n_b) : "n/a") << '\n';
    text << "symplectic_residual: " << opt(residual) << '\n';
  }
  emit(cfg, text.str(), out);
  return kOk;
}

// --- classify ---------------------------------------------------------------

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CouplerParams p = params_of(cfg);
  if (p.kappa == 0.0) {
    err << "error: regime classification needs kappa > 0; at kappa = 0 use "
           "`simulate --engine closed-form`\n";
    return kEngineMismatch;
  }
  const std::string fmt = output_format(cfg, "text");
  const RegimeReport report = classify_regime(p);
  std::optional<BoundaryKappas> exact;
  if (p.gamma > 0.0 && p.delta != 0.0) {
    try {
      exact = boundary_exact(p.gamma, p.delta);
    } catch (const NotFound&) {
    }
  }

  std::ostringstream text;
  if (fmt == "json") {
    Json doc = params_json(p);
    doc["regime"] = std::string(to_string(report.regime));
    doc["discriminant"] = report.discriminant;
    doc["coefficients"] = {report.coefficients.c2, report.coefficients.c1,
                           report.coefficients.c0};
    Json roots = Json::array();
    for (const auto& r : report.roots) roots.push_back({r.real(), r.imag()});
    doc["roots"] = roots;
    doc["boundary_kappas"] = report.boundary_kappas
                                 ? Json{report.boundary_kappas->kappa1,
                                        report.boundary_kappas->kappa2}
                                 : Json(nullptr);
    doc["boundary_kappas_exact"] =
        exact ? Json{exact->kappa1, exact->kappa2} : Json(nullptr);
    text << doc.dump(2) << '\n';
  } else {
    text << "regime: " << to_string(report.regime) << '\n';
    text << "discriminant: " << format_number(report.discriminant) << '\n';
    text << "cubic: lambda^3 + " << format_number(report.coefficients.c2) << " lambda^2 + "
         << format_number(report.coefficients.c1) << " lambda + "
         << format_number(report.coefficients.c0) << '\n';
    for (const auto& r : report.roots) {
      text << "root: " << format_number(r.real()) << " " << format_number(r.imag()) << "i\n";
    }
    if (report.boundary_kappas) {
      text << "boundary_kappas: " << format_number(report.boundary_kappas->kappa1) << " "
           << format_number(report.boundary_kappas->kappa2) << '\n';
    }
    if (exact) {
      text << "boundary_kappas_exact: " << format_number(exact->kappa1) << " "
           << format_number(exact->kappa2) << '\n';
    }
  }
  emit(cfg, text.str(), out);
  return kOk;
}

// --- sweep ------------------------------------------------------------------

AxisSpec axis_of(const std::optional<std::string>& name, const std::optional<double>& lo,
                 const std::optional<double>& hi, const std::optional<std::size_t>& count,
                 const char* label) {
  if (!name || !lo || !hi || !count) {
    throw InvalidParameter(std::string("sweep needs ") + label + ", " + label + "_min, " + label +
                           "_max and " + label + "_count");
  }
  return {parse_axis(*name), *lo, *hi, *count};
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.fixed = {cfg.gamma.value_or(0.0), cfg.kappa.value_or(0.0), cfg.delta.value_or(0.0),
                cfg.length.value_or(0.0)};
  spec.axis1 = axis_of(cfg.axis1, cfg.axis1_min, cfg.axis1_max, cfg.axis1_count, "axis1");
  spec.axis2 = axis_of(cfg.axis2, cfg.axis2_min, cfg.axis2_max, cfg.axis2_count, "axis2");
  spec.engine = parse_engine(cfg.engine.value_or("numeric"));
  const std::string fmt = output_format(cfg, "csv");
  if (fmt == "text") throw InvalidParameter("sweep writes csv or json");

  const SweepGrid grid = sweep_2d(spec, cfg.threads.value_or(0));

  std::ostringstream text;
  if (fmt == "csv") {
    text << "axis1,axis2,n_s,engine\n";
    for (std::size_t i1 = 0; i1 < spec.axis1.count; ++i1) {
      for (std::size_t i2 = 0; i2 < spec.axis2.count; ++i2) {
        const std::size_t idx = i1 * spec.axis2.count + i2;
        text << format_number(spec.axis1.at(i1)) << ',' << format_number(spec.axis2.at(i2)) << ','
             << format_number(grid.values[idx]) << ',' << to_string(grid.provenance[idx]) << '\n';
      }
    }
  } else {
    Json doc = params_json(spec.fixed);
    doc["engine"] = std::string(to_string(spec.engine));
    doc["format"] = "json";
    doc["axis1"] = std::string(to_string(spec.axis1.parameter));
    doc["axis1_min"] = spec.axis1.min;
    doc["axis1_max"] = spec.axis1.max;
    doc["axis1_count"] = spec.axis1.count;
    doc["axis2"] = std::string(to_string(spec.axis2.parameter));
    doc["axis2_min"] = spec.axis2.min;
    doc["axis2_max"] = spec.axis2.max;
    doc["axis2_count"] = spec.axis2.count;
    Json values = Json::array();
    Json provenance = Json::array();
    for (std::size_t i1 = 0; i1 < spec.axis1.count; ++i1) {
      Json row = Json::array();
      Json tags = Json::array();
      for (std::size_t i2 = 0; i2 < spec.axis2.count; ++i2) {
        row.push_back(number_json(grid.at(i1, i2)));
        tags.push_back(std::string(to_string(grid.provenance[i1 * spec.axis2.count + i2])));
      }
      values.push_back(std::move(row));
      provenance.push_back(std::move(tags));
    }
    doc["values"] = std::move(values);
    doc["provenance"] = std::move(provenance);
    doc["failed_cells"] = grid.failures;
    text << doc.dump() << '\n';
  }
  emit(cfg, text.str(), out);
  if (grid.failures > 0) {
    err << "error: " << grid.failures << " sweep cell(s) failed; tagged as NaN\n";
    return kSweepCellFailure;
  }
  return kOk;
}

// --- dressed-check ----------------------------------------------------------

// Portable uniform draw in [lo, hi) from a 64-bit engine.
double draw(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

int cmd_dressed_check(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  CouplerParams p;
  if (cfg.seed) {
    std::mt19937_64 rng(*cfg.seed);
    p.gamma = draw(rng, 0.0, 1.0);
    p.kappa = draw(rng, 0.0, 10.0);
    p.delta = draw(rng, 0.0, 10.0);
    p.length = draw(rng, 0.0, 3.0);
  } else {
    p = params_of(cfg);
  }
  validate(p);
  const std::string fmt = output_format(cfg, "text");

  const ModeOccupations direct = vacuum_occupations(propagate_exact(p));
  const ModeOccupations dressed = propagate_dressed(p);
  const double residual = std::max({std::abs(direct.n_s - dressed.n_s),
                                    std::abs(direct.n_i - dressed.n_i),
                                    std::abs(direct.n_b - dressed.n_b)});
  const bool pass = residual <= kDressedResidualLimit;
  const DressedParams channels = to_dressed(p);
  const double resonant_factor = 1.0 / std::numbers::sqrt2;
  const double qpm_factor = 2.0 / std::numbers::pi;

  std::ostringstream text;
  if (fmt == "json") {
    Json doc = params_json(p);
    doc["n_s_direct"] = direct.n_s;
    doc["n_s_dressed"] = dressed.n_s;
    doc["n_i_dressed"] = dressed.n_i;
    doc["n_b_dressed"] = dressed.n_b;
    doc["residual"] = residual;
    doc["pass"] = pass;
    doc["gamma_eff"] = channels.gamma_eff;
    doc["mismatch_c"] = channels.mismatch_c;
    doc["mismatch_d"] = channels.mismatch_d;
    doc["resonant_coupling_factor"] = resonant_factor;
    doc["qpm_coupling_factor"] = qpm_factor;
    text << doc.dump(2) << '\n';
  } else {
    text << "gamma: " << format_number(p.gamma) << '\n'
         << "kappa: " << format_number(p.kappa) << '\n'
         << "delta: " << format_number(p.delta) << '\n'
         << "length: " << format_number(p.length) << '\n'
         << "n_s_direct: " << format_number(direct.n_s) << '\n'
         << "n_s_dressed: " << format_number(dressed.n_s) << '\n'
         << "residual: " << format_number(residual) << '\n'
         << "channels: gamma_eff " << format_number(channels.gamma_eff) << ", mismatches "
         << format_number(channels.mismatch_c) << " / " << format_number(channels.mismatch_d)
         << '\n'
         << "effective coupling: resonant " << format_number(resonant_factor)
         << " gamma, qpm " << format_number(qpm_factor) << " gamma\n"
         << (pass ? "PASS" : "FAIL") << '\n';
  }
  emit(cfg, text.str(), out);
  return pass ? kOk : kEquivalenceFailure;
}

// --- ridge ------------------------------------------------------------------

int cmd_ridge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double gamma = cfg.gamma.value_or(0.0);
  const double length = cfg.length.value_or(0.0);
  if (!cfg.delta_min || !cfg.delta_max) {
    throw InvalidParameter("ridge needs --delta-min and --delta-max");
  }
  const double lo = *cfg.delta_min;
  const double hi = *cfg.delta_max;
  const std::size_t count = cfg.delta_count.value_or(8);
  if (count == 0 || !(lo > 0.0) || !(hi >= lo) || (count > 1 && !(hi > lo)) ||
      !std::isfinite(hi)) {
    throw InvalidParameter("invalid delta range: need 0 < delta_min < delta_max and count >= 1");
  }
  std::vector<double> deltas(count);
  for (std::size_t k = 0; k < count; ++k) {
    deltas[k] = count == 1 ? lo
                           : (k + 1 == count ? hi
                                             : lo + (hi - lo) * static_cast<double>(k) /
                                                        static_cast<double>(count - 1));
  }
  const std::string fmt = output_format(cfg, "csv");
  if (fmt == "text") throw InvalidParameter("ridge writes csv or json");

  const auto points = find_anti_zeno_ridge(gamma, length, deltas, cfg.threads.value_or(0));
  std::optional<RidgeFit> fit;
  if (points.size() >= 3) fit = ridge_linearity(points);
  for (const auto& pt : points) {
    if (pt.flat_landscape) {
      err << "warning: flat n_s landscape at delta = " << format_number(pt.delta) << '\n';
    }
  }

  std::ostringstream text;
  std::ostringstream summary;
  if (fit) {
    summary << "fit: slope " << format_number(fit->slope) << ", intercept "
            << format_number(fit->intercept) << ", max_residual "
            << format_number(fit->max_residual) << '\n';
  } else {
    summary << "fit: skipped (needs at least 3 points)\n";
  }
  if (fmt == "csv") {
    text << "delta,kappa_opt,n_s_max\n";
    for (const auto& pt : points) {
      text << format_number(pt.delta) << ',' << format_number(pt.kappa_opt) << ','
           << format_number(pt.n_s_max) << '\n';
    }
  } else {
    Json doc{{"gamma", gamma}, {"length", length}};
    Json arr = Json::array();
    for (const auto& pt : points) {
      arr.push_back({{"delta", pt.delta}, {"kappa_opt", pt.kappa_opt}, {"n_s_max", pt.n_s_max}});
    }
    doc["points"] = std::move(arr);
    doc["fit"] = fit ? Json{{"slope", fit->slope},
                            {"intercept", fit->intercept},
                            {"max_residual", fit->max_residual}}
                     : Json(nullptr);
    text << doc.dump(2) << '\n';
  }
  emit(cfg, text.str(), out);
  if (cfg.out || fmt == "json") {
    out << summary.str();
  } else {
    out << "# " << summary.str();
  }
  return kOk;
}

template <typename T>
void bind_option(CLI::App* app, const std::string& name, std::optional<T>& target,
          const std::string& description) {
  app->add_option_function<T>(
      name, [&target](const T& value) { target = value; }, description);
}

void add_common_options(CLI::App* app, RunConfig& flags, std::optional<std::string>& config) {
  bind_option(app, "--gamma", flags.gamma, "nonlinear coupling");
  bind_option(app, "--kappa", flags.kappa, "idler/auxiliary linear coupling");
  bind_option(app, "--delta", flags.delta, "phase mismatch");
  bind_option(app, "--length", flags.length, "interaction length");
  bind_option(app, "--engine", flags.engine, "propagation engine");
  bind_option(app, "--config", config, "flat JSON config document");
  bind_option(app, "--out", flags.out, "output file (default: stdout)");
  bind_option(app, "--format", flags.format, "csv | json | text");
  bind_option(app, "--threads", flags.threads, "worker threads (0 = all cores)");
  bind_option(app, "--seed", flags.seed, "seed for randomized parameters");
}

}  // namespace

void RunConfig::overlay(const RunConfig& flags) {
  take(gamma, flags.gamma);
  take(kappa, flags.kappa);
  take(delta, flags.delta);
  take(length, flags.length);
  take(engine, flags.engine);
  take(format, flags.format);
  take(out, flags.out);
  take(threads, flags.threads);
  take(seed, flags.seed);
  take(axis1, flags.axis1);
  take(axis1_min, flags.axis1_min);
  take(axis1_max, flags.axis1_max);
  take(axis1_count, flags.axis1_count);
  take(axis2, flags.axis2);
  take(axis2_min, flags.axis2_min);
  take(axis2_max, flags.axis2_max);
  take(axis2_count, flags.axis2_count);
  take(delta_min, flags.delta_min);
  take(delta_max, flags.delta_max);
  take(delta_count, flags.delta_count);
}

RunConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidParameter("config document must be a JSON object");
  RunConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "gamma") cfg.gamma = number_of(value, key);
    else if (key == "kappa") cfg.kappa = number_of(value, key);
    else if (key == "delta") cfg.delta = number_of(value, key);
    else if (key == "length") cfg.length = number_of(value, key);
    else if (key == "engine") cfg.engine = string_of(value, key);
    else if (key == "format") cfg.format = string_of(value, key);
    else if (key == "out") cfg.out = string_of(value, key);
    else if (key == "threads") cfg.threads = static_cast<unsigned>(count_of(value, key));
    else if (key == "seed") cfg.seed = count_of(value, key);
    else if (key == "axis1") cfg.axis1 = string_of(value, key);
    else if (key == "axis1_min") cfg.axis1_min = number_of(value, key);
    else if (key == "axis1_max") cfg.axis1_max = number_of(value, key);
    else if (key == "axis1_count") cfg.axis1_count = count_of(value, key);
    else if (key == "axis2") cfg.axis2 = string_of(value, key);
    else if (key == "axis2_min") cfg.axis2_min = number_of(value, key);
    else if (key == "axis2_max") cfg.axis2_max = number_of(value, key);
    else if (key == "axis2_count") cfg.axis2_count = count_of(value, key);
    else if (key == "delta_min") cfg.delta_min = number_of(value, key);
    else if (key == "delta_max") cfg.delta_max = number_of(value, key);
    else if (key == "delta_count") cfg.delta_count = count_of(value, key);
    else if (std::find(kResultKeys.begin(), kResultKeys.end(), key) == kResultKeys.end()) {
      throw InvalidParameter("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw InvalidParameter("cannot read config file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidParameter("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probed parametric downconversion: Zeno and anti-Zeno dynamics"};
  app.require_subcommand(1);

  RunConfig flags;
  std::optional<std::string> config_path;

  auto* simulate = app.add_subcommand("simulate", "propagate one parameter set");
  auto* classify = app.add_subcommand("classify", "oscillatory/hyperbolic regime of the cubic");
  auto* sweep = app.add_subcommand("sweep", "n_s over a 2D parameter grid");
  auto* dressed = app.add_subcommand("dressed-check", "dressed-frame equivalence self-test");
  auto* ridge = app.add_subcommand("ridge", "anti-Zeno ridge kappa_opt(delta)");
  for (auto* sub : {simulate, classify, sweep, dressed, ridge}) {
    add_common_options(sub, flags, config_path);
  }
  bind_option(ridge, "--delta-min", flags.delta_min, "smallest mismatch");
  bind_option(ridge, "--delta-max", flags.delta_max, "largest mismatch");
  bind_option(ridge, "--delta-count", flags.delta_count, "number of mismatch values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    RunConfig cfg;
    if (config_path) cfg = load_config_file(*config_path);
    cfg.overlay(flags);

    if (simulate->parsed()) return cmd_simulate(cfg, out, err);
    if (classify->parsed()) return cmd_classify(cfg, out, err);
    if (sweep->parsed()) return cmd_sweep(cfg, out, err);
    if (dressed->parsed()) return cmd_dressed_check(cfg, out, err);
    if (ridge->parsed()) return cmd_ridge(cfg, out, err);
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kEngineMismatch;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInvalidInput;
}

}  // namespace pdczeno::cli
