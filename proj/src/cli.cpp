#include "chscatter/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "chscatter/error.hpp"
#include "chscatter/io.hpp"
#include "chscatter/recovery.hpp"
#include "chscatter/solitary.hpp"
#include "chscatter/spectrum.hpp"

namespace chscatter::cli {

using nlohmann::json;

namespace {

constexpr const char* kConfigEnv = "CHSCATTER_CONFIG";

const std::vector<std::string> kRealFlags = {"--xmin", "--xmax", "--dx", "--ymin", "--ymax", "--dy",
                                             "--c",    "--y0",   "--tol", "--decay-tol"};

JostMethod parse_method(const std::string& s) {
  if (s == "ode") return JostMethod::ode;
  if (s == "volterra") return JostMethod::volterra;
  throw InputError("method must be 'ode' or 'volterra', got '" + s + "'");
}

const char* method_name(JostMethod m) { return m == JostMethod::ode ? "ode" : "volterra"; }

json grid_json(const Grid1D& g) {
  return {{"min", g.front()}, {"max", g.back()}, {"spacing", g.dx()}, {"points", g.size()}};
}

json diagnostics_json(const RecoveryDiagnostics& d) {
  json j = {{"tail_correction", d.tail_correction},
            {"min_f", d.min_f},
            {"amp_minus", d.amp_minus},
            {"H_range", {d.h_min, d.h_max}},
            {"admissible_x", {d.x_admissible_lo, d.x_admissible_hi}}};
  if (d.jost_residual) j["jost_residual"] = *d.jost_residual;
  return j;
}

// Largest grid with spacing d starting at lo whose last node does not pass hi.
Grid1D fit_grid(double lo, double hi, double d) {
  Grid1D g = Grid1D::from_bounds(lo, hi, d);
  std::size_t n = g.size();
  while (n > 2 && g.x0() + static_cast<double>(n - 1) * d > hi) --n;
  return Grid1D(lo, d, n);
}

// Companion file next to `output`: "dir/name.csv" -> "dir/name<suffix>".
std::string sibling(const std::string& output, const std::string& suffix) {
  std::filesystem::path p(output);
  p.replace_filename(p.stem().string() + suffix);
  return p.string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open output file '" + path + "'");
  f << content;
  if (!f) throw InputError("failed writing '" + path + "'");
}

std::string csv_text(const SampledFunction& f) {
  std::ostringstream os;
  io::write_profile_csv(os, f);
  return os.str();
}

// Profile CSV plus its .plot.csv companion; the JSON report goes to <stem>.json,
// or to `err` when writing the profile to stdout.
void emit_profile(const RunConfig& cfg, const SampledFunction& profile, const json* report, std::ostream& out,
                  std::ostream& err) {
  const std::string text = csv_text(profile);
  if (cfg.output) {
    write_file(*cfg.output, text);
    write_file(sibling(*cfg.output, ".plot.csv"), text);
    if (report) write_file(sibling(*cfg.output, ".json"), report->dump(2) + "\n");
  } else {
    out << text;
    if (report) err << report->dump(2) << '\n';
  }
}

void emit_json(const RunConfig& cfg, const json& report, std::ostream& out) {
  if (cfg.output)
    write_file(*cfg.output, report.dump(2) + "\n");
  else
    out << report.dump(2) << '\n';
}

Grid1D default_ygrid(const MomentumProfile& m, const RunConfig& cfg) {
  const MonotoneMap y = forward_coordinate(m);
  const double dy = cfg.dy.value_or(m.grid().dx());
  return fit_grid(cfg.ymin.value_or(y.min_value()), cfg.ymax.value_or(y.max_value()), dy);
}

VolterraOptions volterra_options(const RunConfig& cfg) {
  VolterraOptions o;
  o.tol = cfg.volterra_tol;
  o.max_iter = cfg.max_iter;
  return o;
}

// x-grid requested by flags, completed from the admissible interval of f.
Grid1D recovery_xgrid(const JostFunction& f, const RunConfig& cfg, double default_dx) {
  const double dx = cfg.dx.value_or(default_dx);
  if (!cfg.xmin && !cfg.xmax) return admissible_xgrid(f, dx);
  const Grid1D adm = admissible_xgrid(f, dx);
  return fit_grid(cfg.xmin.value_or(adm.front()), cfg.xmax.value_or(adm.back()), dx);
}

int cmd_forward(const std::string& input, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const MomentumProfile m(io::read_profile_csv_file(input), cfg.decay_tol);
  const PotentialProfile Q = compute_potential(m, default_ygrid(m, cfg));
  emit_profile(cfg, Q.samples(), nullptr, out, err);
  return kSuccess;
}

int cmd_invert(const std::string& input, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PotentialProfile Q(io::read_profile_csv_file(input), cfg.decay_tol);
  const JostFunction f = solve_jost(Q, cfg.method, volterra_options(cfg));
  RecoveryResult r = recover_m(f, recovery_xgrid(f, cfg, Q.grid().dx()));
  r.diagnostics.jost_residual = jost_residual(f, Q);
  const json report = {{"command", "invert"},
                       {"method", method_name(cfg.method)},
                       {"x_grid", grid_json(r.m.grid())},
                       {"y_grid", grid_json(Q.grid())},
                       {"diagnostics", diagnostics_json(r.diagnostics)}};
  emit_profile(cfg, r.m.samples(), &report, out, err);
  return kSuccess;
}

int cmd_roundtrip(const std::string& input, const RunConfig& cfg, std::ostream& out) {
  const MomentumProfile m(io::read_profile_csv_file(input), cfg.decay_tol);
  const PotentialProfile Q = compute_potential(m, default_ygrid(m, cfg));
  const JostFunction f = solve_jost(Q, cfg.method, volterra_options(cfg));
  const MonotoneMap H = compute_H(f);

  // Input nodes inside the admissible interval and the requested window.
  const Grid1D& xg = m.grid();
  const double lo = std::max({xg.front(), std::log(H.min_value()), cfg.xmin.value_or(-INFINITY)});
  const double hi = std::min({xg.back(), std::log(H.max_value()), cfg.xmax.value_or(INFINITY)});
  const auto first = static_cast<std::size_t>(std::ceil((lo - xg.x0()) / xg.dx() - 1e-9));
  const auto last = static_cast<std::size_t>(std::floor((hi - xg.x0()) / xg.dx() + 1e-9));
  if (!(hi > lo) || last <= first || last >= xg.size())
    throw RangeError("no input nodes inside the admissible interval", std::log(H.min_value()),
                     std::log(H.max_value()), lo);
  const Grid1D eval(xg.point(first), xg.dx(), last - first + 1);

  RecoveryResult r = recover_m(f, eval);
  double sup = 0.0;
  for (std::size_t i = 0; i < eval.size(); ++i)
    sup = std::max(sup, std::abs(r.m.samples()[i] - m.samples()[first + i]));
  r.diagnostics.jost_residual = jost_residual(f, Q);
  const json report = {{"command", "roundtrip"},
                       {"method", method_name(cfg.method)},
                       {"sup_error", sup},
                       {"x_grid", grid_json(eval)},
                       {"y_grid", grid_json(Q.grid())},
                       {"diagnostics", diagnostics_json(r.diagnostics)}};
  emit_json(cfg, report, out);
  return kSuccess;
}

int cmd_solitary(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.c) throw InputError("solitary needs --c");
  if (!(*cfg.c > 2.0)) throw InputError("speed must exceed 2, got c = " + io::format_real(*cfg.c));
  const SolitaryWaveSpec spec(*cfg.c, cfg.y0);
  SolitaryOptions opts;
  opts.dy = cfg.dy.value_or(1e-3);
  opts.decay_tol = cfg.decay_tol;
  opts.method = cfg.method;
  opts.volterra = volterra_options(cfg);
  opts.exact_fast_path = cfg.exact_fast_path;

  const bool exact = opts.exact_fast_path && spec.has_exact_jost();
  const Grid1D ygrid = solitary_ygrid(spec, opts.dy, opts.decay_tol);
  const PotentialProfile Q = solitary_potential_profile(spec, ygrid, opts.decay_tol);
  const JostFunction f = exact ? JostFunction(SampledFunction::sample(ygrid, solitary_jost_exact))
                               : solve_jost(Q, opts.method, opts.volterra);
  RecoveryResult r = recover_m(f, recovery_xgrid(f, cfg, 1e-3));
  r.diagnostics.jost_residual = jost_residual(f, Q);

  // residual and crest from the whole admissible profile; a window need not decay
  const SampledFunction& phi = r.m.samples();
  const bool windowed = cfg.xmin || cfg.xmax;
  const RecoveryResult full = windowed ? recover_m(f, admissible_xgrid(f, cfg.dx.value_or(1e-3))) : r;
  const SampledFunction& whole = full.m.samples();
  const auto peak = std::max_element(whole.values().begin(), whole.values().end()) - whole.values().begin();
  const double residual = traveling_wave_residual(MomentumProfile(whole, kNoDecayCheck), spec.c());
  const json report = {{"command", "solitary"},
                       {"c", spec.c()},
                       {"y0", spec.y0()},
                       {"jost", exact ? "exact" : method_name(opts.method)},
                       {"residual", residual},
                       {"max_phi", whole[static_cast<std::size_t>(peak)]},
                       {"peak_x", whole.grid().point(static_cast<std::size_t>(peak))},
                       {"x_grid", grid_json(phi.grid())},
                       {"y_grid", grid_json(ygrid)},
                       {"diagnostics", diagnostics_json(r.diagnostics)}};
  emit_profile(cfg, phi, &report, out, err);
  return kSuccess;
}

int cmd_spectrum(const std::optional<std::string>& input, const RunConfig& cfg, std::ostream& out) {
  if (input && cfg.c) throw InputError("spectrum takes either an input file or --c, not both");
  if (!input && !cfg.c) throw InputError("spectrum needs an input file or --c");
  std::optional<PotentialProfile> Q;
  if (input) {
    Q.emplace(io::read_profile_csv_file(*input), cfg.decay_tol);
  } else {
    if (!(*cfg.c > 2.0)) throw InputError("speed must exceed 2, got c = " + io::format_real(*cfg.c));
    const SolitaryWaveSpec spec(*cfg.c, cfg.y0);
    Q.emplace(solitary_potential_profile(spec, solitary_ygrid(spec, cfg.dy.value_or(1e-3), cfg.decay_tol),
                                         cfg.decay_tol));
  }
  const EigenvalueReport rep = find_eigenvalues(*Q, cfg.spectrum_tol);
  const json report = {{"command", "spectrum"},
                       {"mu", rep.mu_values},
                       {"lambda", rep.lambda_values},
                       {"wronskian", rep.wronskians},
                       {"scan_points", rep.scan_points},
                       {"discarded_trials", rep.discarded_trials},
                       {"matching_point", rep.matching_point},
                       {"tol", cfg.spectrum_tol},
                       {"y_grid", grid_json(Q->grid())}};
  emit_json(cfg, report, out);
  return kSuccess;
}

}  // namespace

void RunConfig::validate() const {
  auto positive = [](const std::optional<double>& v, const char* name) {
    if (v && !(*v > 0.0)) throw InputError(std::string(name) + " must be positive");
  };
  positive(dx, "dx");
  positive(dy, "dy");
  if (xmin && xmax && !(*xmin < *xmax)) throw InputError("xmin must be smaller than xmax");
  if (ymin && ymax && !(*ymin < *ymax)) throw InputError("ymin must be smaller than ymax");
  if (!(volterra_tol > 0.0)) throw InputError("Volterra tolerance must be positive");
  if (!(spectrum_tol > 0.0)) throw InputError("spectrum tolerance must be positive");
  if (!(decay_tol > 0.0)) throw InputError("decay_tol must be positive");
  if (max_iter < 1) throw InputError("max_iter must be at least 1");
}

RunConfig load_config_file(const std::string& path, RunConfig cfg) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw InputError("config '" + path + "' must hold a JSON object");

  const std::map<std::string, std::optional<double>*> optionals = {
      {"xmin", &cfg.xmin}, {"xmax", &cfg.xmax}, {"dx", &cfg.dx}, {"ymin", &cfg.ymin},
      {"ymax", &cfg.ymax}, {"dy", &cfg.dy},     {"c", &cfg.c}};
  const std::map<std::string, double*> reals = {{"y0", &cfg.y0},
                                                {"volterra_tol", &cfg.volterra_tol},
                                                {"spectrum_tol", &cfg.spectrum_tol},
                                                {"decay_tol", &cfg.decay_tol}};
  try {
    for (const auto& [key, value] : j.items()) {
      if (auto it = optionals.find(key); it != optionals.end()) {
        *it->second = value.get<double>();
      } else if (auto jt = reals.find(key); jt != reals.end()) {
        *jt->second = value.get<double>();
      } else if (key == "method") {
        cfg.method = parse_method(value.get<std::string>());
      } else if (key == "max_iter") {
        cfg.max_iter = value.get<int>();
      } else if (key == "exact_fast_path") {
        cfg.exact_fast_path = value.get<bool>();
      } else if (key == "output") {
        cfg.output = value.get<std::string>();
      } else {
        throw InputError("config '" + path + "': unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InputError("config '" + path + "': " + e.what());
  }
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverse scattering for the Camassa-Holm equation", "chscatter"};
  app.require_subcommand(1);

  std::string config_path, method, max_iter, output, input;
  std::map<std::string, std::string> reals;
  bool no_exact = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (default: $CHSCATTER_CONFIG)");
    for (const auto& flag : kRealFlags) sub->add_option(flag, reals[flag]);
    sub->add_option("--method", method, "Jost solver: ode | volterra");
    sub->add_option("--max-iter", max_iter, "Volterra sweep limit");
    sub->add_option("--output", output, "output path (default: stdout)");
  };
  CLI::App* forward = app.add_subcommand("forward", "m(x) CSV -> Q(y) CSV");
  CLI::App* invert = app.add_subcommand("invert", "Q(y) CSV -> m(x) CSV and diagnostics JSON");
  CLI::App* roundtrip = app.add_subcommand("roundtrip", "m(x) CSV -> forward -> invert -> error report JSON");
  CLI::App* solitary = app.add_subcommand("solitary", "solitary-wave profile for speed --c");
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues in (-1/4, 0) for a Q CSV or --c");
  for (CLI::App* sub : {forward, invert, roundtrip}) {
    add_common(sub);
    sub->add_option("input", input, "input CSV")->required();
  }
  add_common(solitary);
  solitary->add_flag("--no-exact", no_exact, "always solve for the Jost function numerically");
  add_common(spectrum);
  spectrum->add_option("input", input, "potential CSV");

  std::vector<const char*> argv{"chscatter"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    RunConfig cfg;
    if (config_path.empty())
      if (const char* env = std::getenv(kConfigEnv); env && *env) config_path = env;
    if (!config_path.empty()) cfg = load_config_file(config_path, cfg);

    auto flag = [&](const std::string& name) -> std::optional<double> {
      if (sub->count(name) == 0) return std::nullopt;
      return io::parse_real(reals[name], name);
    };
    std::optional<double>* targets[] = {&cfg.xmin, &cfg.xmax, &cfg.dx, &cfg.ymin, &cfg.ymax, &cfg.dy, &cfg.c};
    const char* names[] = {"--xmin", "--xmax", "--dx", "--ymin", "--ymax", "--dy", "--c"};
    for (std::size_t i = 0; i < std::size(names); ++i)
      if (auto v = flag(names[i])) *targets[i] = *v;
    if (auto v = flag("--y0")) cfg.y0 = *v;
    if (auto v = flag("--decay-tol")) cfg.decay_tol = *v;
    if (auto v = flag("--tol")) (sub == spectrum ? cfg.spectrum_tol : cfg.volterra_tol) = *v;
    if (sub->count("--method")) cfg.method = parse_method(method);
    if (sub->count("--max-iter")) {
      const double v = io::parse_real(max_iter, "--max-iter");
      if (v != std::floor(v) || v < 1 || v > 1e6) throw InputError("--max-iter must be a positive integer");
      cfg.max_iter = static_cast<int>(v);
    }
    if (sub->count("--output")) cfg.output = output;
    if (no_exact) cfg.exact_fast_path = false;
    cfg.validate();

    if (sub == forward) return cmd_forward(input, cfg, out, err);
    if (sub == invert) return cmd_invert(input, cfg, out, err);
    if (sub == roundtrip) return cmd_roundtrip(input, cfg, out);
    if (sub == solitary) return cmd_solitary(cfg, out, err);
    return cmd_spectrum(spectrum->count("input") ? std::optional<std::string>(input) : std::nullopt, cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvariantError& e) {
    err << "error: invariant violated: " << e.what() << '\n';
    return kInputError;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kRangeError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kRangeError;
  } catch (const SolverError& e) {
    err << "error: solver failed: " << e.what() << '\n';
    return kSolverError;
  }
}

}  // namespace chscatter::cli
