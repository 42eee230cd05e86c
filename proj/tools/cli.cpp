#include "cli.hpp"

#include "csv.hpp"
#include "plot.hpp"

#include "netcast/dnn.hpp"
#include "netcast/engine.hpp"
#include "netcast/errors.hpp"
#include "netcast/model_io.hpp"
#include "netcast/xtalk_analytic.hpp"
#include "netcast/xtalk_full.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;

namespace netcast::cli {

namespace {

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"sweep-photons", "error rate versus photon budget, one curve per scheme"},
    {"sweep-xtalk", "error rate versus nearest-neighbor crosstalk"},
    {"capacity-table", "analytic capacity and C-band rates per chi"},
    {"kernel", "full-model crosstalk kernel: single point, (T, Omega) scan or frontier"},
    {"eval", "one noisy evaluation at fixed budget and crosstalk"},
};

// Command-line values; unset ones leave the config file (or defaults) alone.
struct Flags {
  std::optional<std::string> config, model, mnist_dir, budget_mode, dataflow, out, kernel_mode;
  std::vector<std::string> schemes, modes;
  std::optional<double> photons_min, photons_max, photons, capacitance, temperature, band, t, omega,
      kappa, grid_step, lo_amplitude, chi_t, chi_omega;
  std::optional<int> photons_steps, bits, n_channels;
  std::vector<double> chi_list, t_list, omega_list, chi_t_list, chi_omega_list;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> subset;
  bool plot = false, no_johnson = false, no_shot = false, xtalk_noise = false;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags override its values");
  sub->add_option("--model", f.model, "NCW1 weight file");
  sub->add_option("--mnist-dir", f.mnist_dir, "directory holding the t10k IDX files");
  sub->add_option("--scheme", f.schemes, "ss, sln, lns, lnln, coherent (repeatable or comma list)")
      ->delimiter(',');
  sub->add_option("--budget-mode", f.budget_mode, "source or transmitted");
  sub->add_option("--dataflow", f.dataflow, "tifs or fits");
  sub->add_option("--lo-amplitude", f.lo_amplitude, "coherent LO amplitude (0 = 10x source)");
  sub->add_option("--photons-min", f.photons_min);
  sub->add_option("--photons-max", f.photons_max);
  sub->add_option("--photons-steps", f.photons_steps);
  sub->add_option("--photons", f.photons, "single budget for eval");
  sub->add_option("--chi-list", f.chi_list)->delimiter(',');
  sub->add_option("--mode", f.modes, "crosstalk modes: temporal, frequency, joint")->delimiter(',');
  sub->add_option("--chi-t-list", f.chi_t_list, "joint-grid temporal axis")->delimiter(',');
  sub->add_option("--chi-omega-list", f.chi_omega_list, "joint-grid frequency axis")->delimiter(',');
  sub->add_option("--chi-t", f.chi_t, "temporal crosstalk for eval");
  sub->add_option("--chi-omega", f.chi_omega, "frequency crosstalk for eval");
  sub->add_flag("--xtalk-noise", f.xtalk_noise, "keep detector noise on during crosstalk sweeps");
  sub->add_flag("--no-johnson", f.no_johnson);
  sub->add_flag("--no-shot", f.no_shot);
  sub->add_option("--capacitance", f.capacitance, "detector capacitance, F");
  sub->add_option("--temperature", f.temperature, "detector temperature, K");
  sub->add_option("--band", f.band, "optical band, Hz");
  sub->add_option("--bits", f.bits, "bits per weight");
  sub->add_option("--kernel-mode", f.kernel_mode, "single, scan or frontier");
  sub->add_option("--kappa", f.kappa);
  sub->add_option("--step-time", f.t, "symbol period T");
  sub->add_option("--comb-spacing", f.omega, "comb spacing Omega");
  sub->add_option("--n-channels", f.n_channels);
  sub->add_option("--grid-step", f.grid_step, "frequency step (0 = kappa/100)");
  sub->add_option("--t-list", f.t_list)->delimiter(',');
  sub->add_option("--omega-list", f.omega_list)->delimiter(',');
  sub->add_option("--seed", f.seed);
  sub->add_option("--subset", f.subset, "first N test images (0 = all)");
  sub->add_option("--out", f.out, "output directory");
  sub->add_flag("--plot", f.plot, "also write SVG plots");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot read config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
}

json overlay(const Flags& f) {
  json j = json::object();
  auto put = [&](const char* key, const auto& opt) {
    if (opt)
      j[key] = *opt;
  };
  auto put_list = [&](const char* key, const auto& v) {
    if (!v.empty())
      j[key] = v;
  };
  put("model", f.model);
  put("mnist_dir", f.mnist_dir);
  put_list("schemes", f.schemes);
  put("budget_mode", f.budget_mode);
  put("dataflow", f.dataflow);
  put("lo_amplitude", f.lo_amplitude);
  put("photons_min", f.photons_min);
  put("photons_max", f.photons_max);
  put("photons_steps", f.photons_steps);
  put("photons", f.photons);
  put_list("chi_list", f.chi_list);
  put_list("xtalk_modes", f.modes);
  put_list("chi_t_list", f.chi_t_list);
  put_list("chi_omega_list", f.chi_omega_list);
  put("chi_t", f.chi_t);
  put("chi_omega", f.chi_omega);
  if (f.xtalk_noise)
    j["xtalk_noise"] = true;
  if (f.no_johnson)
    j["johnson"] = false;
  if (f.no_shot)
    j["shot"] = false;
  put("capacitance", f.capacitance);
  put("temperature", f.temperature);
  put("band_hz", f.band);
  put("bits", f.bits);
  put("kernel_mode", f.kernel_mode);
  put("kappa", f.kappa);
  put("step_time", f.t);
  put("comb_spacing", f.omega);
  put("n_channels", f.n_channels);
  put("grid_step", f.grid_step);
  put_list("t_list", f.t_list);
  put_list("omega_list", f.omega_list);
  put("seed", f.seed);
  put("subset", f.subset);
  put("out", f.out);
  if (f.plot)
    j["plot"] = true;
  return j;
}

// ---- shared setup ------------------------------------------------------

EngineConfig engine_template(const RunConfig& c, SchemeKind kind) {
  EngineConfig e;
  e.scheme.kind = kind;
  e.scheme.lo_amplitude = c.lo_amplitude;
  e.budget_mode = parse_budget_mode(c.budget_mode);
  e.dataflow = parse_dataflow(c.dataflow);
  e.noise.capacitance = c.capacitance;
  e.noise.temperature = c.temperature;
  e.noise.johnson_enabled = c.johnson;
  e.noise.shot_enabled = c.shot;
  e.noise.johnson_on_coherent = c.johnson_on_coherent;
  e.noise.seed = c.seed;
  e.photons = c.photons;
  return e;
}

DnnModel require_model(const RunConfig& c) {
  if (c.model.empty())
    throw ConfigError(c.command + " needs --model");
  return load_model(c.model);
}

Dataset require_data(const RunConfig& c) {
  return load_mnist_dir(c.mnist_dir).head(c.subset);
}

fullmodel::FullModelParams kernel_params(const RunConfig& c) {
  fullmodel::FullModelParams p;
  p.kappa = c.kappa;
  p.rc = c.rc;
  p.step_time = c.step_time;
  p.comb_spacing = c.comb_spacing;
  p.n_channels = c.n_channels;
  p.grid_step = c.grid_step;
  p.duty = c.duty;
  p.validate();
  return p;
}

std::string offset_name(int v) { return v < 0 ? "m" + std::to_string(-v) : std::to_string(v); }

std::vector<std::pair<int, int>> kernel_offsets(int range) {
  std::vector<std::pair<int, int>> o;
  for (int p = -range; p <= range; ++p)
    for (int q = -range; q <= range; ++q)
      o.emplace_back(p, q);
  return o;
}

struct Outputs {
  std::vector<std::string> files;
  std::map<std::string, std::string> schemas;
};

// ---- subcommands ---------------------------------------------------------

int cmd_sweep_photons(const RunConfig& c, const fs::path& dir, Outputs& out) {
  const auto model = require_model(c);
  const auto data = require_data(c);
  const auto grid = c.photon_grid();

  CsvWriter csv(dir / "sweep_photons.csv", "sweep_photons", 1,
                {"budget_mode", "scheme", "photons", "error_rate", "stderr", "sql_flag"});
  CsvWriter sql(dir / "sql.csv", "sql", 1,
                {"budget_mode", "scheme", "baseline_error", "sql", "bracketed"});
  out.files.insert(out.files.end(), {"sweep_photons.csv", "sql.csv"});
  out.schemas["sweep_photons.csv"] = "sweep_photons v1";
  out.schemas["sql.csv"] = "sql v1";

  std::vector<PlotSeries> series;
  bool all_bracketed = true;
  for (const auto& name : c.schemes) {
    const auto kind = parse_scheme(name);
    const auto r = photon_sweep(model, data, engine_template(c, kind), grid);
    for (std::size_t i = 0; i < r.axis.size(); ++i)
      csv.row({c.budget_mode, std::string(to_string(kind)), format_number(r.axis[i]),
               format_number(r.error_rate[i]), format_number(r.stderr_rate[i]),
               r.error_rate[i] <= 1.5 * r.baseline_error ? "1" : "0"});
    sql.row({c.budget_mode, std::string(to_string(kind)), format_number(r.baseline_error),
             r.sql ? format_number(*r.sql) : "nan", r.sql ? "1" : "0"});
    if (!r.sql) {
      all_bracketed = false;
      std::cerr << "netcast: " << to_string(kind) << ": error never crosses 1.5 x baseline ("
                << r.baseline_error << ") between " << grid.front() << " and " << grid.back()
                << " photons\n";
    }
    series.push_back({std::string(to_string(kind)), r.axis, r.error_rate});
  }
  if (c.plot) {
    write_svg_plot(dir / "sweep_photons.svg",
                   {"Error vs photons per MAC (" + c.budget_mode + ")", "photons / MAC",
                    "error rate", true},
                   series);
    out.files.push_back("sweep_photons.svg");
  }
  return all_bracketed ? kOk : kNumericalError;
}

int cmd_sweep_xtalk(const RunConfig& c, const fs::path& dir, Outputs& out) {
  const auto model = require_model(c);
  const auto data = require_data(c);
  const auto cfg = engine_template(c, parse_scheme(c.schemes.front()));
  CrosstalkSweepOptions opt;
  opt.keep_noise = c.xtalk_noise;

  CsvWriter csv(dir / "sweep_xtalk.csv", "sweep_xtalk", 1, {"mode", "chi", "error_rate", "stderr"});
  out.files.push_back("sweep_xtalk.csv");
  out.schemas["sweep_xtalk.csv"] = "sweep_xtalk v1";
  std::vector<PlotSeries> series;
  for (const auto& m : c.xtalk_modes) {
    const auto mode = parse_crosstalk_mode(m);
    const auto r = crosstalk_sweep(model, data, cfg, mode, c.chi_list, opt);
    for (std::size_t i = 0; i < r.axis.size(); ++i)
      csv.row({to_string(mode), format_number(r.axis[i]), format_number(r.error_rate[i]),
               format_number(r.stderr_rate[i])});
    series.push_back({to_string(mode), r.axis, r.error_rate});
  }

  if (!c.chi_t_list.empty() && !c.chi_omega_list.empty()) {
    CsvWriter joint(dir / "sweep_xtalk_joint.csv", "sweep_xtalk_joint", 1,
                    {"chi_t", "chi_omega", "error_rate", "stderr"});
    out.files.push_back("sweep_xtalk_joint.csv");
    out.schemas["sweep_xtalk_joint.csv"] = "sweep_xtalk_joint v1";
    EngineConfig run = cfg;
    if (!opt.keep_noise) {
      run.noise = NoiseModel::disabled();
      run.noise.seed = c.seed;
    }
    for (double ct : c.chi_t_list)
      for (double co : c.chi_omega_list) {
        run.kernel = xtalk::nearest_neighbor_kernel(ct, co);
        const auto ev = evaluate(model, data, run);
        joint.row({format_number(ct), format_number(co), format_number(ev.error_rate()),
                   format_number(ev.stderr_rate())});
      }
  }
  if (c.plot) {
    write_svg_plot(dir / "sweep_xtalk.svg", {"Error vs crosstalk", "chi", "error rate", false},
                   series);
    out.files.push_back("sweep_xtalk.svg");
  }
  return kOk;
}

int cmd_capacity_table(const RunConfig& c, const fs::path& dir, Outputs& out) {
  const auto rows = xtalk::capacity_table(c.chi_list, c.band_hz, c.bits);
  CsvWriter csv(dir / "capacity.csv", "capacity", 1, {"chi", "c0", "weights_per_s", "bits_per_s"});
  out.files.push_back("capacity.csv");
  out.schemas["capacity.csv"] = "capacity v1";
  for (const auto& r : rows)
    csv.row({format_number(r.chi), format_number(r.c0), format_number(r.weights_per_s),
             format_number(r.bits_per_s)});
  return kOk;
}

void write_scan(const std::vector<fullmodel::ScanPoint>& scan, int range, const fs::path& dir,
                Outputs& out) {
  std::vector<std::string> cols{"t", "omega", "c0", "max_offdiag"};
  const auto offs = kernel_offsets(range);
  for (auto [p, q] : offs)
    cols.push_back("x_" + offset_name(p) + "_" + offset_name(q));
  CsvWriter csv(dir / "kernel_scan.csv", "kernel_scan", 1, cols);
  out.files.push_back("kernel_scan.csv");
  out.schemas["kernel_scan.csv"] = "kernel_scan v1";
  for (const auto& s : scan) {
    std::vector<std::string> row{format_number(s.step_time), format_number(s.comb_spacing),
                                 format_number(s.c0), format_number(s.kernel.max_off_diagonal())};
    for (auto [p, q] : offs)
      row.push_back(format_number(s.kernel.at(p, q)));
    csv.row(row);
  }
}

int cmd_kernel(const RunConfig& c, const fs::path& dir, Outputs& out) {
  const auto params = kernel_params(c);
  if (c.kernel_mode == "single") {
    const auto k = fullmodel::compute_kernel(params, c.kernel_range, c.kernel_range);
    CsvWriter csv(dir / "kernel.csv", "kernel", 1, {"p", "q", "x_pq"});
    out.files.push_back("kernel.csv");
    out.schemas["kernel.csv"] = "kernel v1";
    for (auto [p, q] : kernel_offsets(c.kernel_range))
      csv.row({format_number(static_cast<long long>(p)), format_number(static_cast<long long>(q)),
               format_number(k.at(p, q))});
    return kOk;
  }
  if (c.kernel_mode != "scan" && c.kernel_mode != "frontier")
    throw ConfigError("unknown kernel mode '" + c.kernel_mode + "' (single, scan, frontier)");

  const auto scan = fullmodel::kernel_grid_scan(params, c.t_list, c.omega_list, c.kernel_range,
                                                c.kernel_range);
  write_scan(scan, c.kernel_range, dir, out);
  if (c.kernel_mode == "scan")
    return kOk;

  const auto model = require_model(c);
  const auto data = require_data(c);
  auto order = scan;
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.c0 < b.c0; });
  EngineConfig cfg = engine_template(c, parse_scheme(c.schemes.front()));
  if (!c.xtalk_noise) {
    cfg.noise = NoiseModel::disabled();
    cfg.noise.seed = c.seed;
  }
  std::vector<EvalResult> results;
  for (const auto& s : order) {
    cfg.kernel = s.kernel;
    results.push_back(evaluate(model, data, cfg));
  }
  // best error among designs with at least this capacity
  std::vector<double> frontier(order.size());
  double best = 1.0;
  for (std::size_t i = order.size(); i-- > 0;) {
    best = std::min(best, results[i].error_rate());
    frontier[i] = best;
  }
  CsvWriter csv(dir / "kernel_frontier.csv", "kernel_frontier", 1,
                {"c0", "t", "omega", "error_rate", "stderr", "frontier_error"});
  out.files.push_back("kernel_frontier.csv");
  out.schemas["kernel_frontier.csv"] = "kernel_frontier v1";
  PlotSeries front{"frontier", {}, {}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    csv.row({format_number(order[i].c0), format_number(order[i].step_time),
             format_number(order[i].comb_spacing), format_number(results[i].error_rate()),
             format_number(results[i].stderr_rate()), format_number(frontier[i])});
    front.x.push_back(order[i].c0);
    front.y.push_back(frontier[i]);
  }
  if (c.plot) {
    write_svg_plot(dir / "kernel_frontier.svg",
                   {"Error vs capacity C0 = 2 pi / (T Omega)", "C0", "error rate", false}, {front});
    out.files.push_back("kernel_frontier.svg");
  }
  return kOk;
}

int cmd_eval(const RunConfig& c, const fs::path& dir, Outputs& out) {
  const auto model = require_model(c);
  const auto data = require_data(c);
  CsvWriter csv(dir / "eval.csv", "eval", 1,
                {"scheme", "budget_mode", "photons", "chi_t", "chi_omega", "count", "error_rate",
                 "stderr", "baseline_error"});
  out.files.push_back("eval.csv");
  out.schemas["eval.csv"] = "eval v1";
  for (const auto& name : c.schemes) {
    const auto kind = parse_scheme(name);
    auto cfg = engine_template(c, kind);
    cfg.kernel = xtalk::nearest_neighbor_kernel(c.chi_t, c.chi_omega);
    const auto ev = evaluate(model, data, cfg);
    const double base = baseline_error(model, data, cfg);
    csv.row({std::string(to_string(kind)), c.budget_mode, format_number(c.photons),
             format_number(c.chi_t), format_number(c.chi_omega),
             format_number(static_cast<long long>(ev.count)), format_number(ev.error_rate()),
             format_number(ev.stderr_rate()), format_number(base)});
  }
  return kOk;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw IoError("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

} // namespace

RunConfig resolve(const std::vector<std::string>& args) {
  CLI::App app{"Netcast optical edge-inference simulator"};
  app.require_subcommand(1);
  Flags flags;
  for (const auto& [name, about] : kCommands)
    add_flags(app.add_subcommand(name, about), flags);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    throw;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  std::string command;
  for (auto* sub : app.get_subcommands())
    command = sub->get_name();

  RunConfig c;
  bool chi_given = !flags.chi_list.empty();
  if (flags.config) {
    const json file = read_json_file(*flags.config);
    chi_given = chi_given || (file.is_object() && file.contains("chi_list"));
    c = from_json(file, c);
  }
  c = from_json(overlay(flags), c);
  c.command = command;
  if (command == "capacity-table" && !chi_given)
    c.chi_list = {0.1, 0.05, 0.01, 0.005, 0.001};
  for (auto& s : c.schemes)
    s = std::string(to_string(parse_scheme(s)));
  c.budget_mode = std::string(to_string(parse_budget_mode(c.budget_mode)));
  c.dataflow = std::string(to_string(parse_dataflow(c.dataflow)));
  for (auto& m : c.xtalk_modes)
    m = to_string(parse_crosstalk_mode(m));
  c.validate();
  return c;
}

int execute(const RunConfig& c) {
  const fs::path dir = c.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  write_json(dir / "resolved_config.json", to_json(c));

  Outputs out;
  int code = kOk;
  if (c.command == "sweep-photons")
    code = cmd_sweep_photons(c, dir, out);
  else if (c.command == "sweep-xtalk")
    code = cmd_sweep_xtalk(c, dir, out);
  else if (c.command == "capacity-table")
    code = cmd_capacity_table(c, dir, out);
  else if (c.command == "kernel")
    code = cmd_kernel(c, dir, out);
  else if (c.command == "eval")
    code = cmd_eval(c, dir, out);
  else
    throw ConfigError("unknown command '" + c.command + "'");

  std::sort(out.files.begin(), out.files.end());
  json manifest;
  manifest["tool"] = "netcast";
  manifest["version"] = kToolVersion;
  manifest["command"] = c.command;
  manifest["seed"] = c.seed;
  manifest["activation_scaling"] = "per-sample max-abs";
  manifest["files"] = out.files;
  manifest["csv_schemas"] = out.schemas;
  manifest["exit_code"] = code;
  write_json(dir / "manifest.json", manifest);
  return code;
}

int run(const std::vector<std::string>& args) {
  try {
    return execute(resolve(args));
  } catch (const CLI::CallForHelp&) {
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "netcast: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "netcast: invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "netcast: I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const NumericalError& e) {
    std::cerr << "netcast: numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "netcast: " << e.what() << '\n';
    return kNumericalError;
  }
}

} // namespace netcast::cli
