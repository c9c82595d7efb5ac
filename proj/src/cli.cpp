#include "stabma/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabma/analysis.hpp"
#include "stabma/error_bounds.hpp"
#include "stabma/errors.hpp"
#include "stabma/io.hpp"
#include "stabma/kernels.hpp"
#include "stabma/synthesis.hpp"
#include "stabma/verify/acceptance.hpp"

#ifndef STABMA_VERSION
#define STABMA_VERSION "dev"
#endif

namespace stabma::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string kernel;
  std::optional<double> lambda;
  std::optional<double> gamma;
  std::optional<double> H;
  std::optional<double> alpha;
  std::optional<std::int64_t> omega;
  std::optional<std::int64_t> Omega;
  std::optional<std::int64_t> n_points;
  std::optional<std::uint64_t> seed;
  double scale = 1.0;
  std::string out;
  std::string format;
  bool integrate = false;
  std::string alpha_fn;
  std::int64_t alpha_grid = 64;
  bool renormalize = false;
  bool timing = false;
  std::vector<double> t_values{-1.0, 0.5, 2.0};
  std::vector<int> criteria;
};

double parse_double(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  require(!text.empty() && *end == '\0' && std::isfinite(v),
          what + ": '" + text + "' is not a finite number");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::map<std::string, double> kernel_params(const Options& o) {
  std::map<std::string, double> p;
  if (o.lambda) p["lambda"] = *o.lambda;
  if (o.gamma) p["gamma"] = *o.gamma;
  if (o.H) p["H"] = *o.H;
  return p;
}

KernelDescriptor build_kernel(const Options& o, double alpha) {
  require(!o.kernel.empty(), "--kernel is required");
  const auto params = kernel_params(o);
  static const std::map<std::string, std::string> owner{
      {"lambda", "rev_ou"}, {"gamma", "exfrequency"}, {"H", "lfsn"}};
  KernelDescriptor kernel = make_kernel(o.kernel, params, alpha);
  for (const auto& entry : params)
    require(owner.at(entry.first) == o.kernel,
            "--" + entry.first + " does not apply to kernel '" + o.kernel + "'");
  return kernel;
}

double require_alpha(const Options& o) {
  require(o.alpha.has_value(), "--alpha is required");
  require(*o.alpha > 0.0 && *o.alpha <= 2.0, "--alpha must lie in (0, 2]");
  return *o.alpha;
}

std::int64_t require_positive(const std::optional<std::int64_t>& v, const std::string& flag) {
  require(v.has_value(), flag + " is required");
  require(*v >= 1, flag + " must be >= 1");
  return *v;
}

SynthesisConfig synthesis_config(const Options& o) {
  SynthesisConfig c;
  c.omega = require_positive(o.omega, "--omega");
  c.Omega = require_positive(o.Omega, "--Omega");
  c.n_points = require_positive(o.n_points, "--n");
  c.seed = *o.seed;
  c.scale = o.scale;
  c.validate();
  return c;
}

void set_number(json& j, const std::string& key, double v) {
  if (std::isfinite(v))
    j[key] = v;
  else
    j[key] = format_number(v);
}

void echo_inputs(json& j, const std::string& command, const KernelDescriptor& kernel,
                 const Options& o) {
  j["command"] = command;
  j["kernel"] = kernel.label;
  for (const auto& [name, value] : kernel.params) set_number(j, "kernel_" + name, value);
  if (o.alpha) set_number(j, "alpha", *o.alpha);
  if (o.omega) j["omega"] = *o.omega;
  if (o.Omega) j["Omega"] = *o.Omega;
  j["tool_version"] = STABMA_VERSION;
}

void put_breakdown(json& j, const std::string& prefix, const BoundBreakdown& b) {
  set_number(j, prefix + "discretization_alpha_power", b.discretization);
  set_number(j, prefix + "truncation_alpha_power", b.truncation);
  set_number(j, prefix + "total_alpha_power", b.total_alpha_power);
  set_number(j, prefix + "err_scale_alpha_norm", b.err_scale);
  j[prefix + "formula"] = b.formula;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

void emit(const Options& o, const std::string& content, std::ostream& out) {
  if (o.out.empty())
    out << content;
  else
    io::write_file_atomic(o.out, content);
}

std::string path_json(const Path& path) {
  json j;
  for (const auto& [key, value] : path.meta) j[key] = value;
  j["start_index"] = path.start_index;
  j["dt"] = path.dt;
  j["n_values"] = path.values.size();
  j["values"] = path.values;
  j["tool_version"] = STABMA_VERSION;
  return render_json(j);
}

void emit_path(const Options& o, const Path& path, std::ostream& out) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format == "csv") {
    emit(o, io::to_csv(path), out);
  } else if (format == "json") {
    emit(o, path_json(path), out);
  } else {
    std::string caption = path.meta.count("kernel") ? path.meta.at("kernel") : "path";
    if (path.meta.count("alpha")) caption += "  alpha=" + path.meta.at("alpha");
    if (path.meta.count("alpha_fn")) caption += "  alpha_fn=" + path.meta.at("alpha_fn");
    if (path.meta.count("seed")) caption += "  seed=" + path.meta.at("seed");
    emit(o, io::to_svg(path, caption), out);
  }
}

void require_report_format(const Options& o) {
  require(o.format.empty() || o.format == "json",
          "this command writes JSON reports; --format " + o.format + " is not supported");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_synth(const Options& o, std::ostream& out) {
  const double alpha = require_alpha(o);
  const KernelDescriptor kernel = build_kernel(o, alpha);
  const SynthesisConfig config = synthesis_config(o);
  const auto t0 = std::chrono::steady_clock::now();
  Path path = synthesize_fft(kernel, alpha, config);
  if (o.integrate) path = integrate_path(path);
  if (o.timing) path.meta["timing_seconds"] = format_number(seconds_since(t0));
  emit_path(o, path, out);
  return kExitOk;
}

int cmd_multisynth(const Options& o, std::ostream& out) {
  MultistableConfig config;
  config.base = synthesis_config(o);
  config.alpha_fn = o.alpha_fn.empty() ? AlphaFunction{default_logistic(config.base.n_points)}
                                       : parse_alpha_fn(o.alpha_fn, config.base.n_points);
  config.renormalize = o.renormalize;
  config.alpha_grid = o.alpha_grid;
  config.validate();
  const KernelDescriptor kernel = build_kernel(o, eval_alpha(config.alpha_fn, 1.0));
  const auto t0 = std::chrono::steady_clock::now();
  Path path = synthesize_multistable(kernel, config);
  if (o.integrate) path = integrate_path(path);
  if (o.timing) path.meta["timing_seconds"] = format_number(seconds_since(t0));
  emit_path(o, path, out);
  return kExitOk;
}

int cmd_bound(const Options& o, std::ostream& out) {
  require_report_format(o);
  const double alpha = require_alpha(o);
  const KernelDescriptor kernel = build_kernel(o, alpha);
  const std::int64_t omega = require_positive(o.omega, "--omega");
  const std::int64_t Omega = require_positive(o.Omega, "--Omega");
  const auto t0 = std::chrono::steady_clock::now();

  json j;
  echo_inputs(j, "bound", kernel, o);
  put_breakdown(j, "", best_bound(kernel, alpha, omega, Omega));
  try {
    put_breakdown(j, "generic_", generic_bound(kernel, alpha, omega, Omega));
  } catch (const InapplicableBound& e) {
    j["generic_status"] = std::string("inapplicable: ") + e.what();
  }
  if (o.timing) j["timing_seconds"] = seconds_since(t0);
  emit(o, render_json(j), out);
  return kExitOk;
}

int cmd_tune(const Options& o, std::ostream& out) {
  require_report_format(o);
  const double alpha = require_alpha(o);
  const KernelDescriptor kernel = build_kernel(o, alpha);
  const std::int64_t omega = require_positive(o.omega, "--omega");
  require(!o.Omega, "tune chooses Omega; do not pass --Omega");
  const auto t0 = std::chrono::steady_clock::now();

  const TuningResult r = optimal_Omega(kernel, alpha, omega);
  json j;
  echo_inputs(j, "tune", kernel, o);
  j["Omega"] = r.Omega;
  set_number(j, "Omega_asymptotic_seed", r.asymptotic_seed);
  j["rule"] = r.rule;
  put_breakdown(j, "", r.breakdown);
  if (o.timing) j["timing_seconds"] = seconds_since(t0);
  emit(o, render_json(j), out);
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  require_report_format(o);
  const double alpha = require_alpha(o);
  const KernelDescriptor kernel = build_kernel(o, alpha);
  require(!o.t_values.empty(), "--t needs at least one value");
  const auto t0 = std::chrono::steady_clock::now();

  json j;
  echo_inputs(j, "check", kernel, o);
  j["alpha_validity"] = kernel.alpha_validity.describe();
  j["alpha_in_validity"] = kernel.alpha_validity.contains(alpha);
  set_number(j, "localisability_order_h", kernel.gamma + 1.0 / alpha);
  try {
    set_number(j, "kernel_alpha_norm", alpha_norm(kernel, alpha));
  } catch (const NonIntegrable& e) {
    j["kernel_alpha_norm"] = std::string("divergent: ") + e.what();
  }
  const LocalForm form = kernel.local_form(alpha);
  j["local_form"] = describe(form);
  const double rs[] = {1.0, 1e-1, 1e-2, 1e-3};
  bool all_ok = true;
  for (std::size_t i = 0; i < o.t_values.size(); ++i) {
    const double t = o.t_values[i];
    const std::string tag = "t" + std::to_string(i + 1) + "_";
    set_number(j, tag + "t", t);
    std::vector<double> d;
    for (double r : rs) d.push_back(lalpha_distance(kernel, alpha, form, t, r));
    j[tag + "distance_alpha_power_r1_to_r1e-3"] = d;
    bool monotone = true;
    for (std::size_t k = 1; k < d.size(); ++k) monotone = monotone && d[k] <= d[k - 1];
    const bool shrinks = d.back() < 0.1 * d.front();
    j[tag + "nonincreasing"] = monotone;
    j[tag + "shrinks_tenfold"] = shrinks;
    all_ok = all_ok && monotone && shrinks;
  }
  j["converges"] = all_ok;
  if (o.timing) j["timing_seconds"] = seconds_since(t0);
  emit(o, render_json(j), out);
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<int> ids = o.criteria;
  if (ids.empty())
    for (int i = 1; i <= verify::criterion_count(); ++i) ids.push_back(i);
  for (int id : ids)
    require(id >= 1 && id <= verify::criterion_count(),
            "--criteria: no criterion " + std::to_string(id));
  std::string table;
  bool all = true;
  verify::AcceptanceOptions options;
  if (o.timing) options.log = &err;
  for (int id : ids) {
    const verify::CriterionResult r = verify::run_criterion(id, options);
    const std::string line = verify::format_result(r) + "\n";
    out << line << std::flush;
    table += line;
    all = all && r.pass;
  }
  const std::string summary = all ? "all criteria passed\n" : "some criteria failed\n";
  out << summary;
  if (!o.out.empty()) io::write_file_atomic(o.out, table + summary);
  return all ? kExitOk : kExitValidation;
}

void add_kernel_options(CLI::App* app, Options& o) {
  app->add_option("--kernel", o.kernel, "rev_ou, extime, exfrequency or lfsn")->required();
  app->add_option("--lambda", o.lambda, "rev_ou decay rate");
  app->add_option("--gamma", o.gamma, "exfrequency exponent in (-1, 0)");
  app->add_option("--H", o.H, "lfsn self-similarity index");
}

void add_format(CLI::App* app, Options& o, std::vector<std::string> allowed) {
  app->add_option("--format", o.format)->check(CLI::IsMember(std::move(allowed)));
}

}  // namespace

AlphaFunction parse_alpha_fn(const std::string& spec, std::int64_t n_points) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "constant") {
    ConstantAlpha c{parse_double(rest, "--alpha-fn constant")};
    validate_alpha_function(c);
    return c;
  }
  if (kind == "logistic") {
    LogisticAlpha l = default_logistic(n_points);
    if (!rest.empty()) {
      const auto parts = split(rest, ',');
      require(parts.size() == 3 || parts.size() == 4,
              "--alpha-fn logistic takes lo,hi,rate[,center]");
      l.lo = parse_double(parts[0], "--alpha-fn logistic lo");
      l.hi = parse_double(parts[1], "--alpha-fn logistic hi");
      l.rate = parse_double(parts[2], "--alpha-fn logistic rate");
      if (parts.size() == 4) l.center = parse_double(parts[3], "--alpha-fn logistic center");
    }
    validate_alpha_function(l);
    return l;
  }
  if (kind == "table") {
    TableAlpha table;
    for (const std::string& knot : split(rest, ',')) {
      const auto parts = split(knot, ':');
      require(parts.size() == 2, "--alpha-fn table knots are written t:alpha");
      table.knots.emplace_back(parse_double(parts[0], "--alpha-fn table t"),
                               parse_double(parts[1], "--alpha-fn table alpha"));
    }
    validate_alpha_function(table);
    return table;
  }
  throw ValidationError("--alpha-fn: unknown form '" + kind +
                        "' (expected constant:, logistic or table:)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Moving-average stable and multistable path synthesis", "stabma"};
  app.set_version_flag("--version", std::string(STABMA_VERSION));
  app.require_subcommand(1);

  auto* synth = app.add_subcommand("synth", "Synthesize a stable moving-average path");
  auto* multi = app.add_subcommand("multisynth", "Synthesize a multistable path by gluing");
  auto* bound = app.add_subcommand("bound", "Report the alpha-norm error bound");
  auto* tune = app.add_subcommand("tune", "Choose Omega for a given omega");
  auto* check = app.add_subcommand("check", "Kernel metadata and local-form convergence");
  auto* validate = app.add_subcommand("validate", "Run the acceptance suite");

  for (auto* sub : {synth, multi, bound, tune, check}) add_kernel_options(sub, o);
  for (auto* sub : {synth, bound, tune, check}) sub->add_option("--alpha", o.alpha, "stability index");
  for (auto* sub : {synth, multi, bound, tune}) sub->add_option("--omega", o.omega, "grid points per unit time");
  for (auto* sub : {synth, multi, bound}) sub->add_option("--Omega", o.Omega, "cut-off radius");
  for (auto* sub : {synth, multi}) {
    sub->add_option("--n", o.n_points, "number of output points")->required();
    sub->add_option("--seed", o.seed, "noise seed")->required();
    sub->add_option("--scale", o.scale, "scale of the driving measure");
    sub->add_flag("--integrate", o.integrate, "emit the cumulative sum of the path");
    add_format(sub, o, {"csv", "json", "svg"});
  }
  for (auto* sub : {bound, tune, check}) add_format(sub, o, {"json"});
  for (auto* sub : {synth, multi, bound, tune, check, validate})
    sub->add_option("--out", o.out, "output file (stdout when omitted)");
  for (auto* sub : {synth, multi, bound, tune, check, validate})
    sub->add_flag("--timing", o.timing, "add wall-clock timing to the output");
  multi->add_option("--alpha-fn", o.alpha_fn, "constant:A, logistic[:lo,hi,rate[,center]], table:t:a,...");
  multi->add_option("--alpha-grid", o.alpha_grid, "number of alpha cells; 0 uses every distinct value");
  multi->add_flag("--renormalize", o.renormalize, "map each alpha line onto [-1, 1] before gluing");
  check->add_option("--t", o.t_values, "tangent times")->expected(1, -1);
  validate->add_option("--criteria", o.criteria, "criterion ids to run (default all)")->expected(1, -1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*synth) return cmd_synth(o, out);
    if (*multi) return cmd_multisynth(o, out);
    if (*bound) return cmd_bound(o, out);
    if (*tune) return cmd_tune(o, out);
    if (*check) return cmd_check(o, out);
    return cmd_validate(o, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace stabma::cli
