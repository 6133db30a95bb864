#include "zetalab/experiments.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "zetalab/coeff_solver.hpp"
#include "zetalab/convergent_series.hpp"
#include "zetalab/sigmoid.hpp"
#include "zetalab/spiral.hpp"
#include "zetalab/svg.hpp"

#ifndef ZETALAB_VERSION
#define ZETALAB_VERSION "0.0.0"
#endif

namespace zetalab {
namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

using Defaults = std::vector<std::pair<std::string, std::string>>;

const Defaults kGrid{{"sigma", "0.5"}, {"t1", "188.4955592"}, {"dt", "0.628318531"}, {"n", "100"}, {"digits", "100"}};

Defaults with(Defaults base, const Defaults& changes) {
  for (const auto& [k, v] : changes) {
    auto it = std::find_if(base.begin(), base.end(), [&](const auto& kv) { return kv.first == k; });
    if (it != base.end()) {
      it->second = v;
    } else {
      base.emplace_back(k, v);
    }
  }
  return base;
}

class Params {
 public:
  explicit Params(std::vector<std::pair<std::string, std::string>> kv) : kv_(std::move(kv)) {}

  const std::string& text(const std::string& key) const {
    for (const auto& [k, v] : kv_) {
      if (k == key) return v;
    }
    throw Error(ErrorCode::InvalidArgument, "parameter '" + key + "' is not set for this preset");
  }
  bool has(const std::string& key) const {
    return std::any_of(kv_.begin(), kv_.end(), [&](const auto& kv) { return kv.first == key; });
  }
  double number(const std::string& key) const {
    const auto list = parse_number_list(text(key));
    if (list.size() != 1) throw Error(ErrorCode::ParseError, "parameter '" + key + "' must be one number");
    return list[0];
  }
  int integer(const std::string& key) const {
    const std::string& v = text(key);
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      throw Error(ErrorCode::ParseError, "parameter '" + key + "' must be an integer, got '" + v + "'");
    }
    return out;
  }
  std::vector<double> list(const std::string& key) const { return parse_number_list(text(key)); }
  std::pair<double, double> bracket() const {
    const auto v = list("bracket");
    if (v.size() != 2) throw Error(ErrorCode::ParseError, "bracket must be 'lo,hi'");
    return {v[0], v[1]};
  }
  int jobs() const { return has("jobs") ? std::max(1, integer("jobs")) : 1; }

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  const int workers = std::clamp(jobs, 1, std::max(1, static_cast<int>(n)));
  std::vector<std::thread> threads;
  for (int w = 1; w < workers; ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
}

std::string hp(const Real& x) { return to_string(x, 20); }

std::string status_of(const std::optional<ErrorCode>& code) {
  return code ? std::string(to_string(*code)) : std::string("ok");
}

// Accumulates the run: writes files, records checksums and headline results.
class Run {
 public:
  Run(RunManifest& m, fs::path dir) : m_(m), dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& bytes) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
    m_.outputs.push_back({name, sha256_hex(bytes), bytes.size()});
  }
  void result(const std::string& key, const std::string& value) { m_.results.emplace_back(key, value); }
  void result(const std::string& key, double value) { result(key, format_number(value)); }

 private:
  RunManifest& m_;
  fs::path dir_;
};

GridSpec grid_from(const Params& p) {
  GridSpec g;
  g.sigma = Decimal(p.text("sigma"));
  g.t1 = Decimal(p.text("t1"));
  g.dt = Decimal(p.text("dt"));
  g.n_rows = p.integer("n");
  g.digits = p.integer("digits");
  g.validate();
  return g;
}

CalibrationOptions calibration_options(const Params& p) {
  CalibrationOptions o;
  std::tie(o.bracket_lo, o.bracket_hi) = p.bracket();
  return o;
}

std::string coeff_csv(const CoefficientSet& cs) {
  std::string csv = "n,re_delta,im_delta\n";
  for (std::size_t i = 0; i < cs.deltas.size(); ++i) {
    csv += std::to_string(i + 1) + "," + hp(cs.deltas[i].re()) + "," + hp(cs.deltas[i].im()) + "\n";
  }
  return csv;
}

void solve_results(Run& run, const GridSpec& g, const CoefficientSet& cs) {
  run.result("residual_inf", cs.residual_inf);
  run.result("stability_metric", cs.im_stability);
  run.result("retried_at_double_precision", cs.retried_at_double_precision ? "true" : "false");
  run.result("ordinate_constraint_ok", g.ordinate_constraint_ok() ? "true" : "false");
  run.result("mean_index", g.mean_index());
}

void run_coeffs(Run& run, const Params& p, const std::string& title) {
  const GridSpec g = grid_from(p);
  const CoefficientSet cs = compute_coefficients(g, p.jobs());
  run.write("coeffs.csv", coeff_csv(cs));
  SvgPlot plot{title, "n", "delta*_n", false, false, false, 640, 480, {}};
  SvgSeries re{"Re", "#1f77b4", {}, true}, im{"Im", "#d62728", {}, true};
  for (std::size_t i = 0; i < cs.deltas.size(); ++i) {
    re.points.emplace_back(static_cast<double>(i + 1), cs.deltas[i].re().to_double());
    im.points.emplace_back(static_cast<double>(i + 1), cs.deltas[i].im().to_double());
  }
  plot.series = {re, im};
  run.write("coeffs.svg", render_svg(plot));
  solve_results(run, g, cs);
  try {
    const HalfCrossing h = half_crossing(cs);
    run.result("n_hat_star", h.n_hat_star);
    run.result("half_crossings", static_cast<double>(h.sign_changes));
  } catch (const Error& e) {
    run.result("n_hat_star", std::string(to_string(e.code())));
  }
}

void run_sigmoid(Run& run, const Params& p) {
  const GridSpec g = grid_from(p);
  const CoefficientSet cs = compute_coefficients(g, p.jobs());
  solve_results(run, g, cs);
  const SigmoidFit fit = construct_fit(cs);
  std::string csv = "n,re_delta,sigmoid_value\n";
  SvgPlot plot{"Sigmoid and Re delta*_n", "n", "value", false, false, false, 640, 480, {}};
  SvgSeries re{"Re delta*_n", "#1f77b4", {}, true}, sg{"sigmoid", "#2ca02c", {}, false};
  for (std::size_t i = 0; i < cs.deltas.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double v = sigmoid_eval(n, fit);
    csv += std::to_string(i + 1) + "," + hp(cs.deltas[i].re()) + "," + format_number(v) + "\n";
    re.points.emplace_back(n, cs.deltas[i].re().to_double());
    sg.points.emplace_back(n, v);
  }
  plot.series = {re, sg};
  run.write("sigmoid.csv", csv);
  run.write("sigmoid.svg", render_svg(plot));
  run.result("A", fit.a_param);
  run.result("B", fit.b_param);
  run.result("fit_residual", fit.residual);
}

void run_nhat_sweep(Run& run, const Params& p) {
  const std::vector<double> t1s = parse_number_list(p.text("t_list"));
  const auto t1_text = [&] {
    // keep the literal spelling of each t1 so the grid is exact
    std::vector<std::string> out;
    std::stringstream ss(p.text("t_list"));
    for (std::string item; std::getline(ss, item, ',');) out.push_back(trim(item));
    return out;
  }();
  struct Row {
    double t1 = 0, mean = 0, n_hat = NAN, b = NAN, stability = NAN, residual = NAN;
    std::optional<ErrorCode> code;
  };
  std::vector<Row> rows(t1s.size());
  const GridSpec base = grid_from(p);
  parallel_for(rows.size(), p.jobs(), [&](std::size_t i) {
    GridSpec g = base;
    g.t1 = Decimal(t1_text[i]);
    rows[i].t1 = t1s[i];
    rows[i].mean = g.mean_index();
    try {
      const CoefficientSet cs = compute_coefficients(g, 1);
      rows[i].stability = cs.im_stability;
      rows[i].n_hat = half_crossing(cs).n_hat_star;
      const SigmoidFit fit = construct_fit(cs);
      rows[i].b = fit.b_param;
      rows[i].residual = fit.residual;
    } catch (const Error& e) {
      rows[i].code = e.code();
    }
  });
  std::string csv = "t1,n_hat_star,n_hat_mean,b_formula,stability_metric,fit_residual,status\n";
  SvgPlot plot{"Half crossing against t1", "t1", "index", false, false, false, 640, 480, {}};
  SvgSeries star{"n_hat_star", "#1f77b4", {}, true}, mean{"(t1 + (N-1) dt / 2) / pi", "#ff7f0e", {}, true};
  for (const auto& r : rows) {
    csv += format_number(r.t1) + "," + format_number(r.n_hat) + "," + format_number(r.mean) + "," + format_number(r.b) +
           "," + format_number(r.stability) + "," + format_number(r.residual) + "," + status_of(r.code) + "\n";
    if (std::isfinite(r.n_hat)) star.points.emplace_back(r.t1, r.n_hat);
    mean.points.emplace_back(r.t1, r.mean);
  }
  plot.series = {star, mean};
  run.write("nhat_sweep.csv", csv);
  run.write("nhat_sweep.svg", render_svg(plot));
  run.result("points", static_cast<double>(rows.size()));
  run.result("failed_points",
             static_cast<double>(std::count_if(rows.begin(), rows.end(), [](const Row& r) { return r.code.has_value(); })));
}

void run_eps_vs_b(Run& run, const Params& p) {
  const PrecisionContext ctx(p.integer("digits"));
  const Complex s(p.number("sigma"), p.number("t"), ctx.bits());
  const BCalibration cal = calibrate_b(s, ctx, calibration_options(p));
  std::vector<std::pair<BSample, const char*>> rows;
  for (std::size_t i = 0; i < cal.trace.size(); ++i) rows.emplace_back(cal.trace[i], i < cal.scan_samples ? "scan" : "refine");
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first.b < b.first.b; });
  std::string csv = "b,err,stage\n";
  SvgSeries line{"err(B)", "#1f77b4", {}, false};
  for (const auto& [sample, stage] : rows) {
    csv += format_number(sample.b) + "," + format_number(sample.err) + "," + stage + "\n";
    line.points.emplace_back(sample.b, sample.err);
  }
  run.write("eps_vs_b.csv", csv);
  run.write("eps_vs_b.svg", render_svg({"Error against scale B", "B", "err", true, true, false, 640, 480, {line}}));
  run.result("b_hat", cal.b_hat);
  run.result("err_at_opt", cal.err_at_opt);
  run.result("digits_gained", cal.digits_gained);
  run.result("working_digits", static_cast<double>(cal.working_digits));
  run.result("terms", static_cast<double>(cal.terms));
}

std::vector<ProfilePoint> profile(const Params& p, double sigma) {
  const PrecisionContext ctx(p.integer("digits"));
  return accuracy_profile(sigma, p.list("t_list"), ctx, calibration_options(p), p.jobs());
}

std::string profile_csv(const std::vector<ProfilePoint>& points) {
  std::string csv = "t,b_hat,err_at_opt,digits_gained,working_digits,terms,status\n";
  for (const auto& pt : points) {
    csv += format_number(pt.t) + ",";
    if (pt.ok()) {
      const auto& c = *pt.calibration;
      csv += format_number(c.b_hat) + "," + format_number(c.err_at_opt) + "," + format_number(c.digits_gained) + "," +
             std::to_string(c.working_digits) + "," + std::to_string(c.terms) + ",ok\n";
    } else {
      csv += "nan,nan,nan,0,0," + status_of(pt.error_code) + "\n";
    }
  }
  return csv;
}

void run_eps_vs_t(Run& run, const Params& p) {
  const auto points = profile(p, p.number("sigma"));
  run.write("eps_vs_t.csv", profile_csv(points));
  SvgSeries line{"log10(1/err)", "#1f77b4", {}, true};
  for (const auto& pt : points) {
    if (pt.ok()) line.points.emplace_back(pt.t, pt.calibration->digits_gained);
  }
  run.write("eps_vs_t.svg", render_svg({"Digits gained against t", "t", "log10(1/err)", false, false, false, 640, 480, {line}}));
  bool increasing = true;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!points[i].ok() || !points[i - 1].ok() ||
        !(points[i].calibration->digits_gained > points[i - 1].calibration->digits_gained)) {
      increasing = false;
    }
  }
  run.result("digits_strictly_increasing", increasing ? "true" : "false");
}

std::vector<std::pair<double, double>> ok_samples(const std::vector<ProfilePoint>& points) {
  std::vector<std::pair<double, double>> out;
  for (const auto& pt : points) {
    if (pt.ok()) out.emplace_back(pt.t, pt.calibration->b_hat);
  }
  return out;
}

void run_power_law(Run& run, const Params& p) {
  const double sigma = p.number("sigma");
  const auto points = profile(p, sigma);
  run.write("b_power_law.csv", profile_csv(points));
  const ScalingFit fit = fit_power_law(ok_samples(points), sigma);
  SvgSeries meas{"B_hat", "#1f77b4", {}, true}, model{"C t^D", "#2ca02c", {}, false};
  for (const auto& [t, b] : fit.samples) {
    meas.points.emplace_back(t, b);
    model.points.emplace_back(t, fit.c_coef * std::pow(t, fit.d_exp));
  }
  run.write("b_power_law.svg", render_svg({"B_hat against t", "t", "B_hat", true, true, false, 640, 480, {meas, model}}));
  run.result("C", fit.c_coef);
  run.result("D", fit.d_exp);
  run.result("r_squared", fit.r_squared);
}

void exp_fit_results(Run& run, const std::string& prefix, const std::vector<std::pair<double, double>>& samples) {
  const ExponentialFit f = fit_sigma_dependence(samples);
  run.result(prefix + "_p", f.p);
  run.result(prefix + "_q", f.q);
  run.result(prefix + "_r_squared", f.r_squared);
}

void run_c_d_sigma(Run& run, const Params& p) {
  const auto sigmas = p.list("sigma_list");
  const auto ts = p.list("t_list");
  const PrecisionContext ctx(p.integer("digits"));
  const CalibrationOptions opts = calibration_options(p);
  std::vector<ProfilePoint> cells(sigmas.size() * ts.size());
  parallel_for(cells.size(), p.jobs(), [&](std::size_t i) {
    cells[i] = accuracy_profile(sigmas[i / ts.size()], {ts[i % ts.size()]}, ctx, opts)[0];
  });
  std::string csv = "sigma,c,d,r_squared,status\n";
  std::vector<std::pair<double, double>> cs, ds;
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    std::vector<ProfilePoint> row(cells.begin() + static_cast<long>(k * ts.size()),
                                  cells.begin() + static_cast<long>((k + 1) * ts.size()));
    try {
      const ScalingFit f = fit_power_law(ok_samples(row), sigmas[k]);
      csv += format_number(sigmas[k]) + "," + format_number(f.c_coef) + "," + format_number(f.d_exp) + "," +
             format_number(f.r_squared) + ",ok\n";
      cs.emplace_back(sigmas[k], f.c_coef);
      ds.emplace_back(sigmas[k], f.d_exp);
    } catch (const Error& e) {
      csv += format_number(sigmas[k]) + ",nan,nan,nan," + std::string(to_string(e.code())) + "\n";
    }
  }
  run.write("c_d_sigma.csv", csv);
  SvgSeries c{"C(sigma)", "#1f77b4", cs, true}, d{"D(sigma)", "#d62728", ds, true};
  run.write("c_sigma.svg", render_svg({"C against sigma", "sigma", "C", false, false, false, 640, 480, {c}}));
  run.write("d_sigma.svg", render_svg({"D against sigma", "sigma", "D", false, false, false, 640, 480, {d}}));
  exp_fit_results(run, "C", cs);
  exp_fit_results(run, "D", ds);
}

void run_b_sigma(Run& run, const Params& p) {
  const auto sigmas = p.list("sigma_list");
  const double t = p.number("t");
  const PrecisionContext ctx(p.integer("digits"));
  const CalibrationOptions opts = calibration_options(p);
  std::vector<ProfilePoint> cells(sigmas.size());
  parallel_for(cells.size(), p.jobs(), [&](std::size_t i) { cells[i] = accuracy_profile(sigmas[i], {t}, ctx, opts)[0]; });
  std::string csv = "sigma,b_hat,digits_gained,working_digits,status\n";
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    csv += format_number(sigmas[i]) + ",";
    if (cells[i].ok()) {
      const auto& c = *cells[i].calibration;
      csv += format_number(c.b_hat) + "," + format_number(c.digits_gained) + "," + std::to_string(c.working_digits) + ",ok\n";
      samples.emplace_back(sigmas[i], c.b_hat);
    } else {
      csv += "nan,nan,0," + status_of(cells[i].error_code) + "\n";
    }
  }
  run.write("b_sigma.csv", csv);
  SvgSeries line{"B_hat", "#1f77b4", samples, true};
  run.write("b_sigma.svg", render_svg({"B_hat against sigma", "sigma", "B_hat", false, false, false, 640, 480, {line}}));
  exp_fit_results(run, "B", samples);
}

std::string trace_csv(const SpiralTrace& trace) {
  std::string csv = "k,re,im\n";
  for (std::size_t k = 0; k < trace.points.size(); ++k) {
    csv += std::to_string(k + 1) + "," + hp(trace.points[k].re()) + "," + hp(trace.points[k].im()) + "\n";
  }
  return csv;
}

std::string trace_svg(const SpiralTrace& trace, const std::string& title) {
  SvgSeries line{"", "#1f77b4", {}, false};
  for (const auto& z : trace.points) line.points.emplace_back(z.re().to_double(), z.im().to_double());
  return render_svg({title, "Re", "Im", false, false, true, 560, 560, {line}});
}

void run_spiral(Run& run, const Params& p, bool weighted) {
  const PrecisionContext ctx(p.integer("digits"));
  const Complex s(p.number("sigma"), p.number("t"), ctx.bits());
  const long cut = static_cast<long>(std::ceil(std::abs(p.number("t")) / std::numbers::pi));
  if (!weighted) {
    const SpiralTrace trace = raw_partial_sums(s, p.integer("n"), ctx);
    run.write("spiral_raw.csv", trace_csv(trace));
    run.write("spiral_raw.svg", trace_svg(trace, "Partial sums, unit weights"));
    run.result("max_modulus_after_cutoff", max_modulus_after(trace, cut));
    run.result("final_modulus", abs(trace.points.back()).to_double());
    return;
  }
  double b = 0.0;
  if (p.text("b") == "auto") {
    const BCalibration cal = calibrate_b(s, ctx, calibration_options(p));
    b = cal.b_hat;
    run.result("calibration_err", cal.err_at_opt);
  } else {
    b = p.number("b");
  }
  const long n = p.text("n") == "auto" ? default_spiral_terms(s, b, ctx) : p.integer("n");
  const SpiralTrace trace = weighted_partial_sums(s, b, n, ctx);
  const SpiralTrace raw = raw_partial_sums(s, n, ctx);
  run.write("spiral_weighted.csv", trace_csv(trace));
  run.write("spiral_weighted.svg", trace_svg(trace, "Partial sums, sigmoid weights"));
  run.result("b", b);
  run.result("n_terms", static_cast<double>(n));
  run.result("functional_residual", abs(trace.points.back()).to_double());
  run.result("max_modulus_after_cutoff", max_modulus_after(trace, cut));
  run.result("raw_max_modulus_after_cutoff", max_modulus_after(raw, cut));
}

const Defaults kCalibration{{"sigma", "0.5"}, {"digits", "30"}, {"bracket", "0.1,100"}};

}  // namespace

std::string_view library_version() noexcept { return ZETALAB_VERSION; }

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"sigma", "t1",         "dt",         "n",    "digits", "bracket", "t_list",
                                             "sigma_list", "output_dir", "seed", "t", "b", "jobs"};
  return keys;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "preset") {
    preset = value;
    return;
  }
  const auto& keys = config_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw Error(ErrorCode::UnknownConfigKey, "unknown config key '" + key + "'");
  }
  overrides[key] = value;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": empty key");
    config.set(key, value);
  }
  return config;
}

std::string format_config(const ExperimentConfig& config) {
  std::string out;
  if (!config.preset.empty()) out += "preset = " + config.preset + "\n";
  for (const auto& [k, v] : config.overrides) out += k + " = " + v + "\n";
  return out;
}

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> table{
      {"fig-coeffs-stable", "Re and Im of the coefficients, stable grid", kGrid},
      {"fig-coeffs-left", "Re and Im of the coefficients, grid shifted left",
       with(kGrid, {{"t1", "157.0796327"}, {"dt", "0.785398163"}})},
      {"fig-coeffs-right", "Re and Im of the coefficients, grid shifted right",
       with(kGrid, {{"t1", "209.4395102"}, {"dt", "0.523598776"}})},
      {"fig-precision-90", "Coefficients at 90 digits", with(kGrid, {{"digits", "90"}})},
      {"fig-precision-50", "Coefficients at 50 digits", with(kGrid, {{"digits", "50"}})},
      {"fig-sigmoid", "Sigmoid against Re of the coefficients", kGrid},
      {"fig-nhat-sweep", "Half crossing and mean index against t1",
       with(kGrid, {{"t_list", "160,170,180,188.4955592,200,210"}})},
      {"fig-eps-vs-b", "Error against scale B at one s", with(kCalibration, {{"t", "1000"}})},
      {"fig-eps-vs-t", "Digits gained against t", with(kCalibration, {{"t_list", "100,200,300,500,1000,2000,3000"}})},
      {"fig-b-power-law", "Calibrated B against t with power-law fit",
       with(kCalibration, {{"t_list", "100,200,500,1000,2000,5000"}})},
      {"fig-c-d-sigma", "Power-law C and D against sigma",
       with(kCalibration, {{"sigma_list", "0.1,0.3,0.5,0.7,0.9"}, {"t_list", "100,200,500,1000,2000"}})},
      {"fig-b-sigma", "Calibrated B against sigma at fixed t",
       with(kCalibration, {{"sigma_list", "0.1,0.3,0.5,0.7,0.9"}, {"t", "50000"}})},
      {"fig-spiral-raw", "Divergent spiral of unweighted partial sums",
       {{"sigma", "0.5"}, {"t", "200"}, {"n", "300"}, {"digits", "30"}}},
      {"fig-spiral-weighted", "Convergent spiral of weighted partial sums",
       with(kCalibration, {{"t", "200"}, {"b", "auto"}, {"n", "auto"}})},
  };
  return table;
}

const PresetInfo& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "' (see list-presets)");
}

std::string list_presets() {
  std::string out;
  for (const auto& p : presets()) {
    if (!out.empty()) out += "\n";
    out += "# " + p.figure + "\npreset = " + p.name + "\n";
    for (const auto& [k, v] : p.defaults) out += k + " = " + v + "\n";
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> resolve_parameters(const ExperimentConfig& config) {
  const PresetInfo& info = find_preset(config.preset);
  Defaults resolved = with(info.defaults, {{"output_dir", "out/" + info.name}});
  for (const auto& [k, v] : config.overrides) resolved = with(resolved, {{k, v}});
  std::sort(resolved.begin(), resolved.end());
  return resolved;
}

RunManifest run_preset(const ExperimentConfig& config) {
  const PresetInfo& info = find_preset(config.preset);
  RunManifest m;
  m.preset = info.name;
  m.figure = info.figure;
  m.version = ZETALAB_VERSION;
  m.parameters = resolve_parameters(config);
  const Params p(m.parameters);
  m.output_dir = p.text("output_dir");

  const fs::path dir(m.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

  Run run(m, dir);
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::string& name = info.name;
    if (name.rfind("fig-coeffs-", 0) == 0 || name.rfind("fig-precision-", 0) == 0) {
      run_coeffs(run, p, info.figure);
    } else if (name == "fig-sigmoid") {
      run_sigmoid(run, p);
    } else if (name == "fig-nhat-sweep") {
      run_nhat_sweep(run, p);
    } else if (name == "fig-eps-vs-b") {
      run_eps_vs_b(run, p);
    } else if (name == "fig-eps-vs-t") {
      run_eps_vs_t(run, p);
    } else if (name == "fig-b-power-law") {
      run_power_law(run, p);
    } else if (name == "fig-c-d-sigma") {
      run_c_d_sigma(run, p);
    } else if (name == "fig-b-sigma") {
      run_b_sigma(run, p);
    } else if (name == "fig-spiral-raw") {
      run_spiral(run, p, false);
    } else if (name == "fig-spiral-weighted") {
      run_spiral(run, p, true);
    }
  } catch (const Error& e) {
    m.ok = false;
    m.error_code = e.code();
    m.error = e.what();
  }
  m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string json = m.to_json();
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out || !(out << json)) throw Error(ErrorCode::IoError, "cannot write manifest.json");
  return m;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["preset"] = preset;
  j["figure"] = figure;
  j["version"] = version;
  j["output_dir"] = output_dir;
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) j["parameters"][k] = v;
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& o : outputs) j["outputs"].push_back({{"file", o.file}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  j["results"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : results) j["results"][k] = v;
  j["wall_time_s"] = wall_time_s;
  j["status"] = ok ? "ok" : "error";
  if (!ok) j["error"] = {{"code", std::string(to_string(*error_code))}, {"message", error}};
  return j.dump(2) + "\n";
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const std::string t = trim(item);
    double v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
      throw Error(ErrorCode::ParseError, "not a number: '" + t + "' in '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty number list");
  return out;
}

}  // namespace zetalab
