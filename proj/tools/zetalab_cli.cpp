#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zetalab/coeff_solver.hpp"
#include "zetalab/convergent_series.hpp"
#include "zetalab/experiments.hpp"
#include "zetalab/sigmoid.hpp"
#include "zetalab/spiral.hpp"
#include "zetalab/svg.hpp"
#include "zetalab/zeta.hpp"

using namespace zetalab;
using json = nlohmann::ordered_json;

namespace {

// CSV to --csv or stdout; JSON to --json or stderr.
struct Sinks {
  std::string csv_path;
  std::string json_path;

  void add(CLI::App* cmd) {
    cmd->add_option("--csv", csv_path, "write CSV here instead of stdout");
    cmd->add_option("--json", json_path, "write the JSON summary here instead of stderr");
  }
  void csv(const std::string& text) const { emit(csv_path, text, std::cout); }
  void summary(const json& j) const { emit(json_path, j.dump(2) + "\n", std::cerr); }

 private:
  static void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty()) {
      fallback << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error(ErrorCode::IoError, "cannot write " + path);
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> numbers(const std::string& text) { return parse_number_list(text); }

json calibration_json(const BCalibration& c) {
  return {{"s", to_string(c.s, 20)},          {"b_hat", c.b_hat},   {"err_at_opt", c.err_at_opt},
          {"digits_gained", c.digits_gained}, {"terms", c.terms},   {"working_digits", c.working_digits},
          {"probes", c.trace.size()}};
}

CalibrationOptions bracket_options(const std::string& bracket) {
  CalibrationOptions o;
  const auto v = numbers(bracket);
  if (v.size() != 2) throw Error(ErrorCode::ParseError, "--bracket takes lo,hi");
  o.bracket_lo = v[0];
  o.bracket_hi = v[1];
  return o;
}

// n,re_delta,im_delta rows as written by solve-coeffs
std::vector<Complex> read_coeff_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::getline(in, line);
  if (line.rfind("n,re_delta,im_delta", 0) != 0) {
    throw Error(ErrorCode::ParseError, path + ": expected header 'n,re_delta,im_delta'");
  }
  std::vector<Complex> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string n, re, im;
    if (!std::getline(row, n, ',') || !std::getline(row, re, ',') || !std::getline(row, im)) {
      throw Error(ErrorCode::ParseError, path + ": malformed row '" + line + "'");
    }
    out.emplace_back(Real(re, 128), Real(im, 128));
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, path + ": no coefficients");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiprecision experiments with finite and sigmoid-weighted Dirichlet series for zeta"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);

  // zeta eval
  auto* zeta_cmd = app.add_subcommand("zeta", "zeta function oracle");
  zeta_cmd->require_subcommand(1);
  auto* eval = zeta_cmd->add_subcommand("eval", "evaluate zeta(s)");
  std::string s_text;
  int eval_digits = 50;
  bool with_chi = false;
  eval->add_option("s", s_text, "point, e.g. 0.5+14.134725i")->required();
  eval->add_option("--digits", eval_digits, "significant digits")->capture_default_str();
  eval->add_flag("--chi", with_chi, "also print chi(s) and the functional-equation residual");

  // solve-coeffs
  auto* solve = app.add_subcommand("solve-coeffs", "solve for the finite Dirichlet coefficients");
  std::string sigma_s = "0.5", t1_s = "188.4955592", dt_s = "0.628318531";
  int n_rows = 100, digits = 100, jobs = 1;
  double stability_threshold = 1e-6;
  Sinks solve_out;
  solve->add_option("--sigma", sigma_s)->capture_default_str();
  solve->add_option("--t1", t1_s)->capture_default_str();
  solve->add_option("--dt", dt_s)->capture_default_str();
  solve->add_option("--n", n_rows)->capture_default_str();
  solve->add_option("--digits", digits)->capture_default_str();
  solve->add_option("--jobs", jobs, "threads for matrix assembly")->capture_default_str();
  solve->add_option("--stability-threshold", stability_threshold, "stable when |sum Im d_n| is below this")
      ->capture_default_str();
  solve_out.add(solve);

  // fit-sigmoid
  auto* fit_cmd = app.add_subcommand("fit-sigmoid", "fit the two-parameter sigmoid to a coefficient CSV");
  std::string input;
  Sinks fit_out;
  fit_cmd->add_option("--input", input, "CSV from solve-coeffs")->required();
  fit_out.add(fit_cmd);

  // search-b
  auto* search = app.add_subcommand("search-b", "calibrate the scale B at s = sigma + i t");
  double sigma = 0.5, t = 1000.0;
  int cal_digits = 30;
  std::string bracket = "0.1,100";
  Sinks search_out;
  search->add_option("--sigma", sigma)->capture_default_str();
  search->add_option("--t", t)->capture_default_str();
  search->add_option("--bracket", bracket, "lo,hi")->capture_default_str();
  search->add_option("--digits", cal_digits)->capture_default_str();
  search_out.add(search);

  // scaling-law
  auto* scaling = app.add_subcommand("scaling-law", "calibrate B over t and fit B = C t^D");
  std::string t_list = "100,200,500,1000,2000,5000";
  Sinks scaling_out;
  scaling->add_option("--sigma", sigma)->capture_default_str();
  scaling->add_option("--t-list", t_list)->capture_default_str();
  scaling->add_option("--bracket", bracket)->capture_default_str();
  scaling->add_option("--digits", cal_digits)->capture_default_str();
  scaling->add_option("--jobs", jobs)->capture_default_str();
  scaling_out.add(scaling);

  // sigma-law
  auto* sigma_law = app.add_subcommand("sigma-law", "calibrate B over sigma at fixed t and fit ln B = p + q sigma");
  std::string sigma_list = "0.1,0.3,0.5,0.7,0.9";
  Sinks sigma_out;
  sigma_law->add_option("--t", t)->capture_default_str();
  sigma_law->add_option("--sigma-list", sigma_list)->capture_default_str();
  sigma_law->add_option("--bracket", bracket)->capture_default_str();
  sigma_law->add_option("--digits", cal_digits)->capture_default_str();
  sigma_law->add_option("--jobs", jobs)->capture_default_str();
  sigma_out.add(sigma_law);

  // spiral
  auto* spiral = app.add_subcommand("spiral", "partial sums of the functional-equation series");
  bool weighted = false;
  std::string b_text = "auto", n_text = "auto", svg_path;
  Sinks spiral_out;
  spiral->add_option("--sigma", sigma)->capture_default_str();
  spiral->add_option("--t", t)->capture_default_str();
  spiral->add_flag("--weighted", weighted, "apply sigmoid weights");
  spiral->add_option("--b", b_text, "scale B, or auto to calibrate")->capture_default_str();
  spiral->add_option("--n", n_text, "terms, or auto for 2x the truncation length")->capture_default_str();
  spiral->add_option("--digits", cal_digits)->capture_default_str();
  spiral->add_option("--svg", svg_path, "also write an SVG rendering");
  spiral_out.add(spiral);

  // run
  auto* run = app.add_subcommand("run", "run a named preset");
  std::string preset, config_path, output_dir;
  std::vector<std::string> sets;
  run->add_option("preset", preset, "preset name (see list-presets)");
  run->add_option("--config", config_path, "key = value config file");
  run->add_option("--set", sets, "key=value override, repeatable");
  run->add_option("--output-dir", output_dir);
  run->add_option("--jobs", jobs, "concurrent sweep points");

  auto* list = app.add_subcommand("list-presets", "print every preset as a config stub");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) {
      const PrecisionContext ctx(eval_digits);
      const Complex s = parse_complex(s_text, ctx.bits());
      const OracleResult r = zeta(s, ctx);
      std::cout << "zeta(" << s_text << ") = " << to_string(r.value, eval_digits) << "\n";
      std::cout << "terms " << r.terms_used << ", correction order " << r.correction_order << "\n";
      if (with_chi) {
        const Complex one(1.0, 0.0, ctx.bits());
        const Complex c = chi(s, ctx);
        std::cout << "chi(s) = " << to_string(c, eval_digits) << "\n";
        std::cout << "|zeta(s) - chi(s) zeta(1-s)| = " << to_string(abs(r.value - c * zeta(one - s, ctx).value), 5)
                  << "\n";
      }
    } else if (solve->parsed()) {
      GridSpec g;
      g.sigma = Decimal(sigma_s);
      g.t1 = Decimal(t1_s);
      g.dt = Decimal(dt_s);
      g.n_rows = n_rows;
      g.digits = digits;
      const CoefficientSet cs = compute_coefficients(g, jobs);
      std::string csv = "n,re_delta,im_delta\n";
      for (std::size_t i = 0; i < cs.deltas.size(); ++i) {
        csv += std::to_string(i + 1) + "," + to_string(cs.deltas[i].re(), 20) + "," + to_string(cs.deltas[i].im(), 20) + "\n";
      }
      solve_out.csv(csv);
      json j{{"residual_inf", cs.residual_inf},
             {"stability_metric", cs.im_stability},
             {"stable", cs.im_stability < stability_threshold},
             {"retried_at_double_precision", cs.retried_at_double_precision},
             {"ordinate_constraint_ok", g.ordinate_constraint_ok()},
             {"mean_index", g.mean_index()}};
      try {
        const HalfCrossing h = half_crossing(cs);
        j["n_hat_star"] = h.n_hat_star;
        j["half_crossings"] = h.sign_changes;
      } catch (const Error& e) {
        j["n_hat_star"] = nullptr;
        j["crossing_error"] = e.what();
      }
      solve_out.summary(j);
    } else if (fit_cmd->parsed()) {
      const auto deltas = read_coeff_csv(input);
      const SigmoidFit fit = construct_fit(deltas);
      std::string csv = "n,re_delta,sigmoid_value\n";
      for (std::size_t i = 0; i < deltas.size(); ++i) {
        csv += std::to_string(i + 1) + "," + to_string(deltas[i].re(), 20) + "," +
               format_number(sigmoid_eval(static_cast<double>(i + 1), fit)) + "\n";
      }
      fit_out.csv(csv);
      fit_out.summary({{"A", fit.a_param}, {"B", fit.b_param}, {"residual", fit.residual}});
    } else if (search->parsed()) {
      const PrecisionContext ctx(cal_digits);
      const BCalibration c = calibrate_b(Complex(sigma, t, ctx.bits()), ctx, bracket_options(bracket));
      std::string csv = "b,err\n";
      for (const auto& sample : c.trace) csv += format_number(sample.b) + "," + format_number(sample.err) + "\n";
      search_out.csv(csv);
      search_out.summary(calibration_json(c));
    } else if (scaling->parsed()) {
      const PrecisionContext ctx(cal_digits);
      const auto points = accuracy_profile(sigma, numbers(t_list), ctx, bracket_options(bracket), jobs);
      std::string csv = "t,b_hat,digits_gained,status\n";
      std::vector<std::pair<double, double>> samples;
      for (const auto& p : points) {
        if (p.ok()) {
          csv += format_number(p.t) + "," + format_number(p.calibration->b_hat) + "," +
                 format_number(p.calibration->digits_gained) + ",ok\n";
          samples.emplace_back(p.t, p.calibration->b_hat);
        } else {
          csv += format_number(p.t) + ",nan,nan," + std::string(to_string(*p.error_code)) + "\n";
        }
      }
      scaling_out.csv(csv);
      const ScalingFit f = fit_power_law(samples, sigma);
      scaling_out.summary({{"sigma", sigma}, {"C", f.c_coef}, {"D", f.d_exp}, {"r_squared", f.r_squared}});
    } else if (sigma_law->parsed()) {
      const PrecisionContext ctx(cal_digits);
      const CalibrationOptions opts = bracket_options(bracket);
      const auto sigmas = numbers(sigma_list);
      std::string csv = "sigma,b_hat,digits_gained,status\n";
      std::vector<std::pair<double, double>> samples;
      std::vector<ProfilePoint> points(sigmas.size());
      std::vector<std::thread> pool;
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next++; i < sigmas.size(); i = next++) points[i] = accuracy_profile(sigmas[i], {t}, ctx, opts)[0];
      };
      for (int w = 1; w < std::min<int>(jobs, static_cast<int>(sigmas.size())); ++w) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
      for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (points[i].ok()) {
          csv += format_number(sigmas[i]) + "," + format_number(points[i].calibration->b_hat) + "," +
                 format_number(points[i].calibration->digits_gained) + ",ok\n";
          samples.emplace_back(sigmas[i], points[i].calibration->b_hat);
        } else {
          csv += format_number(sigmas[i]) + ",nan,nan," + std::string(to_string(*points[i].error_code)) + "\n";
        }
      }
      sigma_out.csv(csv);
      const ExponentialFit f = fit_sigma_dependence(samples);
      sigma_out.summary({{"t", t}, {"p", f.p}, {"q", f.q}, {"r_squared", f.r_squared}});
    } else if (spiral->parsed()) {
      const PrecisionContext ctx(cal_digits);
      const Complex s(sigma, t, ctx.bits());
      json j{{"s", to_string(s, 20)}, {"weighted", weighted}};
      double b = 0.0;
      if (weighted || n_text == "auto") {
        if (b_text == "auto") {
          const BCalibration c = calibrate_b(s, ctx);
          b = c.b_hat;
          j["calibration_err"] = c.err_at_opt;
        } else {
          b = numbers(b_text).at(0);
        }
      }
      const long n = n_text == "auto" ? default_spiral_terms(s, b, ctx) : std::stol(n_text);
      const SpiralTrace trace = weighted ? weighted_partial_sums(s, b, n, ctx) : raw_partial_sums(s, n, ctx);
      std::string csv = "k,re,im\n";
      SvgSeries line{"", "#1f77b4", {}, false};
      for (std::size_t k = 0; k < trace.points.size(); ++k) {
        csv += std::to_string(k + 1) + "," + to_string(trace.points[k].re(), 20) + "," +
               to_string(trace.points[k].im(), 20) + "\n";
        line.points.emplace_back(trace.points[k].re().to_double(), trace.points[k].im().to_double());
      }
      spiral_out.csv(csv);
      if (!svg_path.empty()) {
        std::ofstream out(svg_path, std::ios::binary);
        out << render_svg({weighted ? "Weighted partial sums" : "Partial sums", "Re", "Im", false, false, true, 560, 560,
                           {line}});
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + svg_path);
      }
      if (weighted) j["b"] = b;
      j["n_terms"] = n;
      j["final_modulus"] = abs(trace.points.back()).to_double();
      spiral_out.summary(j);
    } else if (run->parsed()) {
      ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : parse_config(read_file(config_path));
      if (!preset.empty()) config.preset = preset;
      if (config.preset.empty()) throw Error(ErrorCode::InvalidArgument, "no preset given");
      for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "--set expects key=value, got '" + kv + "'");
        config.set(kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (!output_dir.empty()) config.set("output_dir", output_dir);
      if (run->count("--jobs")) config.set("jobs", std::to_string(jobs));
      const RunManifest m = run_preset(config);
      std::cout << m.to_json();
      if (!m.ok) return 3;
    } else if (list->parsed()) {
      std::cout << list_presets();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_validation() ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
