/*
   Copyright 2026 The rpwf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// rpwf: command-line front end over the rpwf C library.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "rpwf/rpwf.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct CliError : std::runtime_error {
  CliError(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
  int exit_code;
};

[[noreturn]] void invalid(const std::string& flag, const std::string& msg) {
  throw CliError(kExitValidation, flag + ": " + msg);
}

const char* flag_for(rpwf_status s, const char* fallback) {
  switch (s) {
    case RPWF_E_BETA_OUT_OF_RANGE: return "--beta";
    case RPWF_E_NON_POSITIVE_ALPHA: return "--alpha";
    case RPWF_E_ZERO_FIXED_TOTAL: return "--b";
    case RPWF_E_NON_POSITIVE_INITIAL_BALLS: return "--b0";
    default: return fallback;
  }
}

void check(rpwf_status s, const char* flag) {
  if (s == RPWF_OK) return;
  const std::string msg = rpwf_last_error();
  if (s == RPWF_E_IO) throw CliError(kExitIo, msg);
  if (s == RPWF_E_INTERNAL || s == RPWF_E_NULL_POINTER) throw CliError(kExitInternal, msg);
  throw CliError(kExitValidation, std::string(flag_for(s, flag)) + ": " + msg);
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      invalid(flag, "'" + item + "' is not a number");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) invalid(flag, "'" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) invalid(flag, "expected a comma-separated list of numbers");
  return out;
}

std::vector<std::size_t> parse_colors(const std::string& text, std::size_t k,
                                      const std::string& flag) {
  std::vector<std::size_t> out;
  for (double v : parse_list(text, flag)) {
    if (v != std::floor(v) || v < 1.0 || v > static_cast<double>(k)) {
      invalid(flag, "colors are integers in 1.." + std::to_string(k));
    }
    out.push_back(static_cast<std::size_t>(v) - 1);
  }
  return out;
}

std::string git_blob_sha1(const std::string& content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw CliError(kExitInternal, "cannot allocate digest context");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw CliError(kExitInternal, "SHA-1 computation failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitIo, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError(kExitIo, "cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw CliError(kExitIo, "failed writing '" + path + "'");
}

// Flattens nested objects to key,value rows.
void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, os);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i + 1), os);
  } else {
    os << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

struct Options {
  double alpha = 1.0;
  double beta = 0.0;
  std::string b, b0, p, x0, y0, y, J, betas, checkpoints;
  std::uint64_t steps = 100;
  double t_max = 1.0;
  double dt = 1e-3;
  double dt_out = 0.01;
  std::uint64_t seed = 0;
  std::size_t replicas = 1;
  std::size_t wf_paths = 0;
  int max_degree = -1;
  std::string out, format, manifest;
  unsigned workers = 0;
  double t = 1.0;
  double a0 = 0.0, a1 = 0.0, a = 0.0, z0 = 0.5;
  std::size_t color = 1;
  std::vector<std::string> argv;
};

struct Run {
  Options opt;
  CLI::App* app = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* replicas_opt = nullptr;
  CLI::Option* t_opt = nullptr;
  CLI::Option* config_opt = nullptr;
  json summary = json::object();
  std::vector<std::string> outputs;
  std::string stdout_text;

  bool given(const std::string& name) const { return app->count(name) > 0; }

  std::string format(const char* fallback) const {
    const std::string f = opt.format.empty() ? fallback : opt.format;
    if (f != "csv" && f != "json") invalid("--format", "expected csv or json");
    return f;
  }

  rpwf_format c_format(const char* fallback) const {
    return format(fallback) == "json" ? RPWF_FORMAT_JSON : RPWF_FORMAT_CSV;
  }

  const std::string& require_out() const {
    if (opt.out.empty()) invalid("--out", "an output path is required for this command");
    return opt.out;
  }

  // Writes the result to --out, or keeps it for stdout.
  void emit(const json& result, const char* default_format) {
    std::string text;
    if (format(default_format) == "json") {
      text = result.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "key,value\n";
      flatten(result, "", os);
      text = os.str();
    }
    if (opt.out.empty()) {
      stdout_text = text;
    } else {
      write_file(opt.out, text);
      outputs.push_back(opt.out);
    }
  }
};

struct WfInput {
  std::vector<double> p;
  rpwf_wf_params params{};
};

// |b| and p = --p, or b / |b| when --p is absent.
WfInput wf_input(const Run& run) {
  const Options& o = run.opt;
  if (o.b.empty()) invalid("--b", "required (comma-separated mutation weights)");
  const std::vector<double> b = parse_list(o.b, "--b");
  double total = 0.0;
  for (double v : b) {
    if (!(v >= 0.0)) invalid("--b", "entries must be >= 0");
    total += v;
  }
  if (!(total > 0.0)) invalid("--b", "entries must have a positive sum");
  WfInput in;
  if (!o.p.empty()) {
    in.p = parse_list(o.p, "--p");
    if (b.size() != 1 && b.size() != in.p.size()) invalid("--p", "length differs from --b");
  } else {
    if (b.size() < 2) invalid("--b", "give one weight per color, or --p");
    for (double v : b) in.p.push_back(v / total);
  }
  in.params = {o.alpha, total, in.p.size(), in.p.data()};
  check(rpwf_validate_wf_params(&in.params), o.p.empty() ? "--b" : "--p");
  return in;
}

std::vector<double> start_point(const Run& run, std::size_t k) {
  if (run.opt.x0.empty()) return {};
  std::vector<double> x0 = parse_list(run.opt.x0, "--x0");
  if (x0.size() != k) invalid("--x0", "needs " + std::to_string(k) + " entries");
  return x0;
}

// Accepts k-1 coordinates, or k coordinates summing to 1.
std::vector<double> simplex_coords(const std::string& text, std::size_t k, const std::string& flag) {
  std::vector<double> v = parse_list(text, flag);
  if (v.size() == k) {
    double s = 0.0;
    for (double x : v) s += x;
    if (std::abs(s - 1.0) > 1e-9) invalid(flag, "k coordinates must sum to 1");
    v.pop_back();
  }
  if (v.size() != k - 1) invalid(flag, "needs " + std::to_string(k - 1) + " coordinates");
  return v;
}

void cmd_simulate_urn(Run& run) {
  const Options& o = run.opt;
  if (o.b.empty()) invalid("--b", "required (comma-separated fixed ball counts)");
  if (!run.given("--beta")) invalid("--beta", "required");
  const std::vector<double> b = parse_list(o.b, "--b");
  std::vector<double> B0(b.size(), 0.0);
  if (!o.b0.empty()) {
    B0 = parse_list(o.b0, "--b0");
    if (B0.size() != b.size()) invalid("--b0", "length differs from --b");
  }
  const rpwf_urn_params params{o.alpha, o.beta, b.size(), b.data(), B0.data()};
  check(rpwf_validate_urn_params(&params), "--b");
  const std::string& out = run.require_out();
  const rpwf_format fmt = run.c_format("csv");

  rpwf_trajectory* traj = nullptr;
  check(rpwf_urn_simulate(&params, o.steps, o.seed, &traj), "--b");
  std::unique_ptr<rpwf_trajectory, decltype(&rpwf_trajectory_free)> guard(traj,
                                                                           rpwf_trajectory_free);
  check(rpwf_trajectory_write(traj, out.c_str(), fmt), "--out");
  run.outputs.push_back(out);

  std::vector<double> psi(b.size());
  check(rpwf_trajectory_psi(traj, rpwf_trajectory_steps(traj), psi.data()), "--steps");
  run.summary["final_psi"] = psi;
  if (o.steps > 0) {
    std::vector<double> mean(b.size());
    double chi = 0.0;
    check(rpwf_trajectory_empirical_mean(traj, mean.data()), "--steps");
    check(rpwf_trajectory_chi_squared(traj, &chi), "--b");
    run.summary["empirical_mean"] = mean;
    run.summary["chi_squared"] = chi;
  }
}

void cmd_simulate_wf(Run& run) {
  const Options& o = run.opt;
  const WfInput in = wf_input(run);
  const std::vector<double> x0 = start_point(run, in.p.size());
  const std::string& out = run.require_out();
  const rpwf_format fmt = run.c_format("csv");
  const rpwf_sde_config sde{o.dt, 1};
  if (o.replicas == 0) invalid("--replicas", "must be >= 1");
  if (o.replicas == 1) {
    rpwf_path* path = nullptr;
    check(rpwf_wf_simulate(&in.params, x0.empty() ? nullptr : x0.data(), o.t_max, &sde, o.seed,
                           &path),
          "--t-max");
    std::unique_ptr<rpwf_path, decltype(&rpwf_path_free)> guard(path, rpwf_path_free);
    check(rpwf_path_write(path, out.c_str(), fmt), "--out");
    std::vector<double> last(in.p.size());
    check(rpwf_path_point(path, rpwf_path_length(path) - 1, nullptr, last.data()), "--t-max");
    run.summary["final_X"] = last;
  } else {
    check(rpwf_wf_ensemble_write(&in.params, x0.empty() ? nullptr : x0.data(), o.t_max, &sde,
                                 o.seed, o.replicas, o.workers, out.c_str(), fmt),
          "--t-max");
  }
  run.outputs.push_back(out);
}

void cmd_rescale(Run& run) {
  const Options& o = run.opt;
  if (!run.given("--beta")) invalid("--beta", "required");
  const WfInput in = wf_input(run);
  const std::vector<double> x0 = start_point(run, in.p.size());
  const std::string& out = run.require_out();
  const rpwf_format fmt = run.c_format("csv");
  std::uint64_t steps = 0;
  check(rpwf_required_steps(o.t_max, o.beta, &steps), "--t-max");
  rpwf_path* path = nullptr;
  check(rpwf_rescaled_urn_path(&in.params, o.beta, x0.empty() ? nullptr : x0.data(), o.t_max,
                               o.dt_out, o.seed, &path),
        "--dt-out");
  std::unique_ptr<rpwf_path, decltype(&rpwf_path_free)> guard(path, rpwf_path_free);
  check(rpwf_path_write(path, out.c_str(), fmt), "--out");
  run.outputs.push_back(out);
  run.summary["urn_steps"] = steps;
}

void cmd_density(Run& run) {
  const Options& o = run.opt;
  const WfInput in = wf_input(run);
  const std::size_t k = in.p.size();
  if (o.y.empty()) invalid("--y", "required");
  if (o.y0.empty()) invalid("--y0", "required");
  const std::vector<double> y = simplex_coords(o.y, k, "--y");
  const std::vector<double> y0 = simplex_coords(o.y0, k, "--y0");
  if (!run.given("--t")) invalid("--t", "required");
  rpwf_density_result r{};
  check(rpwf_transition_density(&in.params, y0.data(), y.data(), o.t, o.max_degree, &r), "--y");
  double stationary = 0.0;
  check(rpwf_stationary_density(&in.params, y.data(), &stationary), "--y");
  if (r.small_time) std::cerr << "warning: t is below the reliable range of the series\n";
  if (r.truncation_warning) std::cerr << "warning: series tail exceeds 1e-6 of the value\n";
  run.emit({{"alpha", o.alpha},
            {"b", in.params.b},
            {"p", in.p},
            {"y0", y0},
            {"y", y},
            {"t", o.t},
            {"density", r.value},
            {"stationary_density", stationary},
            {"tail_term", r.tail_term},
            {"n_terms", r.n_terms},
            {"small_time", r.small_time != 0},
            {"truncation_warning", r.truncation_warning != 0}},
           "json");
}

json boundary_entry(const rpwf_wf_params& params, const std::vector<std::size_t>& colors) {
  double a0 = 0.0, a1 = 0.0;
  int recessive = 0;
  check(rpwf_group_to_1d(&params, colors.data(), colors.size(), &a0, &a1), "--J");
  check(rpwf_is_recessive(&params, colors.data(), colors.size(), &recessive), "--J");
  rpwf_boundary_type at0{}, at1{};
  check(rpwf_classify_boundary(a0, &at0), "--J");
  check(rpwf_classify_boundary(a1, &at1), "--J");
  std::vector<std::size_t> one_based;
  for (std::size_t c : colors) one_based.push_back(c + 1);
  return {{"colors", one_based},
          {"a0", a0},
          {"a1", a1},
          {"at_zero", rpwf_boundary_name(at0)},
          {"at_one", rpwf_boundary_name(at1)},
          {"recessive", recessive != 0}};
}

void cmd_boundary(Run& run) {
  const Options& o = run.opt;
  const WfInput in = wf_input(run);
  const std::size_t k = in.p.size();
  json colors = json::array();
  std::vector<std::size_t> dominant;
  for (std::size_t i = 0; i < k; ++i) {
    json entry = boundary_entry(in.params, {i});
    int dom = 0;
    check(rpwf_is_dominant(&in.params, i, &dom), "--p");
    entry["dominant"] = dom != 0;
    if (dom) dominant.push_back(i + 1);
    colors.push_back(entry);
  }
  json result = {{"alpha", o.alpha}, {"b", in.params.b}, {"p", in.p},
                 {"colors", colors}, {"dominant", dominant}};
  if (!o.J.empty()) result["J"] = boundary_entry(in.params, parse_colors(o.J, k, "--J"));
  run.emit(result, "json");
}

void cmd_hit_prob(Run& run) {
  const Options& o = run.opt;
  for (const char* flag : {"--a0", "--a1", "--a", "--b", "--z0"}) {
    if (!run.given(flag)) invalid(flag, "required");
  }
  const std::vector<double> upper = parse_list(o.b, "--b");
  if (upper.size() != 1) invalid("--b", "hit-prob takes a single upper endpoint");
  const rpwf_interval ip{o.a0, o.a1, o.a, upper[0]};
  double u = 0.0, w = 0.0;
  check(rpwf_hitting_prob(&ip, o.z0, &u), "--z0");
  check(rpwf_mean_exit_time(&ip, o.z0, &w), "--z0");
  rpwf_boundary_type at0{}, at1{};
  check(rpwf_classify_boundary(o.a0, &at0), "--a0");
  check(rpwf_classify_boundary(o.a1, &at1), "--a1");
  run.emit({{"a0", o.a0},
            {"a1", o.a1},
            {"a", o.a},
            {"b", upper[0]},
            {"z0", o.z0},
            {"hitting_probability", u},
            {"mean_exit_time", w},
            {"at_zero", rpwf_boundary_name(at0)},
            {"at_one", rpwf_boundary_name(at1)}},
           "json");
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
  const std::size_t slash = out.find_last_of('/');
  const std::size_t dot = out.find_last_of('.');
  const std::string stem =
      (dot != std::string::npos && (slash == std::string::npos || dot > slash)) ? out.substr(0, dot)
                                                                                : out;
  return stem + suffix;
}

void cmd_converge(Run& run) {
  const Options& o = run.opt;
  const WfInput in = wf_input(run);
  const std::vector<double> x0 = start_point(run, in.p.size());
  std::vector<double> betas = {0.5, 0.9, 0.99};
  if (!o.betas.empty()) {
    betas = parse_list(o.betas, "--betas");
  } else if (run.given("--beta")) {
    betas = {o.beta};
  }
  std::vector<double> checkpoints = {o.t_max};
  if (!o.checkpoints.empty()) checkpoints = parse_list(o.checkpoints, "--checkpoints");
  const std::size_t replicas = run.given("--replicas") ? o.replicas : 2000;
  const std::string& out = run.require_out();
  if (run.format("json") != "json") invalid("--format", "converge writes a JSON report");

  const rpwf_converge_config config{in.params,  x0.empty() ? nullptr : x0.data(),
                                    betas.data(), betas.size(),
                                    checkpoints.data(), checkpoints.size(),
                                    replicas,     o.wf_paths,
                                    o.dt,         o.seed,
                                    o.workers};
  rpwf_convergence* report = nullptr;
  check(rpwf_converge(&config, &report), "--betas");
  std::unique_ptr<rpwf_convergence, decltype(&rpwf_convergence_free)> guard(report,
                                                                             rpwf_convergence_free);
  check(rpwf_convergence_write_json(report, out.c_str()), "--out");
  run.outputs.push_back(out);
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    for (std::size_t ci = 0; ci < checkpoints.size(); ++ci) {
      const std::string csv =
          sibling_path(out, "_beta" + std::to_string(bi + 1) + "_t" + std::to_string(ci + 1) + ".csv");
      check(rpwf_convergence_write_samples(report, bi, ci, csv.c_str()), "--out");
      run.outputs.push_back(csv);
    }
  }
  json mean_d = json::array();
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    double d = 0.0;
    check(rpwf_convergence_mean_D(report, bi, &d), "--betas");
    mean_d.push_back({{"beta", betas[bi]}, {"mean_D", d}});
  }
  int trend = 0;
  check(rpwf_convergence_trend(report, &trend), "--betas");
  run.summary["mean_D"] = mean_d;
  run.summary["trend_non_increasing"] = trend != 0;
}

void cmd_stationary_test(Run& run) {
  const Options& o = run.opt;
  const WfInput in = wf_input(run);
  const std::vector<double> x0 = start_point(run, in.p.size());
  if (o.color < 1 || o.color > in.p.size()) {
    invalid("--color", "must lie in 1.." + std::to_string(in.p.size()));
  }
  const rpwf_stationary_config config{in.params,
                                      run.given("--beta") ? o.beta : 0.99,
                                      run.given("--t") ? o.t : 10.0,
                                      o.color - 1,
                                      run.given("--replicas") ? o.replicas : 1000,
                                      x0.empty() ? nullptr : x0.data(),
                                      o.seed,
                                      o.workers};
  if (run.format("json") != "json") invalid("--format", "stationary-test writes JSON");
  rpwf_stationary_result r{};
  if (o.out.empty()) {
    check(rpwf_stationary_test(&config, &r, nullptr), "--beta");
    run.stdout_text = json({{"D", r.D},
                            {"critical_1", r.critical_1},
                            {"critical_5", r.critical_5},
                            {"n_samples", r.n_samples},
                            {"urn_step", r.urn_step},
                            {"reject_5", r.D > r.critical_5}})
                          .dump(2) +
                      "\n";
  } else {
    check(rpwf_stationary_test(&config, &r, o.out.c_str()), "--beta");
    run.outputs.push_back(o.out);
  }
  run.summary["D"] = r.D;
  run.summary["critical_5"] = r.critical_5;
}

int run_cli(const std::vector<std::string>& args);

// Re-runs the recorded command and compares output hashes.
int cmd_replay(const std::string& manifest_path) {
  const json m = json::parse(read_file(manifest_path));
  const std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
  for (const std::string& a : argv) {
    if (a == "replay") throw CliError(kExitValidation, "--manifest: manifest records a replay");
  }
  const int code = run_cli(argv);
  if (code != kExitOk) return code;
  bool same = true;
  for (const json& entry : m.at("outputs")) {
    const std::string path = entry.at("path").get<std::string>();
    const std::string expected = entry.at("sha1").get<std::string>();
    const std::string actual = git_blob_sha1(read_file(path));
    std::cerr << (actual == expected ? "match    " : "MISMATCH ") << path << '\n';
    same = same && actual == expected;
  }
  return same ? kExitOk : kExitInternal;
}

int run_cli(const std::vector<std::string>& args) {
  Run run;
  Options& o = run.opt;
  o.argv = args;
  CLI::App app{"Rescaled Polya urns and their Wright-Fisher diffusion limit", "rpwf"};
  run.app = &app;
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML-style key = value file");

  app.add_option("--alpha", o.alpha, "Balls added per draw (alpha > 0)");
  run.beta_opt = app.add_option("--beta", o.beta, "Discount factor of the variable balls");
  app.add_option("--b", o.b, "Fixed ball counts / mutation weights, comma list (hit-prob: upper end)")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--b0", o.b0, "Initial variable ball counts, comma list")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--p", o.p, "Mutation kernel p, comma list (default b/|b|)")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--x0", o.x0, "Start point on the simplex, comma list (default p)")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--steps", o.steps, "Urn steps");
  app.add_option("--t-max", o.t_max, "Time horizon");
  app.add_option("--dt", o.dt, "Euler-Maruyama step");
  app.add_option("--dt-out", o.dt_out, "Output grid spacing for rescale");
  app.add_option("--seed", o.seed, "Master seed")->envname("RPWF_SEED");
  run.replicas_opt = app.add_option("--replicas", o.replicas, "Independent replicas");
  app.add_option("--wf-paths", o.wf_paths, "Diffusion paths for converge (default replicas)");
  app.add_option("--max-degree", o.max_degree, "Series truncation degree (default: maximum)");
  app.add_option("--out", o.out, "Output path");
  app.add_option("--format", o.format, "csv or json");
  app.add_option("--workers", o.workers, "Worker threads (0: all cores)");
  app.add_option("--y0", o.y0, "Density start point, k-1 or k coordinates")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--y", o.y, "Density evaluation point, k-1 or k coordinates")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  run.t_opt = app.add_option("--t", o.t, "Time");
  app.add_option("--J", o.J, "Color set, 1-based comma list")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--a0", o.a0, "Drift coefficient at 0");
  app.add_option("--a1", o.a1, "Drift coefficient at 1");
  app.add_option("--a", o.a, "Lower end of the interval");
  app.add_option("--z0", o.z0, "Start of the 1-d process");
  app.add_option("--betas", o.betas, "Discount factors for converge, comma list")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--checkpoints", o.checkpoints, "Rescaled comparison times, comma list")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--color", o.color, "1-based color for stationary-test");
  app.add_option("--manifest", o.manifest, "Manifest path (write for commands, read for replay)");

  struct Command {
    const char* name;
    const char* help;
    void (*fn)(Run&);
  };
  const Command commands[] = {
      {"simulate-urn", "Simulate a rescaled Polya urn trajectory", cmd_simulate_urn},
      {"simulate-wf", "Simulate the Wright-Fisher diffusion", cmd_simulate_wf},
      {"rescale", "Urn path on the diffusion time scale", cmd_rescale},
      {"density", "Transition density of the diffusion", cmd_density},
      {"boundary", "Boundary types, recessive and dominant colors", cmd_boundary},
      {"hit-prob", "Hitting probability and mean exit time of the 1-d marginal", cmd_hit_prob},
      {"converge", "Compare urn replicas with diffusion paths", cmd_converge},
      {"stationary-test", "KS test of long-run urn samples against the Beta limit",
       cmd_stationary_test},
  };
  for (const Command& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();
  app.add_subcommand("replay", "Re-run a manifest and verify output hashes")->fallthrough();

  std::vector<char*> cargv;
  std::string prog = "rpwf";
  cargv.push_back(prog.data());
  std::vector<std::string> storage = args;
  for (std::string& a : storage) cargv.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (app.got_subcommand("replay")) {
      if (o.manifest.empty()) invalid("--manifest", "required for replay");
      return cmd_replay(o.manifest);
    }
    const Command* chosen = nullptr;
    for (const Command& c : commands) {
      if (app.got_subcommand(c.name)) chosen = &c;
    }
    chosen->fn(run);

    json outputs = json::array();
    for (const std::string& path : run.outputs) {
      outputs.push_back({{"path", path}, {"sha1", git_blob_sha1(read_file(path))}});
    }
    json manifest = {{"tool", "rpwf"},
                     {"version", rpwf_version()},
                     {"command", chosen->name},
                     {"argv", o.argv},
                     {"seed", o.seed},
                     {"outputs", outputs},
                     {"summary", run.summary}};
    if (!run.stdout_text.empty()) {
      std::cout << run.stdout_text;
    } else {
      std::cout << manifest.dump(2) << '\n';
    }
    if (!o.manifest.empty()) write_file(o.manifest, manifest.dump(2) + "\n");
    return kExitOk;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code;
  } catch (const json::exception& e) {
    std::cerr << "error: --manifest: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args);
}
