// Copyright 2026 The softpulse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "softpulse/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "softpulse/io.hpp"

namespace softpulse {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// An exit code with a message, raised inside a job.
struct Failure {
  int code;
  std::string message;
};

struct Options {
  std::vector<std::string> targets;
  std::string config_path;
  std::string out_dir = ".";
  std::string schedule_dir;
  std::optional<double> tol_rot, tol_lab, max_area, max_amp, step;
  std::optional<std::uint64_t> seed;
  bool frame_correct = false;
  bool preset = false;
  int jobs = 1;
  int count = 1;
  int plot_samples = 4000;
};

int classify(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const NotUnitary*>(&e) ||
      dynamic_cast<const InvalidParams*>(&e) || dynamic_cast<const InvalidBound*>(&e) ||
      dynamic_cast<const StepTooLarge*>(&e))
    return kExitInput;
  if (dynamic_cast<const ReductionFailure*>(&e) || dynamic_cast<const NoRoot*>(&e) ||
      dynamic_cast<const ZeroVector*>(&e) || dynamic_cast<const NoBracket*>(&e))
    return kExitReconstruction;
  return kExitInternal;
}

RunConfig load_config(const Options& o) {
  RunConfig c;
  if (!o.config_path.empty()) c = config_from_json(read_json_file(o.config_path));
  if (o.tol_rot) c.tolerances.rot_tol = *o.tol_rot;
  if (o.tol_lab) c.tolerances.lab_tol = *o.tol_lab;
  if (o.max_area) c.system.c_bound = *o.max_area;
  if (o.max_amp) c.system.d_bound = *o.max_amp;
  if (o.step) c.step = *o.step;
  if (o.seed) c.seed = *o.seed;
  c.validate();
  return c;
}

struct Decomposition {
  Target target;
  GivensFactors givens;
  double givens_residual = 0.0;
  std::vector<CartanResult> cartan;
  FactorWord word;
  double word_residual = 0.0;
};

Decomposition decompose_target(const Target& t) {
  Decomposition d;
  d.target = t;
  d.givens = givens_decompose(t.matrix);
  d.givens_residual = frob_dist(product(d.givens), t.matrix);
  d.cartan = cartan_decompose(d.givens);
  std::vector<CartanParams> params;
  for (const CartanResult& c : d.cartan) params.push_back(c.params);
  d.word = word_from_cartan(params);
  d.word_residual = frob_dist(word_product(d.word), t.matrix);
  return d;
}

json decomposition_json(const Decomposition& d) {
  json givens = json::array(), cartan = json::array();
  for (const GivensFactor& f : d.givens) givens.push_back(to_json(f));
  for (const CartanResult& c : d.cartan) cartan.push_back(to_json(c));
  return {{"target", matrix_to_json(d.target.matrix)},
          {"removed_global_phase", d.target.removed_phase},
          {"givens", std::move(givens)},
          {"cartan", std::move(cartan)},
          {"word", to_json(d.word)},
          {"residuals", {{"givens", d.givens_residual}, {"word", d.word_residual}}}};
}

void check_reconstruction(const Decomposition& d, double tol) {
  std::ostringstream msg;
  if (d.givens_residual > tol) msg << " givens product residual " << d.givens_residual << ';';
  for (std::size_t i = 0; i < d.cartan.size(); ++i)
    if (d.cartan[i].residual > tol) msg << " factor S" << i + 1 << " residual " << d.cartan[i].residual << ';';
  if (d.word_residual > tol) msg << " word product residual " << d.word_residual << ';';
  if (!msg.str().empty()) throw Failure{kExitReconstruction, "reconstruction failed:" + msg.str()};
}

fs::path job_dir(const Options& o, const std::string& target) {
  fs::path dir = o.out_dir;
  if (o.targets.size() > 1) dir /= fs::path(target).stem();
  fs::create_directories(dir);
  return dir;
}

std::string run_decompose(const Options& o, const RunConfig& c, const std::string& target) {
  const fs::path dir = job_dir(o, target);
  const Decomposition d = decompose_target(target_from_json(read_json_file(target)));
  write_json_file((dir / "decomposition.json").string(), decomposition_json(d));
  check_reconstruction(d, c.tolerances.recon_tol);
  std::ostringstream msg;
  msg << target << ": " << d.word.size() << " word factors, residual " << d.word_residual;
  return msg.str();
}

struct FrameCorrectionInfo {
  std::string method;
  double t0 = 0.0;
  double residual = 0.0;
  double preparation_time = 0.0;
};

std::string run_compile(const Options& o, const RunConfig& c, const std::string& target) {
  const fs::path dir = job_dir(o, target);
  const SystemParams& p = c.system;
  const Decomposition d = decompose_target(target_from_json(read_json_file(target)));
  check_reconstruction(d, c.tolerances.recon_tol);

  RotSchedule rs = compile_word(d.word, p.c_bound, p.d_bound);
  std::optional<FrameCorrectionInfo> correction;
  if (o.frame_correct || o.preset) {
    double area = 0.0;
    for (const Segment& s : rs.segments) area += s.a;
    const double t_s = 2 * area / p.j;
    FrameCorrectionInfo info;
    if (o.preset) {
      const FrameCorrection fc = preset_frame_correction(t_s, p);
      info = {"preset", fc.t0, fc.residual, 0.0};
    } else {
      const FrameCorrection fc =
          frame_correction_time(t_s, p, [&](double t0) { return frame_preparation_time(t0, p); });
      info = {"fixed_point", fc.t0, fc.residual, 0.0};
    }
    RotSchedule prep = frame_schedule(info.t0, p);
    double prep_area = 0.0;
    for (const Segment& s : prep.segments) prep_area += s.a;
    info.preparation_time = 2 * prep_area / p.j;
    prep.segments.insert(prep.segments.end(), rs.segments.begin(), rs.segments.end());
    rs.segments = std::move(prep.segments);
    correction = info;
  }

  const ConstraintSummary summary = check_constraints(rs);
  const LabSchedule ls = to_lab_schedule(rs, p);
  SU4Matrix rot_target = d.target.matrix;
  if (correction) rot_target = frame_exp(p, correction->t0) * rot_target;
  const double rot_error = frob_dist(propagate_rotating(rs), rot_target);

  json summary_json = {{"max_abs_b", summary.max_abs_b},
                       {"max_ratio", summary.max_ratio},
                       {"total_time", ls.total_time},
                       {"segment_count", summary.segment_count},
                       {"constraints", to_json(summary)}};
  json rot = to_json(rs);
  rot["summary"] = summary_json;
  rot["removed_global_phase"] = d.target.removed_phase;
  if (correction)
    rot["frame_correction"] = {{"method", correction->method},
                               {"t0", correction->t0},
                               {"residual", correction->residual},
                               {"preparation_time", correction->preparation_time},
                               {"mismatch", ls.total_time - correction->t0}};
  write_json_file((dir / "rot_schedule.json").string(), rot);
  write_json_file((dir / "lab_schedule.json").string(), to_json(ls));

  json report = {{"summary", summary_json},
                 {"removed_global_phase", d.target.removed_phase},
                 {"word_length", d.word.size()},
                 {"rot_error", rot_error},
                 {"config", config_to_json(c)}};
  json routes = json::array();
  for (const CartanResult& r : d.cartan) routes.push_back(std::string(to_string(r.route)));
  report["cartan_routes"] = std::move(routes);
  if (correction) report["frame_correction"] = rot["frame_correction"];
  write_json_file((dir / "compile_report.json").string(), report);

  if (compile_exit_code(summary) != kExitOk) {
    std::ostringstream msg;
    msg << "bound violation: min a " << summary.min_a << ", max |b| " << summary.max_abs_b
        << ", max |b/a| " << summary.max_ratio;
    throw Failure{kExitBounds, msg.str()};
  }
  std::ostringstream msg;
  msg << target << ": " << summary.segment_count << " segments, total time " << ls.total_time
      << " s, max |b| " << summary.max_abs_b << ", max |b/a| " << summary.max_ratio;
  return msg.str();
}

std::string run_verify(const Options& o, const RunConfig& c, const std::string& target) {
  const fs::path dir = job_dir(o, target);
  const fs::path sched = o.schedule_dir.empty() ? dir : fs::path(o.schedule_dir);
  const SystemParams& p = c.system;
  const Target t = target_from_json(read_json_file(target));
  const json rot_json = read_json_file((sched / "rot_schedule.json").string());
  const RotSchedule rs = rot_schedule_from_json(rot_json);
  const LabSchedule ls = lab_schedule_from_json(read_json_file((sched / "lab_schedule.json").string()));
  if (ls.frame.omega1 != p.omega1 || ls.frame.omega2 != p.omega2 || ls.frame.j != p.j)
    throw ParseError("lab schedule frame does not match the configured system");

  SU4Matrix rot_target = t.matrix;
  if (rot_json.contains("frame_correction"))
    rot_target = frame_exp(p, rot_json.at("frame_correction").at("t0").get<double>()) * rot_target;

  const VerificationReport r = verify(rot_target, rs, ls, p, c.step, t.removed_phase);
  json report = to_json(r);
  report["tolerances"] = {{"rot_tol", c.tolerances.rot_tol}, {"lab_tol", c.tolerances.lab_tol}};
  report["step"] = c.step;
  write_json_file((dir / "verify_report.json").string(), report);
  write_text_file((dir / "plot.csv").string(), plot_csv(ls, o.plot_samples));

  std::ostringstream msg;
  msg << target << ": rot_error " << r.rot_error << ", lab_error " << r.lab_error;
  if (r.rot_error > c.tolerances.rot_tol || r.lab_error > c.tolerances.lab_tol)
    throw Failure{kExitVerify, "verification failed: " + msg.str()};
  return msg.str();
}

using Job = std::string (*)(const Options&, const RunConfig&, const std::string&);

int run_batch(const Options& o, Job job, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_config(o);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return classify(e);
  }

  const std::size_t n = o.targets.size();
  std::vector<int> codes(n, kExitOk);
  std::vector<std::string> messages(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        messages[i] = job(o, config, o.targets[i]);
      } catch (const Failure& f) {
        codes[i] = f.code;
        messages[i] = f.message;
      } catch (const std::exception& e) {
        codes[i] = classify(e);
        messages[i] = o.targets[i] + ": " + e.what();
      }
    }
  };
  const int threads = std::clamp(o.jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  int code = kExitOk;
  for (std::size_t i = 0; i < n; ++i) {
    if (codes[i] == kExitOk) {
      out << messages[i] << '\n';
    } else {
      err << "error: " << messages[i] << '\n';
      code = std::max(code, codes[i]);
    }
  }
  return code;
}

int run_random_target(const Options& o, std::ostream& out, std::ostream& err) {
  try {
    std::mt19937_64 rng(o.seed.value_or(0));
    fs::create_directories(o.out_dir);
    for (int i = 0; i < o.count; ++i) {
      const SU4Matrix s = random_special_unitary<4>(rng);
      const std::string name = o.count == 1 ? "target.json" : "target_" + std::to_string(i) + ".json";
      const fs::path path = fs::path(o.out_dir) / name;
      write_json_file(path.string(), matrix_to_json(s));
      out << path.string() << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "Run configuration JSON")->check(CLI::ExistingFile);
  cmd->add_option("--out-dir", o.out_dir, "Directory for output files");
  cmd->add_option("--tol-rot", o.tol_rot, "Rotating-frame tolerance");
  cmd->add_option("--tol-lab", o.tol_lab, "Lab-frame tolerance");
  cmd->add_option("--max-area", o.max_area, "Pulse-area bound C");
  cmd->add_option("--max-amp", o.max_amp, "Amplitude-ratio bound D");
  cmd->add_option("--step", o.step, "Lab integrator step in seconds");
  cmd->add_option("--seed", o.seed, "Random seed");
}

}  // namespace

int compile_exit_code(const ConstraintSummary& summary) {
  return summary.ok() ? kExitOk : kExitBounds;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bounded-amplitude pulse compiler for two coupled spins", "softpulse"};
  app.require_subcommand(1);

  auto* decompose = app.add_subcommand("decompose", "Givens, Cartan and word decomposition");
  add_common(decompose, o);
  decompose->add_option("--target", o.targets, "Target matrix JSON")->required();
  decompose->add_option("--jobs", o.jobs, "Parallel jobs for several targets")->check(CLI::PositiveNumber);

  auto* compile = app.add_subcommand("compile", "Compile targets into pulse schedules");
  add_common(compile, o);
  compile->add_option("--target", o.targets, "Target matrix JSON")->required();
  compile->add_option("--jobs", o.jobs, "Parallel jobs for several targets")->check(CLI::PositiveNumber);
  compile->add_flag("--frame-correct", o.frame_correct,
                    "Also undo the rotating-frame drift, solving for the correction time");
  compile->add_flag("--preset-remark2", o.preset,
                    "Frame correction with the closed-form time equation of the reference construction");

  auto* verify_cmd = app.add_subcommand("verify", "Verify compiled schedules");
  add_common(verify_cmd, o);
  verify_cmd->add_option("--target", o.targets, "Target matrix JSON")->required();
  verify_cmd->add_option("--schedule-dir", o.schedule_dir,
                         "Directory holding rot_schedule.json and lab_schedule.json");
  verify_cmd->add_option("--plot-samples", o.plot_samples, "Rows in plot.csv")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--jobs", o.jobs, "Parallel jobs for several targets")->check(CLI::PositiveNumber);

  auto* random = app.add_subcommand("random-target", "Write Haar-random SU(4) targets");
  random->add_option("--seed", o.seed, "Random seed");
  random->add_option("--out-dir", o.out_dir, "Output directory");
  random->add_option("--count", o.count, "Number of targets")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_storage{"softpulse"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  if (*random) return run_random_target(o, out, err);
  if (*decompose) return run_batch(o, run_decompose, out, err);
  if (*compile) return run_batch(o, run_compile, out, err);
  if (!o.schedule_dir.empty() && o.targets.size() > 1) {
    err << "error: --schedule-dir takes a single target\n";
    return kExitInput;
  }
  return run_batch(o, run_verify, out, err);
}

}  // namespace softpulse
