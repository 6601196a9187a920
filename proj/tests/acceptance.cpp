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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "softpulse/cli.hpp"
#include "softpulse/io.hpp"
#include "softpulse/su2.hpp"

using namespace softpulse;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Random targets in U(4) brought to SU(4) by the input normalization.
std::vector<SU4Matrix> normalized_targets(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  std::vector<SU4Matrix> out;
  for (int i = 0; i < n; ++i)
    out.push_back(normalize_phase(std::polar(1.0, phase(rng)) * random_special_unitary<4>(rng)).matrix);
  return out;
}

struct RotationCase {
  double angle;
  Generator gen;
};

std::vector<RotationCase> rotation_cases() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> angle(-kTwoPi, kTwoPi);
  std::vector<RotationCase> out;
  for (Generator g : kOneSpinGenerators)
    for (double l : {kPi / 2, 3 * kPi / 2, -kPi / 2, -3 * kPi / 2}) out.push_back({l, g});
  while (out.size() < 1000) out.push_back({angle(rng), kOneSpinGenerators[out.size() % 4]});
  return out;
}

SU4Matrix word_of(const SU4Matrix& s, FactorWord& word) {
  std::vector<CartanParams> parts;
  for (const CartanResult& c : cartan_decompose(givens_decompose(s))) parts.push_back(c.params);
  word = word_from_cartan(parts);
  return word_product(word);
}

SystemParams desk_system(double c_bound, double d_bound) {
  SystemParams p;
  p.j = 1.0;
  p.omega1 = 20.0;
  p.omega2 = 30.0;
  p.b1 = p.b2 = 1.0;
  p.c_bound = c_bound;
  p.d_bound = d_bound;
  return p;
}

int quiet_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return run_cli(args, out, err);
}

}  // namespace

int main() {
  criterion(1, "SU(2) round trip", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const SU2Matrix s = random_special_unitary<2>(rng);
      worst = std::max(worst, frob_dist(euler_xyx_matrix(euler_xyx(to_cayley_klein(s))), s));
    }
    const double secs = seconds_since(t0);
    return Outcome{worst < 1e-12 && secs < 1.0,
                   fmt("max error %.3g (tol 1e-12), %.3f s (limit 1 s)", worst, secs)};
  });

  const std::vector<SU4Matrix> hundred = normalized_targets(2, 100);

  criterion(2, "Givens reconstruction", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const SU4Matrix& s : hundred) worst = std::max(worst, frob_dist(product(givens_decompose(s)), s));
    const double secs = seconds_since(t0);
    return Outcome{worst < 1e-10 && secs < 1.0,
                   fmt("max error %.3g (tol 1e-10), %.3f s (limit 1 s)", worst, secs)};
  });

  criterion(3, "Cartan reconstruction", [&] {
    double worst = 0.0;
    int total = 0, fallback = 0, protected_fallback = 0;
    for (const SU4Matrix& s : hundred) {
      const GivensFactors g = givens_decompose(s);
      const std::vector<CartanResult> parts = cartan_decompose(g);
      for (int k = 0; k < 6; ++k) {
        worst = std::max(worst, frob_dist(reconstruct_cartan(parts[k].params), materialize(g[k])));
        ++total;
        if (parts[k].fallback_used()) {
          ++fallback;
          const GivensKind kind = g[k].kind;
          if (kind == GivensKind::Kron || kind == GivensKind::Plane23 || kind == GivensKind::Plane14)
            ++protected_fallback;
        }
      }
    }
    const double fraction = double(fallback) / total;
    return Outcome{worst < 1e-8 && fraction < 1.0 && protected_fallback == 0,
                   fmt("max error %.3g (tol 1e-8), least-squares fraction %.4f of %g factors, "
                       "%g on recipe-only kinds",
                       worst, fraction, total, protected_fallback)};
  });

  const std::vector<RotationCase> cases = rotation_cases();

  criterion(4, "rotation compiler exactness", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const RotationCase& c : cases) {
      const RotSchedule rs = compile_rotation(c.angle, c.gen, 10.0, std::numeric_limits<double>::infinity());
      worst = std::max(worst, frob_dist(propagate_rotating(rs), expm_oracle(generator_matrix(c.gen), c.angle)));
    }
    const double secs = seconds_since(t0);
    return Outcome{worst < 1e-10 && secs < 2.0,
                   fmt("1000 pairs incl. L = +-pi/2, +-3pi/2: max error %.3g (tol 1e-10), %.3f s (limit 2 s)",
                       worst, secs)};
  });

  criterion(5, "bounded compilation", [&] {
    double worst = 0.0, max_b = 0.0, max_ratio = 0.0, min_a = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (const RotationCase& c : cases) {
      const RotSchedule rs = compile_rotation(c.angle, c.gen, 0.1, 0.5);
      const ConstraintSummary s = check_constraints(rs);
      ok = ok && s.ok();
      max_b = std::max(max_b, s.max_abs_b);
      max_ratio = std::max(max_ratio, s.max_ratio);
      min_a = std::min(min_a, s.min_a);
      worst = std::max(worst, frob_dist(propagate_rotating(rs), expm_oracle(generator_matrix(c.gen), c.angle)));
    }
    return Outcome{ok && min_a > 0 && max_b <= 0.1 && max_ratio <= 0.5 && worst < 1e-9,
                   fmt("min a %.3g > 0, max |b| %.4g <= 0.1, max |b/a| %.4g <= 0.5, max error %.3g (tol 1e-9)",
                       min_a, max_b, max_ratio, worst)};
  });

  criterion(6, "end-to-end rotating frame", [] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    bool ok = true;
    for (const SU4Matrix& s : normalized_targets(6, 25)) {
      FactorWord word;
      word_of(s, word);
      const RotSchedule rs = compile_word(word, 0.2, 1.0);
      ok = ok && check_constraints(rs).ok();
      worst = std::max(worst, frob_dist(propagate_rotating(rs), s));
    }
    const double secs = seconds_since(t0);
    return Outcome{ok && worst < 1e-8 && secs < 10.0,
                   fmt("25 targets at C = 0.2, D = 1: max error %.3g (tol 1e-8), %.2f s (limit 10 s)", worst,
                       secs)};
  });

  criterion(7, "lab-frame cross-validation", [] {
    const auto t0 = std::chrono::steady_clock::now();
    // Loose area bound and D = 3 keep the pulse count, and so the runtime, small.
    const SystemParams p = desk_system(10.0, 3.0);
    const double step = 1e-4 * kTwoPi / 30.0;
    double worst = 0.0, worst_ratio = std::numeric_limits<double>::infinity();
    for (const SU4Matrix& s : normalized_targets(7, 3)) {
      FactorWord word;
      word_of(s, word);
      const RotSchedule rs = compile_word(word, p.c_bound, p.d_bound);
      const LabSchedule ls = to_lab_schedule(rs, p);
      const Matrix4c<long double> u_rot = propagate_rotating_as<long double>(rs);
      const auto error = [&](double h) {
        const LabRun<long double> run = integrate_lab<long double>(ls, p, h);
        Matrix4c<long double> expected = u_rot;
        for (int k = 0; k < 4; ++k) {
          const long double z1 = k < 2 ? 1 : -1, z2 = k % 2 == 0 ? 1 : -1;
          expected.row(k) *= std::polar(1.0L, -run.total_time / 2 * (20.0L * z1 + 30.0L * z2));
        }
        return static_cast<double>((run.v - expected).norm());
      };
      const double e1 = error(step), e2 = error(step / 2);
      worst = std::max(worst, e1);
      worst_ratio = std::min(worst_ratio, e1 / e2);
    }
    const double secs = seconds_since(t0);
    return Outcome{worst < 1e-5 && worst_ratio >= 12.0 && secs < 120.0,
                   fmt("3 targets: max error %.3g (tol 1e-5), min halving ratio %.2f (need >= 12), %.1f s "
                       "(limit 120 s)",
                       worst, worst_ratio, secs)};
  });

  criterion(8, "free-evolution periodicity", [] {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> theta(-kTwoPi, 0.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double t = theta(rng);
      SU4Matrix closed = SU4Matrix::Zero();
      closed(0, 0) = closed(3, 3) = std::polar(1.0, -t);
      closed(1, 1) = closed(2, 2) = std::polar(1.0, t);
      worst = std::max(worst, frob_dist(segment_propagator({free_time(t), 0.0, Generator::X1}), closed));
    }
    return Outcome{worst < 1e-14, fmt("100 angles theta < 0: max error %.3g (tol 1e-14)", worst)};
  });

  criterion(9, "frame correction", [] {
    double worst_preset = 0.0;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ts(0.0, 200.0), w(5.0, 60.0), j(0.5, 3.0);
    for (int i = 0; i < 10; ++i) {
      SystemParams p = desk_system(0.2, 1.0);
      if (i > 0) {
        p.omega1 = w(rng);
        p.omega2 = p.omega1 + w(rng);
        p.j = j(rng);
      }
      const double t_s = i == 0 ? 10.0 : ts(rng);
      const FrameCorrection fc = preset_frame_correction(t_s, p);
      worst_preset = std::max(worst_preset, std::abs(preset_residual(fc.t0, t_s, p)));
    }
    double worst_fixed = 0.0;
    for (double t_s : {10.0, 250.0, 1234.5}) {
      const SystemParams p = desk_system(0.2, 1.0);
      const auto time_of = [&](double t0) { return frame_preparation_time(t0, p); };
      const FrameCorrection fc = frame_correction_time(t_s, p, time_of);
      worst_fixed = std::max(worst_fixed, std::abs(time_of(fc.t0) + t_s - fc.t0));
    }
    return Outcome{worst_preset < 1e-9 && worst_fixed < 1e-9,
                   fmt("preset |residual| %.3g over 10 cases, fixed point |time_of(T0) + T_S - T0| %.3g s "
                       "(tol 1e-9)",
                       worst_preset, worst_fixed)};
  });

  criterion(10, "negative controls", [] {
    const fs::path dir = fs::temp_directory_path() / "softpulse_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    RunConfig c;
    c.system = desk_system(10.0, 3.0);
    c.step = 4e-4;
    write_json_file((dir / "config.json").string(), config_to_json(c));
    std::mt19937_64 rng(10);
    write_json_file((dir / "target.json").string(), matrix_to_json(random_special_unitary<4>(rng)));
    write_json_file((dir / "other.json").string(), matrix_to_json(random_special_unitary<4>(rng)));
    const std::string config = (dir / "config.json").string();
    const auto verify_code = [&](const std::string& target, const fs::path& sched) {
      return quiet_cli({"verify", "--target", target, "--config", config, "--schedule-dir", sched.string(),
                        "--out-dir", (dir / "report").string()});
    };

    const int compiled = quiet_cli({"compile", "--target", (dir / "target.json").string(), "--config", config,
                                    "--out-dir", (dir / "sched").string()});
    const int matched = verify_code((dir / "target.json").string(), dir / "sched");
    const int mismatched = verify_code((dir / "other.json").string(), dir / "sched");

    // Corrupt one rotating segment and the lab schedule derived from it.
    nlohmann::json rot = read_json_file((dir / "sched/rot_schedule.json").string());
    for (auto& seg : rot.at("segments"))
      if (seg.at("b").get<double>() != 0.0) {
        seg["b"] = seg.at("b").get<double>() * 1.05;
        break;
      }
    fs::create_directories(dir / "corrupt");
    write_json_file((dir / "corrupt/rot_schedule.json").string(), rot);
    write_json_file((dir / "corrupt/lab_schedule.json").string(),
                    to_json(to_lab_schedule(rot_schedule_from_json(rot), c.system)));
    const int corrupted = verify_code((dir / "target.json").string(), dir / "corrupt");

    // Corrupt the lab schedule alone.
    nlohmann::json lab = read_json_file((dir / "sched/lab_schedule.json").string());
    for (auto& seg : lab.at("segments"))
      if (seg.at("amplitude").get<double>() != 0.0) {
        seg["amplitude"] = -seg.at("amplitude").get<double>();
        break;
      }
    fs::create_directories(dir / "lab_only");
    fs::copy_file(dir / "sched/rot_schedule.json", dir / "lab_only/rot_schedule.json");
    write_json_file((dir / "lab_only/lab_schedule.json").string(), lab);
    const int lab_corrupted = verify_code((dir / "target.json").string(), dir / "lab_only");
    fs::remove_all(dir);

    const bool ok = compiled == 0 && matched == 0 && mismatched == kExitVerify && corrupted == kExitVerify &&
                    lab_corrupted == kExitVerify;
    return Outcome{ok, fmt("exit codes: matched %g, mismatched target %g, corrupted schedule %g, "
                           "corrupted lab schedule %g (want 0, 5, 5, 5)",
                           matched, mismatched, corrupted, lab_corrupted)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
