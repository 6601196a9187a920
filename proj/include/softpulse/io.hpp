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

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "softpulse/sim.hpp"

namespace softpulse {

inline constexpr double kUnitarityTol = 1e-9;

struct Tolerances {
  double rot_tol = 1e-8;
  double lab_tol = 1e-5;
  double recon_tol = 1e-9;
};

struct RunConfig {
  SystemParams system;
  Tolerances tolerances;
  double step = 1e-4 * kTwoPi / 30.0;
  std::uint64_t seed = 0;

  /// Throws InvalidParams / InvalidBound.
  void validate() const;
};

/// A target read from disk: the special-unitary representative and the
/// global phase divided out of the input.
struct Target {
  SU4Matrix matrix;
  double removed_phase = 0.0;
};

nlohmann::json matrix_to_json(const Eigen::Ref<const Eigen::MatrixXcd>& m);
/// {"rows": [[[re, im], ...], ...]}; a bare real entry is accepted as re.
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j, int n);

/// Parses and validates ||U^H U - I||_F <= 1e-9, then normalizes by the
/// principal fourth root of the determinant. Throws ParseError / NotUnitary.
Target target_from_json(const nlohmann::json& j);

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);

nlohmann::json to_json(const LabSchedule& ls);
LabSchedule lab_schedule_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RotSchedule& rs);
RotSchedule rot_schedule_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConstraintSummary& s);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const FactorWord& w);
nlohmann::json to_json(const CartanResult& c);
nlohmann::json to_json(const GivensFactor& f);

/// Samples "t,spin,u1,u2" at `samples` evenly spaced instants of [0, T];
/// spin is 0 where no pulse is active.
std::string plot_csv(const LabSchedule& ls, int samples);

nlohmann::json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::string& path, const nlohmann::json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace softpulse
