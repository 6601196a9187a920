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

#include "softpulse/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "softpulse/givens.hpp"

namespace softpulse {

using nlohmann::json;

namespace {

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

double required_number(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  return number(j, key, 0.0);
}

std::complex<double> entry_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw ParseError("matrix entries must be numbers or [re, im] pairs");
}

std::string phase_name(CarrierPhase p) { return p == CarrierPhase::Zero ? "0" : "pi/2"; }

CarrierPhase phase_from_name(const std::string& s) {
  if (s == "0") return CarrierPhase::Zero;
  if (s == "pi/2") return CarrierPhase::HalfPi;
  throw ParseError("phase must be \"0\" or \"pi/2\", got \"" + s + "\"");
}

}  // namespace

void RunConfig::validate() const {
  system.validate();
  if (!(tolerances.rot_tol > 0) || !(tolerances.lab_tol > 0) || !(tolerances.recon_tol > 0))
    throw InvalidParams("tolerances must be positive");
  if (!(step > 0)) throw InvalidParams("integrator step must be positive");
}

json matrix_to_json(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"rows", std::move(rows)}};
}

Eigen::MatrixXcd matrix_from_json(const json& j, int n) {
  if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array())
    throw ParseError("matrix must be an object with a \"rows\" array");
  const json& rows = j.at("rows");
  if (static_cast<int>(rows.size()) != n)
    throw ParseError("matrix must have " + std::to_string(n) + " rows");
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n)
      throw ParseError("matrix row " + std::to_string(r) + " must have " + std::to_string(n) +
                       " entries");
    for (int c = 0; c < n; ++c) m(r, c) = entry_from_json(rows[r][c]);
  }
  if (!m.allFinite()) throw ParseError("matrix entries must be finite");
  return m;
}

Target target_from_json(const json& j) {
  const SU4Matrix u = matrix_from_json(j, 4);
  const double defect = unitarity_error(u);
  if (defect > kUnitarityTol) {
    std::ostringstream msg;
    msg << "target is not unitary: ||U^H U - I||_F = " << defect;
    throw NotUnitary(msg.str());
  }
  const PhaseNormalized n = normalize_phase(u);
  return {n.matrix, n.removed_phase};
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  RunConfig c;
  if (j.contains("system")) {
    const json& s = j.at("system");
    c.system.j = number(s, "j", c.system.j);
    c.system.omega1 = number(s, "omega1", c.system.omega1);
    c.system.omega2 = number(s, "omega2", c.system.omega2);
    c.system.b1 = number(s, "b1", c.system.b1);
    c.system.b2 = number(s, "b2", c.system.b2);
    c.system.c_bound = number(s, "c_bound", c.system.c_bound);
    c.system.d_bound = number(s, "d_bound", c.system.d_bound);
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    c.tolerances.rot_tol = number(t, "rot_tol", c.tolerances.rot_tol);
    c.tolerances.lab_tol = number(t, "lab_tol", c.tolerances.lab_tol);
    c.tolerances.recon_tol = number(t, "recon_tol", c.tolerances.recon_tol);
  }
  c.step = number(j, "step", c.step);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ParseError("seed must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  return c;
}

json config_to_json(const RunConfig& c) {
  const SystemParams& s = c.system;
  return {{"system",
           {{"j", s.j},
            {"omega1", s.omega1},
            {"omega2", s.omega2},
            {"b1", s.b1},
            {"b2", s.b2},
            {"c_bound", s.c_bound},
            {"d_bound", s.d_bound}}},
          {"tolerances",
           {{"rot_tol", c.tolerances.rot_tol},
            {"lab_tol", c.tolerances.lab_tol},
            {"recon_tol", c.tolerances.recon_tol}}},
          {"step", c.step},
          {"seed", c.seed}};
}

json to_json(const LabSchedule& ls) {
  json segs = json::array();
  for (const LabSegment& s : ls.segments)
    segs.push_back({{"t_start", s.t_start},
                    {"duration", s.duration},
                    {"amplitude", s.amplitude},
                    {"spin", s.spin},
                    {"phase", phase_name(s.phase)}});
  return {{"segments", std::move(segs)},
          {"total_time", ls.total_time},
          {"frame", {{"omega1", ls.frame.omega1}, {"omega2", ls.frame.omega2}, {"j", ls.frame.j}}}};
}

LabSchedule lab_schedule_from_json(const json& j) {
  if (!j.is_object() || !j.contains("segments") || !j.at("segments").is_array())
    throw ParseError("lab schedule must contain a \"segments\" array");
  LabSchedule ls;
  double expected_start = 0.0;
  for (const json& e : j.at("segments")) {
    LabSegment s;
    s.t_start = required_number(e, "t_start");
    s.duration = required_number(e, "duration");
    s.amplitude = required_number(e, "amplitude");
    if (!e.contains("spin") || !e.at("spin").is_number_integer())
      throw ParseError("segment spin must be 1 or 2");
    s.spin = e.at("spin").get<int>();
    if (s.spin != 1 && s.spin != 2) throw ParseError("segment spin must be 1 or 2");
    if (!e.contains("phase") || !e.at("phase").is_string())
      throw ParseError("segment phase must be \"0\" or \"pi/2\"");
    s.phase = phase_from_name(e.at("phase").get<std::string>());
    if (!(s.duration > 0)) throw ParseError("segment durations must be positive");
    if (std::abs(s.t_start - expected_start) > 1e-9 * std::max(1.0, expected_start))
      throw ParseError("lab segments must be contiguous");
    expected_start = s.t_start + s.duration;
    ls.segments.push_back(s);
  }
  ls.total_time = required_number(j, "total_time");
  if (!j.contains("frame")) throw ParseError("lab schedule must contain \"frame\"");
  const json& f = j.at("frame");
  ls.frame = {required_number(f, "omega1"), required_number(f, "omega2"), required_number(f, "j")};
  return ls;
}

json to_json(const RotSchedule& rs) {
  json segs = json::array();
  for (const Segment& s : rs.segments)
    segs.push_back({{"a", s.a}, {"b", s.b}, {"generator", std::string(to_string(s.gen))}});
  return {{"segments", std::move(segs)}, {"c_bound", rs.c_bound}, {"d_bound", rs.d_bound}};
}

RotSchedule rot_schedule_from_json(const json& j) {
  if (!j.is_object() || !j.contains("segments") || !j.at("segments").is_array())
    throw ParseError("rotating schedule must contain a \"segments\" array");
  RotSchedule rs;
  rs.c_bound = required_number(j, "c_bound");
  rs.d_bound = required_number(j, "d_bound");
  for (const json& e : j.at("segments")) {
    Segment s;
    s.a = required_number(e, "a");
    s.b = required_number(e, "b");
    if (!e.contains("generator") || !e.at("generator").is_string())
      throw ParseError("segment generator must be a string");
    const auto gen = generator_from_string(e.at("generator").get<std::string>());
    if (!gen || !is_one_spin(*gen)) throw ParseError("segment generator must be X1, Y1, X2 or Y2");
    s.gen = *gen;
    rs.segments.push_back(s);
  }
  return rs;
}

json to_json(const ConstraintSummary& s) {
  return {{"o1", s.o1},
          {"o2", s.o2},
          {"amplitude", s.amplitude},
          {"min_a", s.min_a},
          {"max_abs_b", s.max_abs_b},
          {"max_ratio", s.max_ratio},
          {"segment_count", s.segment_count},
          {"drift_area", s.drift_area}};
}

json to_json(const VerificationReport& r) {
  return {{"rot_error", r.rot_error},
          {"lab_error", r.lab_error},
          {"constraints_ok",
           {{"o1", r.constraints.o1},
            {"o2", r.constraints.o2},
            {"amplitude", r.constraints.amplitude}}},
          {"segment_count", r.segment_count},
          {"total_time", r.total_time},
          {"removed_global_phase", r.removed_global_phase},
          {"max_unitarity_defect", r.max_defect},
          {"max_projection_correction", r.max_correction}};
}

json to_json(const FactorWord& w) {
  json out = json::array();
  for (const WordFactor& f : w) out.push_back({{"generator", std::string(to_string(f.gen))}, {"t", f.t}});
  return out;
}

json to_json(const CartanResult& c) {
  const CartanParams& p = c.params;
  return {{"k1", matrix_to_json(p.k1)},
          {"k2", matrix_to_json(p.k2)},
          {"k3", matrix_to_json(p.k3)},
          {"k4", matrix_to_json(p.k4)},
          {"theta1", p.theta1},
          {"theta2", p.theta2},
          {"theta3", p.theta3},
          {"route", std::string(to_string(c.route))},
          {"residual", c.residual}};
}

json to_json(const GivensFactor& f) {
  return {{"kind", std::string(to_string(f.kind))},
          {"core", matrix_to_json(f.core)},
          {"matrix", matrix_to_json(materialize(f))}};
}

std::string plot_csv(const LabSchedule& ls, int samples) {
  std::ostringstream out;
  out.precision(17);
  out << "t,spin,u1,u2\n";
  const int n = std::max(samples, 2);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    const double t = ls.total_time * i / (n - 1);
    while (k + 1 < ls.segments.size() && t >= ls.segments[k].t_start + ls.segments[k].duration) ++k;
    int spin = 0;
    double u1 = 0.0, u2 = 0.0;
    if (k < ls.segments.size() && ls.segments[k].amplitude != 0.0) {
      const LabSegment& s = ls.segments[k];
      const double omega = s.spin == 1 ? ls.frame.omega1 : ls.frame.omega2;
      const double arg = omega * t + phase_value(s.phase);
      spin = s.spin;
      u1 = s.amplitude * std::cos(arg);
      u2 = s.amplitude * std::sin(arg);
    }
    out << t << ',' << spin << ',' << u1 << ',' << u2 << '\n';
  }
  return out.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace softpulse
