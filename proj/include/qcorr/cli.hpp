#pragma once

// Scenario configuration and trajectory output (CSV / JSON) for the
// command-line front end.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <set>
#include <string>

#include "json.hpp"

#include "qcorr/dynamics.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/scenario.hpp"

namespace qcorr::cli {

using nlohmann::json;

enum class OutputFormat { Csv, Json };

enum ExitCode : int { kSuccess = 0, kConfigError = 2, kEngineError = 3 };

inline constexpr const char* kCsvHeader = "t,I,C,D,Icomp,c1,c2,c3";

// Exactly 9 significant digits (printf "%#.9g" layout), '.' separator
// regardless of locale.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 9);
  std::string s(buf.data(), res.ptr);
  if (!std::isfinite(v)) return s;
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  const std::string exponent = e == std::string::npos ? "" : s.substr(e);
  int digits = 0;
  bool leading = true;
  for (char c : mantissa) {
    if (c < '0' || c > '9') continue;
    if (c != '0') leading = false;
    if (!leading) ++digits;
  }
  if (v == 0.0) digits = 1;
  if (mantissa.find('.') == std::string::npos) mantissa += '.';
  mantissa.append(static_cast<std::size_t>(std::max(0, 9 - digits)), '0');
  return mantissa + exponent;
}

inline std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("none");
}

namespace detail {
inline double number(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

inline Eigen::Vector3d vec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + " must have 3 entries");
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string(what) + " entries must be numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}
}  // namespace detail

inline FanoForm fano_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("fano must be an object with a, b, T");
  for (const auto& [key, _] : j.items()) {
    if (key != "a" && key != "b" && key != "T") throw ConfigError("unknown fano field '" + key + "'");
  }
  FanoForm f;
  if (j.contains("a")) f.a = detail::vec3(j["a"], "fano.a");
  if (j.contains("b")) f.b = detail::vec3(j["b"], "fano.b");
  if (j.contains("T")) {
    const auto& t = j["T"];
    if (!t.is_array() || t.size() != 3) throw ConfigError("fano.T must be 3x3");
    for (int r = 0; r < 3; ++r) f.T.row(r) = detail::vec3(t[r], "fano.T row").transpose();
  }
  return f;
}

inline json fano_to_json(const FanoForm& f) {
  json t = json::array();
  for (int r = 0; r < 3; ++r) t.push_back({f.T(r, 0), f.T(r, 1), f.T(r, 2)});
  return {{"a", {f.a(0), f.a(1), f.a(2)}}, {"b", {f.b(0), f.b(1), f.b(2)}}, {"T", t}};
}

inline int parse_sign(const std::string& s) {
  if (s == "+" || s == "plus" || s == "+1") return +1;
  if (s == "-" || s == "minus" || s == "-1") return -1;
  throw ConfigError("sign must be '+' or '-', got '" + s + "'");
}

// Reads a scenario object. Keys mirror the command-line flags; unknown keys
// are rejected. Family-specific fields are checked later by validate().
// Mazzola defaults to c3 = 0.6, sign +; tmax defaults to 2 / gamma.
inline Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario config must be a JSON object");
  static const std::set<std::string> known{"family", "gamma", "c3",      "sign",   "theta",
                                           "beta",   "fano",  "channel", "tmax",   "points"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config field '" + key + "'");
  }
  try {
    Scenario s;
    if (j.contains("family")) {
      const auto fam = parse_family(j["family"].get<std::string>());
      if (!fam) throw ConfigError("unknown family '" + j["family"].get<std::string>() + "'");
      s.family = *fam;
    }
    if (j.contains("gamma")) s.gamma = detail::number(j, "gamma");
    if (j.contains("c3")) s.c3 = detail::number(j, "c3");
    if (j.contains("sign")) {
      s.sign = j["sign"].is_number() ? (j["sign"].get<double>() < 0 ? -1 : 1)
                                     : parse_sign(j["sign"].get<std::string>());
    }
    if (j.contains("theta")) s.theta = detail::number(j, "theta");
    if (j.contains("beta")) s.beta = detail::number(j, "beta");
    if (j.contains("fano")) s.fano = fano_from_json(j["fano"]);
    if (j.contains("channel")) {
      const auto ch = parse_channel(j["channel"].get<std::string>());
      if (!ch) throw ConfigError("unknown channel '" + j["channel"].get<std::string>() + "'");
      s.channel = *ch;
    }
    if (s.family == Family::Mazzola) {
      if (!s.c3) s.c3 = 0.6;
      if (!s.sign) s.sign = +1;
    }
    s.t_max = j.contains("tmax") ? detail::number(j, "tmax") : 2.0 / s.gamma;
    if (j.contains("points")) {
      if (!j["points"].is_number_integer()) throw ConfigError("'points' must be an integer");
      s.n_points = j["points"].get<int>();
    }
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario config: ") + e.what());
  }
}

inline json scenario_to_json(const Scenario& s) {
  json j{{"family", std::string(to_string(s.family))},
         {"gamma", s.gamma},
         {"channel", std::string(to_string(s.channel))},
         {"tmax", s.t_max},
         {"points", s.n_points}};
  if (s.c3) j["c3"] = *s.c3;
  if (s.sign) j["sign"] = *s.sign < 0 ? "-" : "+";
  if (s.theta) j["theta"] = *s.theta;
  if (s.beta) j["beta"] = *s.beta;
  if (s.fano) j["fano"] = fano_to_json(*s.fano);
  return j;
}

inline json sample_to_json(const CorrelationSample& s) {
  return {{"t", s.t},         {"I", s.I},   {"C", s.C},   {"D", s.D},
          {"Icomp", s.Icomp}, {"c1", s.c1}, {"c2", s.c2}, {"c3", s.c3}};
}

inline CorrelationSample sample_from_json(const json& j) {
  return {j.at("t").get<double>(),  j.at("I").get<double>(),     j.at("C").get<double>(),
          j.at("D").get<double>(),  j.at("Icomp").get<double>(), j.at("c1").get<double>(),
          j.at("c2").get<double>(), j.at("c3").get<double>()};
}

inline json to_json(const Trajectory& traj, const TransitionResult& tr) {
  json samples = json::array();
  for (const auto& s : traj.samples) samples.push_back(sample_to_json(s));
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"scenario", scenario_to_json(traj.scenario)},
          {"samples", std::move(samples)},
          {"transition", {{"detected_t", opt(tr.detected_t)}, {"analytic_t", opt(tr.analytic_t)}}}};
}

inline void write_csv(std::ostream& os, const Trajectory& traj, const TransitionResult& tr) {
  os << kCsvHeader << '\n';
  for (const auto& s : traj.samples) {
    os << format_number(s.t) << ',' << format_number(s.I) << ',' << format_number(s.C) << ','
       << format_number(s.D) << ',' << format_number(s.Icomp) << ',' << format_number(s.c1)
       << ',' << format_number(s.c2) << ',' << format_number(s.c3) << '\n';
  }
  os << "# detected_t: " << format_optional(tr.detected_t)
     << ", analytic_t: " << format_optional(tr.analytic_t) << '\n';
}

inline void write_json(std::ostream& os, const Trajectory& traj, const TransitionResult& tr) {
  os << to_json(traj, tr).dump(2) << '\n';
}

inline void write_validation(std::ostream& os, const Scenario& s, const ValidationReport& r) {
  os << "scenario " << to_string(s.family) << ": " << (r.ok() ? "pass" : "fail") << '\n';
  for (const auto& f : r.failures) os << "  failure: " << f << '\n';
}

// Runs one scenario end to end and returns the process exit status.
inline int run(const Scenario& s, OutputFormat format, std::ostream& out, std::ostream& err) {
  const auto report = validate(s);
  if (!report.ok()) {
    write_validation(err, s, report);
    return kConfigError;
  }
  try {
    const auto traj = evolve_trajectory(s);
    TransitionResult tr;
    if (traj.samples.size() >= 8) {
      tr = detect_transition(traj);
    } else {
      tr.analytic_t = analytic_transition_time(s);
      tr.method = "skipped: fewer than 8 samples";
    }
    if (format == OutputFormat::Csv) {
      write_csv(out, traj, tr);
    } else {
      write_json(out, traj, tr);
    }
    return kSuccess;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "engine error: " << e.what() << '\n';
    return kEngineError;
  }
}

}  // namespace qcorr::cli
