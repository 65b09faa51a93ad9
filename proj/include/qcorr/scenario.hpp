#pragma once

// Named initial-state families plus noise and time-grid parameters.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class Family {
  Mazzola,  // Bell-diagonal with c1(0) = +-1, c2(0) = -+c3, c3
  Pure,     // cos(theta)|00> + sin(theta)|11>
  Werner,   // beta |psi-><psi-| + (1 - beta) I/4
  Custom,   // explicit Fano form
};

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::Mazzola: return "mazzola";
    case Family::Pure: return "pure";
    case Family::Werner: return "werner";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

inline std::optional<Family> parse_family(std::string_view s) {
  if (s == "mazzola") return Family::Mazzola;
  if (s == "pure") return Family::Pure;
  if (s == "werner") return Family::Werner;
  if (s == "custom") return Family::Custom;
  return std::nullopt;
}

inline std::optional<ChannelFamily> parse_channel(std::string_view s) {
  if (s == "phase_damping") return ChannelFamily::PhaseDamping;
  if (s == "depolarizing") return ChannelFamily::Depolarizing;
  if (s == "amplitude_damping") return ChannelFamily::AmplitudeDamping;
  return std::nullopt;
}

struct Scenario {
  Family family = Family::Mazzola;
  double gamma = 1.0;
  std::optional<double> c3;        // mazzola
  std::optional<int> sign;         // mazzola, +1 or -1
  std::optional<double> theta;     // pure
  std::optional<double> beta;      // werner
  std::optional<FanoForm> fano;    // custom
  ChannelFamily channel = ChannelFamily::PhaseDamping;
  double t_max = 2.0;
  int n_points = 801;
};

// The canonical sudden-transition setup: c3 = 0.6, sign +, gamma = 1 on [0, 2] with 801 points.
inline Scenario default_mazzola() {
  Scenario s;
  s.c3 = 0.6;
  s.sign = +1;
  return s;
}

inline DensityMatrix initial_state(const Scenario& s) {
  switch (s.family) {
    case Family::Mazzola: {
      if (!s.c3) throw ConfigError("mazzola scenario requires c3");
      const double sign = s.sign.value_or(+1) < 0 ? -1.0 : 1.0;
      return bell_diagonal(BellDiagonalCoeffs(sign, -sign * *s.c3, *s.c3));
    }
    case Family::Pure:
      if (!s.theta) throw ConfigError("pure scenario requires theta");
      return schmidt_pure(*s.theta);
    case Family::Werner:
      if (!s.beta) throw ConfigError("werner scenario requires beta");
      return werner(*s.beta);
    case Family::Custom:
      if (!s.fano) throw ConfigError("custom scenario requires a Fano form");
      return from_fano(*s.fano);
  }
  throw ConfigError("unknown scenario family");
}

// Sample times t_i = t_max * i / (n_points - 1).
inline std::vector<double> time_grid(const Scenario& s) {
  if (s.n_points < 2) throw ConfigError("time grid needs at least 2 points");
  std::vector<double> t(static_cast<std::size_t>(s.n_points));
  for (int i = 0; i < s.n_points; ++i) t[i] = s.t_max * i / (s.n_points - 1);
  return t;
}

struct ValidationReport {
  std::vector<std::string> failures;
  [[nodiscard]] bool ok() const { return failures.empty(); }
};

// Dry-run check of a scenario: parameter ranges, required/extraneous
// fields and validity of the initial state. Never throws.
inline ValidationReport validate(const Scenario& s) {
  ValidationReport r;
  const auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };

  if (!std::isfinite(s.gamma) || s.gamma <= 0.0) fail("gamma > 0 violated");
  if (!std::isfinite(s.t_max) || s.t_max <= 0.0) fail("t_max > 0 violated");
  if (s.n_points < 2) fail("points >= 2 violated");

  const bool wants_c3 = s.family == Family::Mazzola;
  const bool wants_theta = s.family == Family::Pure;
  const bool wants_beta = s.family == Family::Werner;
  const bool wants_fano = s.family == Family::Custom;
  const std::string fam(to_string(s.family));
  const auto field = [&](bool present, bool wanted, const char* name) {
    if (present && !wanted) fail(std::string("field '") + name + "' not allowed for family " + fam);
    if (!present && wanted) fail(std::string("field '") + name + "' required for family " + fam);
  };
  field(s.c3.has_value(), wants_c3, "c3");
  if (s.sign && s.family != Family::Mazzola) fail("field 'sign' not allowed for family " + fam);
  field(s.theta.has_value(), wants_theta, "theta");
  field(s.beta.has_value(), wants_beta, "beta");
  field(s.fano.has_value(), wants_fano, "fano");

  bool parameters_ok = r.ok();
  if (s.family == Family::Mazzola && s.c3) {
    if (!std::isfinite(*s.c3) || std::abs(*s.c3) > 1.0) {
      fail("|c3| <= 1 violated");
      parameters_ok = false;
    } else if (*s.c3 <= 0.0) {
      fail("c3 > 0 violated");
      parameters_ok = false;
    }
    if (s.sign && *s.sign != 1 && *s.sign != -1) {
      fail("sign must be + or -");
      parameters_ok = false;
    }
  }
  if (s.family == Family::Pure && s.theta && !std::isfinite(*s.theta)) {
    fail("theta must be finite");
    parameters_ok = false;
  }

  if (parameters_ok) {
    try {
      (void)initial_state(s);
    } catch (const NotAStateError& e) {
      fail(std::string("state not PSD: ") + e.what());
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return r;
}

}  // namespace qcorr
