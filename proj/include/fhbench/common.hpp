// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FHBENCH_COMMON_HPP
#define FHBENCH_COMMON_HPP

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace fhbench {

inline constexpr double kLn2 = 0.6931471805599453094172321214581766;

/// Instance too large for the configured memory cap.
struct SizeError : std::runtime_error {
  explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

/// Entropy or energy target outside the reachable range of a spectrum.
/// Carries the ground-degeneracy plateau (bits) so callers can report
/// how far below the reachable band the request fell.
struct EntropyRangeError : std::runtime_error {
  EntropyRangeError(const std::string& what, double plateau)
      : std::runtime_error(what), plateau_bits(plateau) {}
  double plateau_bits;
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Threshold solve failed: the classical reference is below the curve.
struct UnreachableError : std::runtime_error {
  explicit UnreachableError(const std::string& what) : std::runtime_error(what) {}
};

/// printf-style helper; all numeric formatting in this library goes
/// through explicit format strings so file output stays byte-stable.
inline std::string format(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  char buf[512];
  vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf);
}

/// Uniform grid in s (entropy density, bits per qubit).
/// Default: 1000 points on [0.02, 1].
struct SGrid {
  double min = 0.02;
  double max = 1.0;
  int points = 1000;

  std::vector<double> values() const {
    if (points < 1 || max < min) throw ConfigError("invalid s grid");
    std::vector<double> v(points);
    if (points == 1) {
      v[0] = min;
      return v;
    }
    const double step = (max - min) / (points - 1);
    for (int i = 0; i < points; ++i) v[i] = min + step * i;
    v.back() = max;
    return v;
  }

  /// Parse "min:max:step". The step is converted to a point count; the
  /// last point is clamped to max so rounding never overshoots.
  static SGrid parse(const std::string& text) {
    SGrid g;
    double step = 0;
    if (sscanf(text.c_str(), "%lf:%lf:%lf", &g.min, &g.max, &step) != 3 ||
        step <= 0 || g.max < g.min)
      throw ConfigError("bad s-grid spec '" + text + "' (want min:max:step)");
    g.points = static_cast<int>(std::floor((g.max - g.min) / step + 1 + 1e-9));
    return g;
  }
};

/// Log-spaced inverse-temperature grid plus the exact beta = 0 point.
/// Default: 400 points on [1e-4, 200].
struct BetaGrid {
  double beta_min = 1e-4;
  double beta_max = 200.0;
  int points = 400;

  std::vector<double> values() const {
    if (points < 2 || beta_min <= 0 || beta_max <= beta_min)
      throw ConfigError("invalid beta grid");
    std::vector<double> v;
    v.reserve(points + 1);
    v.push_back(0.0);
    const double lmin = std::log(beta_min), lmax = std::log(beta_max);
    for (int i = 0; i < points; ++i)
      v.push_back(std::exp(lmin + (lmax - lmin) * i / (points - 1)));
    v.back() = beta_max;
    return v;
  }
};

}  // namespace fhbench

#endif  // FHBENCH_COMMON_HPP
