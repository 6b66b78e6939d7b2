#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spinstat/errors.hpp"
#include "spinstat/phase.hpp"

namespace spinstat {

template <typename S, std::size_t N>
using Vec = std::array<S, N>;

template <typename S, std::size_t N>
constexpr Vec<S, N> negated(const Vec<S, N>& v) {
  Vec<S, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = -v[i];
  return out;
}

/// Configuration of n pairwise-distinct labelled points in R^s.
template <typename S, std::size_t N>
struct DistinguishableConfig {
  std::vector<Vec<S, N>> points;
};

template <typename S, std::size_t N>
DistinguishableConfig<S, N> validate_config(std::vector<Vec<S, N>> points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw CoincidentPoints(i, j);
  return DistinguishableConfig<S, N>{std::move(points)};
}

/// Canonical representative of v ~ -v on the half-plane chart: the one whose
/// polar angle lies in (-pi/2, pi/2], with the boundary folded to +pi/2.
/// Pure sign logic, so it is exact for rational coordinates.
template <typename S>
constexpr Vec<S, 2> chart_fold(const Vec<S, 2>& v) {
  const S zero{};
  if (v[0] > zero) return v;
  if (v[0] < zero) return negated(v);
  if (v[1] > zero) return v;
  if (v[1] < zero) return negated(v);
  throw ZeroVector();
}

/// Half-space chart x >= 0 with the boundary identification
/// (0, y, z) ~ (0, -y, -z); boundary representatives take y > 0, and the
/// residual axis y = 0 takes z > 0.
template <typename S>
constexpr Vec<S, 3> chart_fold(const Vec<S, 3>& v) {
  const S zero{};
  if (v[0] > zero) return v;
  if (v[0] < zero) return negated(v);
  if (v[1] > zero) return v;
  if (v[1] < zero) return negated(v);
  if (v[2] > zero) return v;
  if (v[2] < zero) return negated(v);
  throw ZeroVector();
}

/// Point of the two-particle relative cone in half-plane polar coordinates,
/// phi in (-pi/2, pi/2] with the boundary at +pi/2.
struct ConePoint2D {
  double r = 0;
  double phi = 0;
};

/// Point of the three-dimensional relative half-space in cylinder
/// coordinates about the exchange axis.
struct HalfSpacePoint3D {
  double rho = 0;
  double phi = 0;
  double z = 0;
};

inline ConePoint2D to_chart(const Vec<double, 2>& v) {
  const auto f = chart_fold(v);
  return ConePoint2D{std::hypot(f[0], f[1]), std::atan2(f[1], f[0])};
}

inline HalfSpacePoint3D to_chart(const Vec<double, 3>& v) {
  const auto f = chart_fold(v);
  return HalfSpacePoint3D{std::hypot(f[0], f[1]), std::atan2(f[1], f[0]), f[2]};
}

/// Center-of-mass split of a two-point configuration. The relative vector is
/// stored as the folded chart representative; reconstruct() returns the
/// unordered pair {com + rel/2, com - rel/2}.
template <typename S, std::size_t N>
struct ComSplit {
  Vec<S, N> com{};
  Vec<S, N> relative{};

  std::pair<Vec<S, N>, Vec<S, N>> reconstruct() const {
    Vec<S, N> a{}, b{};
    for (std::size_t i = 0; i < N; ++i) {
      const S half = relative[i] / S(2);
      a[i] = com[i] + half;
      b[i] = com[i] - half;
    }
    return {a, b};
  }
};

template <typename S, std::size_t N>
ComSplit<S, N> com_split(const DistinguishableConfig<S, N>& config) {
  if (config.points.size() != 2)
    throw std::invalid_argument("com_split expects exactly two points");
  ComSplit<S, N> out;
  Vec<S, N> rel{};
  for (std::size_t i = 0; i < N; ++i) {
    out.com[i] = (config.points[0][i] + config.points[1][i]) / S(2);
    rel[i] = config.points[0][i] - config.points[1][i];
  }
  out.relative = chart_fold(rel);
  return out;
}

/// Closed loop of relative coordinates in the two-particle plane problem;
/// closed up to particle exchange (the endpoint equals +-
/// the start point).
struct ExchangePath {
  std::vector<Vec<double, 2>> samples;
};

/// Number of half-turns of the relative vector along the path. Odd values
/// exchange the particles; counterclockwise counts positive. The sampling
/// must keep each step shorter than the path's least distance to the
/// excluded origin, otherwise the winding is ambiguous.
inline long long exchange_winding(const ExchangePath& path) {
  const auto& p = path.samples;
  if (p.size() < 2) {
    if (p.empty()) throw AmbiguousWinding("empty path");
    return 0;  // single sample: constant path
  }
  double rmin = std::numeric_limits<double>::infinity();
  for (const auto& v : p) rmin = std::min(rmin, std::hypot(v[0], v[1]));
  if (rmin <= 0.0) throw AmbiguousWinding("path touches the excluded origin");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[i + 1];
    const double step = std::hypot(b[0] - a[0], b[1] - a[1]);
    if (step >= rmin)
      throw AmbiguousWinding("sample step " + std::to_string(step) +
                             " at least the minimum radius " + std::to_string(rmin));
    total += std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
  }
  const auto& first = p.front();
  const auto& last = p.back();
  const double scale = std::max(1.0, rmin);
  const bool same = std::hypot(last[0] - first[0], last[1] - first[1]) <= 1e-9 * scale;
  const bool negat = std::hypot(last[0] + first[0], last[1] + first[1]) <= 1e-9 * scale;
  if (!same && !negat) throw AmbiguousWinding("path is not closed up to exchange");
  const long long w = std::llround(total / std::numbers::pi);
  if (std::abs(total - double(w) * std::numbers::pi) > 1e-6)
    throw AmbiguousWinding("accumulated angle is not a multiple of pi");
  if ((w % 2 != 0) != negat)
    throw AmbiguousWinding("winding parity conflicts with endpoint identification");
  return w;
}

/// Statistics phase accrued by w half-turns.
constexpr ExactPhase holonomy_phase(long long w, const ExactPhase& kappa) {
  return kappa.pow(w);
}

/// One sample per line, N comma-separated columns. Blank lines and lines
/// starting with '#' are skipped.
template <std::size_t N>
std::vector<Vec<double, N>> read_path_csv(std::istream& in) {
  std::vector<Vec<double, N>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    Vec<double, N> v{};
    std::string cell;
    for (std::size_t i = 0; i < N; ++i) {
      if (!std::getline(row, cell, ',')) throw std::invalid_argument("short CSV row: " + line);
      v[i] = std::stod(cell);
    }
    out.push_back(v);
  }
  return out;
}

inline std::string format_17g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string str(const ConePoint2D& p) {
  return "(" + format_17g(p.r) + ", " + format_17g(p.phi) + ")";
}

inline std::string str(const HalfSpacePoint3D& p) {
  return "(" + format_17g(p.rho) + ", " + format_17g(p.phi) + ", " + format_17g(p.z) + ")";
}

}  // namespace spinstat
