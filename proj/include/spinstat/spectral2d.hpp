#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spinstat/errors.hpp"
#include "spinstat/phase.hpp"

namespace spinstat {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Charts and boundary conditions
// ---------------------------------------------------------------------------

/// Angular chart carrying the wave functions: the full plane angle
/// (-pi, pi) or the relative-cone half-plane angle (-pi/2, pi/2).
enum class ChartKind { plane, cone };

/// Uniform midpoint grid on the chart interval. Midpoints keep the samples
/// away from the identified boundary.
struct ChartGrid {
  ChartKind kind = ChartKind::plane;
  int size = 0;

  double lo() const { return kind == ChartKind::plane ? -std::numbers::pi : -std::numbers::pi / 2; }
  double length() const { return kind == ChartKind::plane ? 2 * std::numbers::pi : std::numbers::pi; }
  double step() const { return length() / size; }
  double angle(int j) const { return lo() + (j + 0.5) * step(); }

  friend bool operator==(const ChartGrid&, const ChartGrid&) = default;
};

/// Self-adjoint extension of -i d/dphi on the cone chart, selected by the
/// boundary condition psi(pi/2) = e^{i theta} psi(-pi/2). theta is stored
/// exactly as theta/pi, so extension spectra are exact rationals. The
/// rotation-by-pi operator R = e^{i pi ell} squares to the identity exactly
/// for theta in {0, pi}; other extensions are retained for exploration but
/// rejected by the theorem-level checks.
class ExtensionBC {
 public:
  ExtensionBC() : t_(0) {}
  explicit ExtensionBC(const Rational& theta_over_pi) : t_(mod(theta_over_pi, 2)) {}

  static ExtensionBC from_involution(InvolutionSign R) {
    return ExtensionBC(R.sign() == +1 ? Rational(0) : Rational(1));
  }

  const Rational& theta_over_pi() const { return t_; }
  double theta() const { return std::numbers::pi * t_.value(); }
  bool involutive() const { return t_ == Rational(0) || t_ == Rational(1); }

  /// e^{i theta}, the scalar value of R on every extension eigenmode.
  ExactPhase boundary_phase() const { return ExactPhase::from_exponent(t_); }

  friend bool operator==(const ExtensionBC& a, const ExtensionBC& b) { return a.t_ == b.t_; }

 private:
  Rational t_;
};

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

/// Eigenvalue multiset of an angular operator over the symmetric mode-index
/// window [-M, M], stored exactly and sorted ascending.
struct SpectrumWindow {
  std::string operator_tag;
  long long k_min = 0;
  long long k_max = 0;
  std::vector<Rational> values;
};

/// spec(L) on the plane: the integers -M..M.
inline SpectrumWindow plane_spectrum(int M) {
  SpectrumWindow w{"L", -M, M, {}};
  w.values.reserve(2 * M + 1);
  for (long long k = -M; k <= M; ++k) w.values.emplace_back(k);
  return w;
}

/// spec(ell(theta)) on the cone chart: theta/pi + 2k, k in [-M, M].
inline SpectrumWindow cone_spectrum(const ExtensionBC& bc, int M) {
  SpectrumWindow w{"ell", -M, M, {}};
  w.values.reserve(2 * M + 1);
  for (long long k = -M; k <= M; ++k) w.values.push_back(bc.theta_over_pi() + Rational(2 * k));
  return w;
}

/// Affine image a*spec + b, preserving order (requires a > 0).
inline SpectrumWindow affine(const SpectrumWindow& w, const Rational& a, const Rational& b,
                             std::string tag) {
  SpectrumWindow out{std::move(tag), w.k_min, w.k_max, {}};
  out.values.reserve(w.values.size());
  for (const auto& v : w.values) out.values.push_back(a * v + b);
  return out;
}

/// spec(j) = spec(ell) + lambda.
inline SpectrumWindow total_j_spectrum(const ExtensionBC& bc, const OffsetLambda& lambda, int M) {
  return affine(cone_spectrum(bc, M), Rational(1), lambda.value, "j");
}

/// The rotation-by-pi operator of an extension: the scalar e^{i theta},
/// together with the involutivity flag R^2 = 1.
struct InvolutionReport {
  ExactPhase phase;
  bool involutive = false;
};

inline InvolutionReport involution_R(const ExtensionBC& bc) {
  return InvolutionReport{bc.boundary_phase(), bc.involutive()};
}

// ---------------------------------------------------------------------------
// Wave functions
// ---------------------------------------------------------------------------

/// Truncated expansion over the eigenmodes of the chart's angular momentum
/// operator: e^{i k phi}/sqrt(2 pi) on the plane, e^{i mu_k phi}/sqrt(pi)
/// with mu_k = theta/pi + 2k on the cone. Index window is [-M, M].
struct AngularWaveFunction {
  ChartKind domain = ChartKind::plane;
  ExtensionBC bc;  // meaningful for the cone; the plane is the periodic case
  int order = 0;
  std::vector<Complex> coeff;  // size 2*order + 1, entry k + order

  Rational eigenvalue_exact(long long k) const {
    if (domain == ChartKind::plane) return Rational(k);
    return bc.theta_over_pi() + Rational(2 * k);
  }
  double eigenvalue(long long k) const { return eigenvalue_exact(k).value(); }

  double norm() const {
    double s = 0;
    for (const auto& c : coeff) s += std::norm(c);
    return std::sqrt(s);
  }
};

/// Separable radial factor f(r) on its own grid; carried through angular
/// operations untouched and used only for measure-weighted norms.
struct RadialProfile {
  std::vector<double> r;
  std::vector<Complex> f;

  // integral of |f|^2 r dr by the trapezoid rule
  double norm_sq() const {
    double s = 0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      const double fa = std::norm(f[i]) * r[i];
      const double fb = std::norm(f[i + 1]) * r[i + 1];
      s += 0.5 * (fa + fb) * (r[i + 1] - r[i]);
    }
    return s;
  }
};

/// Pointwise samples on a chart grid, optionally tensored with a radial
/// profile. The cone chart carries the measure 2 d^2r, the plane d^2r.
struct SampledWaveFunction {
  ChartGrid grid;
  std::vector<Complex> values;
  std::optional<RadialProfile> radial;

  double measure_factor() const { return grid.kind == ChartKind::cone ? 2.0 : 1.0; }

  double angular_norm_sq() const {
    double s = 0;
    for (const auto& v : values) s += std::norm(v);
    return s * grid.step();
  }

  double norm_sq() const {
    const double rad = radial ? radial->norm_sq() : 1.0;
    return measure_factor() * rad * angular_norm_sq();
  }

  double sup_norm() const {
    double s = 0;
    for (const auto& v : values) s = std::max(s, std::abs(v));
    return s;
  }
};

inline double sup_distance(const SampledWaveFunction& a, const SampledWaveFunction& b) {
  if (a.grid != b.grid) throw GridMismatch("sup_distance: incompatible grids");
  double s = 0;
  for (std::size_t j = 0; j < a.values.size(); ++j) s = std::max(s, std::abs(a.values[j] - b.values[j]));
  return s;
}

/// CSV serialization: one "angle,re,im" row per sample, 17 significant
/// digits, so values round-trip bit-exactly.
inline void write_csv(const SampledWaveFunction& psi, std::ostream& out) {
  char buf[128];
  for (int j = 0; j < psi.grid.size; ++j) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", psi.grid.angle(j),
                  psi.values[j].real(), psi.values[j].imag());
    out << buf;
  }
}

inline SampledWaveFunction read_sampled_csv(std::istream& in, ChartKind kind) {
  SampledWaveFunction psi;
  std::string line;
  std::vector<double> angles;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    double angle = 0, re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &angle, &re, &im) != 3)
      throw GridMismatch("malformed wave-function CSV row: " + line);
    angles.push_back(angle);
    psi.values.emplace_back(re, im);
  }
  psi.grid = ChartGrid{kind, int(psi.values.size())};
  for (int j = 0; j < psi.grid.size; ++j)
    if (std::abs(angles[j] - psi.grid.angle(j)) > 1e-9)
      throw GridMismatch("CSV angles do not form the chart's midpoint grid");
  return psi;
}

namespace detail {
// base exponent of mode k_min at angle phi and the constant ratio between
// consecutive modes; both charts have eigenvalues mu_min + 2j on the cone
// and k_min + j on the plane.
inline void mode_ladder(const AngularWaveFunction& w, double phi, Complex& base, Complex& ratio) {
  if (w.domain == ChartKind::plane) {
    base = std::polar(1.0, -double(w.order) * phi);
    ratio = std::polar(1.0, phi);
  } else {
    base = std::polar(1.0, (w.bc.theta_over_pi().value() - 2.0 * w.order) * phi);
    ratio = std::polar(1.0, 2.0 * phi);
  }
}
inline double mode_normalization(ChartKind kind) {
  return kind == ChartKind::plane ? 1.0 / std::sqrt(2 * std::numbers::pi)
                                  : 1.0 / std::sqrt(std::numbers::pi);
}
}  // namespace detail

/// Analysis onto the order-M eigenmode basis. Exact on band-limited data
/// when the grid has at least 2M + 2 points.
inline AngularWaveFunction to_modes(const SampledWaveFunction& psi, int M, const ExtensionBC& bc = {}) {
  if (psi.grid.size < 2 * M + 2)
    throw GridMismatch("grid size " + std::to_string(psi.grid.size) +
                       " is below the alias-free bound " + std::to_string(2 * M + 2));
  AngularWaveFunction w;
  w.domain = psi.grid.kind;
  w.bc = bc;
  w.order = M;
  w.coeff.assign(2 * M + 1, Complex(0));
  const double h = psi.grid.step();
  const double unit = detail::mode_normalization(w.domain);
  for (int j = 0; j < psi.grid.size; ++j) {
    Complex base, ratio;
    detail::mode_ladder(w, psi.grid.angle(j), base, ratio);
    Complex phase = std::conj(base);
    const Complex r = std::conj(ratio);
    const Complex v = psi.values[j] * (h * unit);
    for (int i = 0; i < 2 * M + 1; ++i) {
      w.coeff[i] += v * phase;
      phase *= r;
    }
  }
  return w;
}

/// Synthesis back to pointwise samples.
inline SampledWaveFunction from_modes(const AngularWaveFunction& w, int grid_size) {
  if (grid_size < 2 * w.order + 2)
    throw GridMismatch("grid size " + std::to_string(grid_size) +
                       " is below the alias-free bound " + std::to_string(2 * w.order + 2));
  SampledWaveFunction psi;
  psi.grid = ChartGrid{w.domain, grid_size};
  psi.values.assign(grid_size, Complex(0));
  const double unit = detail::mode_normalization(w.domain);
  for (int j = 0; j < grid_size; ++j) {
    Complex base, ratio;
    detail::mode_ladder(w, psi.grid.angle(j), base, ratio);
    Complex phase = base;
    Complex acc(0);
    for (int i = 0; i < 2 * w.order + 1; ++i) {
      acc += w.coeff[i] * phase;
      phase *= ratio;
    }
    psi.values[j] = acc * unit;
  }
  return psi;
}

// ---------------------------------------------------------------------------
// Rotation flows
// ---------------------------------------------------------------------------

/// e^{-i angle * generator} in the eigenmode representation: coefficient k
/// picks up e^{-i angle * eigenvalue(k)}. Exactly norm preserving.
inline AngularWaveFunction rotate_spectral(const AngularWaveFunction& w, double angle) {
  AngularWaveFunction out = w;
  for (int i = 0; i < 2 * w.order + 1; ++i) {
    const long long k = i - w.order;
    out.coeff[i] *= std::polar(1.0, -angle * w.eigenvalue(k));
  }
  return out;
}

namespace detail {
/// Pointwise transport by `shift` along the chart angle, applying
/// `seam_phase` once per boundary crossing. The shift must land on the
/// sample grid; midpoint grids make that an integer index offset.
inline SampledWaveFunction transport_samples(const SampledWaveFunction& psi, double shift,
                                             const ExactPhase& seam_phase) {
  const int n = psi.grid.size;
  const double h = psi.grid.step();
  const double steps = shift / h;
  const long long m = std::llround(steps);
  if (std::abs(steps - double(m)) > 1e-9)
    throw GridMismatch("transport angle is not a multiple of the grid step");
  SampledWaveFunction out = psi;
  for (int j = 0; j < n; ++j) {
    const long long raw = j - m;
    long long jj = raw % n;
    if (jj < 0) jj += n;
    const long long wraps = (raw - jj) / n;  // negative period wraps
    const Complex factor = seam_phase.pow(wraps).value();
    out.values[j] = factor * psi.values[jj];
  }
  return out;
}
}  // namespace detail

/// e^{-i angle * ell(theta)} evaluated pointwise on the cone chart: samples
/// move along phi -> phi - angle and accrue the boundary phase e^{i theta}
/// per crossing of the identified boundary.
inline SampledWaveFunction rotate_transport(const SampledWaveFunction& psi, double angle,
                                            const ExtensionBC& bc) {
  if (psi.grid.kind != ChartKind::cone)
    throw GridMismatch("rotate_transport expects cone-chart samples");
  if (!bc.involutive())
    throw NotInvolutive("rotate_transport requires theta in {0, pi}, got theta/pi = " +
                        bc.theta_over_pi().str());
  return detail::transport_samples(psi, angle, bc.boundary_phase());
}

/// e^{-i angle * 2L} on the slit-plane chart: transport by 2*angle with
/// periodic wrapping.
inline SampledWaveFunction rotate_transport_plane_doubled(const SampledWaveFunction& psi,
                                                          double angle) {
  if (psi.grid.kind != ChartKind::plane)
    throw GridMismatch("plane transport expects plane-chart samples");
  return detail::transport_samples(psi, 2 * angle, ExactPhase::one());
}

}  // namespace spinstat
