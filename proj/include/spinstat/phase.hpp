#pragma once

#include <complex>
#include <numbers>
#include <string>

#include "spinstat/errors.hpp"
#include "spinstat/rational.hpp"

namespace spinstat {

/// Unit-modulus phase e^{i pi t} with t an exact rational, kept reduced
/// modulo 2 so the canonical exponent lies in [0, 2). Multiplication and
/// integer powers are exact fraction arithmetic.
class ExactPhase {
 public:
  constexpr ExactPhase() : exponent_(0) {}

  static constexpr ExactPhase from_exponent(const Rational& t) { return ExactPhase(mod(t, 2)); }
  static constexpr ExactPhase one() { return ExactPhase(Rational(0)); }
  static constexpr ExactPhase minus_one() { return ExactPhase(Rational(1)); }

  /// Exponent fraction t in [0, 2) of e^{i pi t}.
  constexpr const Rational& exponent() const { return exponent_; }

  friend constexpr ExactPhase operator*(const ExactPhase& a, const ExactPhase& b) {
    return from_exponent(a.exponent_ + b.exponent_);
  }

  constexpr ExactPhase pow(long long k) const {
    return from_exponent(exponent_ * Rational(k));
  }

  constexpr ExactPhase inverse() const { return from_exponent(-exponent_); }
  constexpr ExactPhase conj() const { return inverse(); }
  constexpr ExactPhase negated() const { return *this * minus_one(); }

  friend constexpr bool operator==(const ExactPhase& a, const ExactPhase& b) {
    return a.exponent_ == b.exponent_;
  }
  friend constexpr bool operator!=(const ExactPhase& a, const ExactPhase& b) { return !(a == b); }

  constexpr bool is_real() const { return exponent_ == Rational(0) || exponent_ == Rational(1); }

  /// +1 or -1; only defined for real phases.
  constexpr int real_sign() const {
    if (exponent_ == Rational(0)) return +1;
    if (exponent_ == Rational(1)) return -1;
    throw std::domain_error("phase e^{i pi " + exponent_.str() + "} is not real");
  }

  std::complex<double> value() const {
    return std::polar(1.0, std::numbers::pi * exponent_.value());
  }

  std::string str() const {
    if (exponent_ == Rational(0)) return "1";
    if (exponent_ == Rational(1)) return "-1";
    if (exponent_ == Rational(1, 2)) return "i";
    if (exponent_ == Rational(3, 2)) return "-i";
    return "e^{i*pi*" + exponent_.str() + "}";
  }

 private:
  explicit constexpr ExactPhase(Rational reduced) : exponent_(reduced) {}
  Rational exponent_;
};

/// Spin sigma in (1/2)Z, stored exactly as 2*sigma.
struct SpinLabel {
  long long twice_spin = 0;
  constexpr Rational sigma() const { return Rational(twice_spin, 2); }
  std::string str() const { return sigma().str(); }
};

/// Additive offset in the relative total angular momentum j = ell + lambda.
/// Any rational in two dimensions; three-dimensional operations insist on
/// an integer value.
struct OffsetLambda {
  Rational value;
  constexpr bool is_integer() const { return value.is_integer(); }
};

/// Sign of the rotation-by-pi involution: the scalar R in two dimensions,
/// or the scalar s with R_z = s P_z in three.
class InvolutionSign {
 public:
  explicit constexpr InvolutionSign(int sign) : sign_(sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("involution sign must be +1 or -1");
  }
  constexpr int sign() const { return sign_; }
  constexpr ExactPhase phase() const {
    return sign_ == 1 ? ExactPhase::one() : ExactPhase::minus_one();
  }

 private:
  int sign_;
};

/// P_z parity sector selecting H+ or H- in three dimensions.
class SectorLabel {
 public:
  explicit constexpr SectorLabel(int sign) : sign_(sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sector sign must be +1 or -1");
  }
  static constexpr SectorLabel plus() { return SectorLabel(+1); }
  static constexpr SectorLabel minus() { return SectorLabel(-1); }
  constexpr int sign() const { return sign_; }
  const char* str() const { return sign_ == 1 ? "+" : "-"; }

 private:
  int sign_;
};

/// e^{2 pi i sigma} as an exact phase.
constexpr ExactPhase spin_exchange_phase(SpinLabel sigma) {
  return ExactPhase::from_exponent(Rational(sigma.twice_spin));
}

/// kappa = R e^{i pi lambda} for the two-dimensional relative problem.
constexpr ExactPhase statistics_phase_2d(const OffsetLambda& lambda, InvolutionSign R) {
  return R.phase() * ExactPhase::from_exponent(lambda.value);
}

/// kappa = s e^{i pi lambda} in three dimensions; lambda must be an integer
/// and the result is always +1 or -1.
constexpr ExactPhase statistics_phase_3d(const OffsetLambda& lambda, InvolutionSign s) {
  if (!lambda.is_integer()) throw NonIntegerLambda();
  return s.phase() * ExactPhase::from_exponent(lambda.value);
}

/// Spin-statistics connection: e^{2 pi i sigma} == kappa, exactly.
constexpr bool ssc_holds(SpinLabel sigma, const ExactPhase& kappa) {
  return spin_exchange_phase(sigma) == kappa;
}

}  // namespace spinstat
