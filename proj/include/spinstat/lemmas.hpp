#pragma once

#include "spinstat/phase.hpp"

namespace spinstat {

struct ConditionTriple {
  bool c1 = false;
  bool c2 = false;
  bool c3 = false;
  constexpr int count() const { return int(c1) + int(c2) + int(c3); }
  friend constexpr bool operator==(const ConditionTriple&, const ConditionTriple&) = default;
};

/// "Any two of the three conditions imply the third": a triple obeys the law
/// iff it never has exactly two true entries.
constexpr bool two_imply_third(const ConditionTriple& t) { return t.count() != 2; }

namespace detail {
// lambda - 2*sigma when it is an integer; parity tests below guard with is_integer().
constexpr Rational lambda_minus_two_sigma(const OffsetLambda& lambda, SpinLabel sigma) {
  return lambda.value - Rational(sigma.twice_spin);
}
constexpr bool is_even_integer(const Rational& r) {
  return r.is_integer() && r.num() % 2 == 0;
}
constexpr bool is_odd_integer(const Rational& r) {
  return r.is_integer() && r.num() % 2 != 0;
}
}  // namespace detail

/// Two-dimensional triple:
///   c1: kappa = R e^{i pi lambda} equals e^{2 pi i sigma}
///   c2: lambda lies in 2 sigma + 2Z
///   c3: R = +1
constexpr ConditionTriple planar_condition_triple(const OffsetLambda& lambda, SpinLabel sigma,
                                            InvolutionSign R) {
  ConditionTriple t;
  t.c1 = statistics_phase_2d(lambda, R) == spin_exchange_phase(sigma);
  t.c2 = detail::is_even_integer(detail::lambda_minus_two_sigma(lambda, sigma));
  t.c3 = R.sign() == +1;
  return t;
}

/// Three-dimensional triple for the parity sector H+ or H-. With
/// kappa = s e^{i pi lambda} and the sector-restricted scalars
/// R_z|H± = ±s, P_z|H± = ±1:
///   sector +:  c1: kappa =  e^{2 pi i sigma};  c2: lambda - 2 sigma even;
///              c3: R_z|H+ = P_z|H+ (= +1)
///   sector -:  c1: kappa = -e^{2 pi i sigma};  c2: lambda - 2 sigma odd;
///              c3: R_z|H- = P_z|H- (= -1)
/// Both restriction conditions amount to s = +1, i.e. R_z = P_z.
constexpr ConditionTriple sector_condition_triple(const OffsetLambda& lambda, SpinLabel sigma,
                                            InvolutionSign s, SectorLabel sector) {
  const ExactPhase kappa = statistics_phase_3d(lambda, s);  // rejects non-integer lambda
  const Rational diff = detail::lambda_minus_two_sigma(lambda, sigma);
  ConditionTriple t;
  if (sector.sign() == +1) {
    t.c1 = kappa == spin_exchange_phase(sigma);
    t.c2 = detail::is_even_integer(diff);
  } else {
    t.c1 = kappa == spin_exchange_phase(sigma).negated();
    t.c2 = detail::is_odd_integer(diff);
  }
  t.c3 = s.sign() * sector.sign() == sector.sign();
  return t;
}

/// Phases of an n-particle rotation about the center of mass: kappa^{n(n-1)}
/// for the relative motion, kappa^n for the center of mass, kappa^{n^2} in
/// total.
struct BraidPhases {
  ExactPhase relative;
  ExactPhase cm;
  ExactPhase total;
};

constexpr BraidPhases braid_phases(long long n, const ExactPhase& kappa) {
  if (n < 1) throw std::invalid_argument("braid phase bookkeeping requires n >= 1");
  return BraidPhases{kappa.pow(n * (n - 1)), kappa.pow(n), kappa.pow(n * n)};
}

/// Arithmetic form of the two-dimensional equivalence criterion:
/// lambda - 2 sigma is an integer and (-1)^{lambda - 2 sigma} = R.
constexpr bool planar_equivalence_criterion(const OffsetLambda& lambda, SpinLabel sigma,
                                             InvolutionSign R) {
  const Rational diff = detail::lambda_minus_two_sigma(lambda, sigma);
  if (!diff.is_integer()) return false;
  const int parity_sign = diff.num() % 2 == 0 ? +1 : -1;
  return parity_sign == R.sign();
}

}  // namespace spinstat
