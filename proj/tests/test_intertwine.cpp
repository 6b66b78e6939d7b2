#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "spinstat/intertwine.hpp"

using namespace spinstat;

namespace {
const ExtensionBC kPeriodic{Rational(0)};
const ExtensionBC kAntiperiodic{Rational(1)};

SampledWaveFunction plane_mode(int m, int n) {
  SampledWaveFunction psi;
  psi.grid = ChartGrid{ChartKind::plane, n};
  psi.values.resize(n);
  const double unit = 1.0 / std::sqrt(2 * std::numbers::pi);
  for (int j = 0; j < n; ++j) psi.values[j] = unit * std::polar(1.0, m * psi.grid.angle(j));
  return psi;
}

RadialProfile gaussian_radial() {
  RadialProfile radial;
  for (int i = 0; i <= 80; ++i) {
    const double r = 6.0 * i / 80.0;
    radial.r.push_back(r);
    radial.f.push_back(std::exp(-r * r / 2.0));
  }
  return radial;
}
}  // namespace

TEST_CASE("angle doubling maps plane modes onto extension modes", "[intertwine]") {
  const int n = 128;

  // nu = 0 on an angle-independent profile: values carry over unchanged
  SampledWaveFunction flat;
  flat.grid = ChartGrid{ChartKind::plane, n};
  flat.values.assign(n, Complex(0.7, -0.2));
  const auto flat_out = apply_U(IntertwinerSpec{0, 2}, flat);
  CHECK(flat_out.grid.kind == ChartKind::cone);
  for (int j = 0; j < n; ++j) CHECK(flat_out.values[j] == flat.values[j]);

  // nu = 0: mode m lands on cone frequency 2m
  for (int m : {-3, 1, 4}) {
    const auto out = apply_U(IntertwinerSpec{0, 2}, plane_mode(m, n));
    const double unit = 1.0 / std::sqrt(2 * std::numbers::pi);
    for (int j = 0; j < n; ++j) {
      const Complex expected = unit * std::polar(1.0, 2.0 * m * out.grid.angle(j));
      CHECK(std::abs(out.values[j] - expected) < 1e-14);
    }
  }

  // nu = 1: mode m lands on cone frequency 2m - 1
  const auto out = apply_U(IntertwinerSpec{1, 2}, plane_mode(2, n));
  const double unit = 1.0 / std::sqrt(2 * std::numbers::pi);
  for (int j = 0; j < n; ++j) {
    const Complex expected = unit * std::polar(1.0, 3.0 * out.grid.angle(j));
    CHECK(std::abs(out.values[j] - expected) < 1e-14);
  }

  // adjoint inverts the map
  const auto round = apply_U_adjoint(IntertwinerSpec{1, 2}, out);
  const auto original = plane_mode(2, n);
  CHECK(sup_distance(round, original) < 1e-14);

  SampledWaveFunction wrong;
  wrong.grid = ChartGrid{ChartKind::cone, n};
  wrong.values.assign(n, Complex(1.0));
  CHECK_THROWS_AS(apply_U(IntertwinerSpec{0, 2}, wrong), GridMismatch);
  CHECK_THROWS_AS(apply_U_adjoint(IntertwinerSpec{0, 2}, flat), GridMismatch);
}

TEST_CASE("mode-level intertwining: U* ell U + nu acts as 2L", "[intertwine]") {
  // admissible pairs place the image exactly in the extension eigenbasis
  const int n = 128, M = 12;
  for (const auto& [nu, bc] : std::vector<std::pair<long long, ExtensionBC>>{
           {0, kPeriodic}, {2, kPeriodic}, {1, kAntiperiodic}, {-3, kAntiperiodic}}) {
    for (int m : {-2, 0, 3}) {
      const auto image = apply_U(IntertwinerSpec{nu, 2}, plane_mode(m, n));
      const auto modes = to_modes(image, M, bc);
      // the image concentrates on the single extension eigenvalue 2m - nu;
      // its coefficient is 1/sqrt(2) in the plain-measure mode basis, so the
      // doubled-measure norm stays 1
      const Rational mu = Rational(2 * m - nu);
      bool found = false;
      double total = 0;
      for (int i = 0; i < 2 * M + 1; ++i) {
        const double mag = std::abs(modes.coeff[i]);
        total += mag * mag;
        if (modes.eigenvalue_exact(i - M) == mu) {
          found = true;
          CHECK(mag == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
        } else {
          CHECK(mag < 1e-12);
        }
      }
      CHECK(found);
      CHECK(2.0 * total == Catch::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("doubling unitary preserves the doubled-measure norm", "[intertwine]") {
  // the factor 2 in the cone measure exactly offsets the angle substitution
  auto states = make_test_states(ChartKind::plane, 20, 16, 256, 99);
  states[0].radial = gaussian_radial();
  states[5].radial = gaussian_radial();
  CHECK(unitarity_residual(IntertwinerSpec{0, 2}, states) <= 1e-12);
  CHECK(unitarity_residual(IntertwinerSpec{3, 2}, states) <= 1e-12);

  SampledWaveFunction zero;
  zero.grid = ChartGrid{ChartKind::plane, 64};
  zero.values.assign(64, Complex(0));
  CHECK(unitarity_residual(IntertwinerSpec{0, 2}, {zero}) == 0.0);

  const auto single = plane_mode(3, 256);
  CHECK(unitarity_residual(IntertwinerSpec{1, 2}, {single}) <= 1e-12);
}

TEST_CASE("intertwining residual splits along admissibility", "[intertwine]") {
  const auto states = make_test_states(ChartKind::plane, 6, 16, 256, 4242);
  const auto angles = flow_angles(16);

  for (const auto& [nu, bc] : std::vector<std::pair<long long, ExtensionBC>>{
           {0, kPeriodic}, {1, kAntiperiodic}, {-2, kPeriodic}, {3, kAntiperiodic}}) {
    const auto result = intertwining_residual(IntertwinerSpec{nu, 2}, bc, states, angles);
    CHECK(result.admissible);
    CHECK(result.residual <= 1e-9);
  }
  for (const auto& [nu, bc] : std::vector<std::pair<long long, ExtensionBC>>{
           {0, kAntiperiodic}, {1, kPeriodic}, {-2, kAntiperiodic}}) {
    const auto result = intertwining_residual(IntertwinerSpec{nu, 2}, bc, states, angles);
    CHECK_FALSE(result.admissible);
    CHECK(result.residual > 0.1);
  }
  CHECK_THROWS_AS(intertwining_residual(IntertwinerSpec{0, 2}, ExtensionBC{Rational(1, 2)}, states,
                                        angles),
                  NotInvolutive);
}

TEST_CASE("spectral windows compare on their overlap", "[intertwine]") {
  CHECK(spectral_equivalence(cone_spectrum(kPeriodic, 1), cone_spectrum(kPeriodic, 1)));

  // same lattice, windows offset by a full lattice step: still equivalent
  const auto a = total_j_spectrum(kPeriodic, OffsetLambda{Rational(2)}, 6);
  const auto b = affine(plane_spectrum(6), Rational(2), Rational(0), "2L");
  CHECK(spectral_equivalence(a, b));

  // odd versus even lattices are disjoint
  const auto odd = total_j_spectrum(kAntiperiodic, OffsetLambda{Rational(0)}, 6);
  CHECK_FALSE(spectral_equivalence(odd, b));

  // quarter shifts never match
  const auto quarter = total_j_spectrum(kPeriodic, OffsetLambda{Rational(1, 4)}, 6);
  CHECK_FALSE(spectral_equivalence(quarter, b));

  // j for (theta = 0, lambda = 1) and 2(L + 1/2) are both the odd integers
  const auto j = total_j_spectrum(kPeriodic, OffsetLambda{Rational(1)}, 6);
  const auto target = affine(plane_spectrum(6), Rational(2), Rational(1), "2(L+sigma)");
  CHECK(spectral_equivalence(j, target));

  const auto far = affine(plane_spectrum(2), Rational(1), Rational(100), "shifted");
  CHECK_THROWS_AS(spectral_equivalence(plane_spectrum(2), far), EmptyOverlap);
}

TEST_CASE("two-dimensional verdicts match the exact criterion", "[intertwine]") {
  ResidualOptions opts;
  opts.states = 3;
  opts.order = 8;
  opts.grid = 128;
  opts.angles = 8;

  const auto identity = planar_equivalence_verdict(SpinLabel{0}, OffsetLambda{Rational(0)}, kPeriodic, 8, opts);
  CHECK(identity.verdicts.at("ssc"));
  CHECK(identity.verdicts.at("equiv"));
  CHECK(identity.verdicts.at("agreement"));
  CHECK(identity.params.at("nu").get<long long>() == 0);
  CHECK(identity.residuals.at("intertwining") <= 1e-9);
  CHECK(identity.verdicts.at("intertwiner_admissible"));
  CHECK(identity.spectra.size() == 2);  // evidence travels with the verdict

  const auto half =
      planar_equivalence_verdict(SpinLabel{1}, OffsetLambda{Rational(1)}, kPeriodic, 8, opts);
  CHECK(half.verdicts.at("ssc"));
  CHECK(half.verdicts.at("equiv"));
  CHECK(half.params.at("kappa").get<std::string>() == "-1");

  const auto broken =
      planar_equivalence_verdict(SpinLabel{0}, OffsetLambda{Rational(1)}, kPeriodic, 8, opts);
  CHECK_FALSE(broken.verdicts.at("ssc"));
  CHECK_FALSE(broken.verdicts.at("equiv"));
  CHECK(broken.verdicts.at("agreement"));
  CHECK(broken.residuals.empty());

  CHECK_THROWS_AS(
      planar_equivalence_verdict(SpinLabel{0}, OffsetLambda{Rational(0)}, ExtensionBC{Rational(1, 2)}, 8),
      NotInvolutive);
}

TEST_CASE("agreement holds across the parameter grid", "[intertwine][property]") {
  ResidualOptions off;
  off.enabled = false;
  for (int k = -16; k <= 16; ++k)
    for (long long j = -4; j <= 4; ++j)
      for (const ExtensionBC& bc : {kPeriodic, kAntiperiodic}) {
        const auto rep =
            planar_equivalence_verdict(SpinLabel{j}, OffsetLambda{Rational(k, 4)}, bc, 8, off);
        CHECK(rep.verdicts.at("agreement"));
        const Rational diff = Rational(k, 4) - Rational(j);
        if (!diff.is_integer()) {
          CHECK_FALSE(rep.verdicts.at("ssc"));
          CHECK_FALSE(rep.verdicts.at("equiv"));
        }
      }
}
