#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dephasure/bathmodel.hpp"
#include "dephasure/constants.hpp"
#include "dephasure/exactsum.hpp"

using namespace dephasure;

namespace {

const double kPi = constants::pi;

ModeBath single_mode(double omega, double lambda) {
  ModeBath b;
  b.omega = {omega};
  b.lambda = {lambda};
  return b;
}

// generic ohmic bath with exponential cutoff, dimensionless-style scales
ModeBath generic_bath() {
  bath::SpectralModel m;
  m.s = 1;
  m.coupling_c = 1.0;
  m.omega_1 = 1e-3;
  m.omega_u = 1.0;
  m.cutoff_shape = bath::CutoffShape::Exponential;
  return bath::discretize(m, 40.0);
}

FockDensityMatrix random_state(int dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = {gauss(rng), gauss(rng)};
  }
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint().eval());  // scrub rounding asymmetry
  return FockDensityMatrix(rho);
}

}  // namespace

TEST_CASE("diagonal pairs have a vanishing exponent") {
  const auto bath = generic_bath();
  const CavityParams cav{1.0};
  const auto th = ThermalParams::from_beta_hbar(10.0);
  const auto e = exponent_discrete(bath, cav, th, 3, 3, 17.0);
  CHECK(e.free_phase == 0.0);
  CHECK(e.kerr_phase == 0.0);
  CHECK(e.osc_phase == 0.0);
  CHECK(e.dephase == 0.0);
}

TEST_CASE("single mode at omega t = 2 pi rephases exactly") {
  const auto bath = single_mode(2.0, 0.05);
  const CavityParams cav{1.0};
  const auto th = ThermalParams::from_beta_hbar(1.0);
  const double t = 2.0 * kPi / 2.0;
  const auto e = exponent_discrete(bath, cav, th, 1, 0, t);
  // scale set by the coefficient (Omega lambda / omega)^2 coth(...)
  const double scale = std::pow(0.05 / 2.0, 2) * 10.0;
  CHECK(std::abs(e.dephase) < 1e-25 * scale);
  CHECK(std::abs(e.osc_phase) < 1e-12 * scale);
}

TEST_CASE("harmonic bath is periodic with period 2 pi / omega_1") {
  const auto bath = generic_bath();  // omega_i = i * 1e-3
  const CavityParams cav{1.0};
  const auto th = ThermalParams::from_beta_hbar(10.0);
  const double period = 2.0 * kPi / 1e-3;

  double max_deph = 0.0;
  for (int i = 1; i <= 16; ++i) {
    const auto e = exponent_discrete(bath, cav, th, 1, 0, period * i / 16.0);
    max_deph = std::max(max_deph, std::abs(e.dephase));
  }
  for (double t : {0.07 * period, 0.31 * period, 0.62 * period}) {
    const auto e0 = exponent_discrete(bath, cav, th, 1, 0, t);
    const auto e1 = exponent_discrete(bath, cav, th, 1, 0, t + period);
    CHECK(std::abs(e1.dephase - e0.dephase) <= 1e-10 * max_deph);
    CHECK(std::abs(e1.osc_phase - e0.osc_phase) <= 1e-10 * max_deph);
  }
  // full rephasing at the period itself
  const auto ep = exponent_discrete(bath, cav, th, 1, 0, period);
  CHECK(std::abs(ep.dephase) <= 1e-10 * max_deph);
}

TEST_CASE("dephase scales exactly as (n - n')^2 and is symmetric") {
  const auto bath = generic_bath();
  const CavityParams cav{1.0};
  const auto th = ThermalParams::from_beta_hbar(10.0);
  const double t = 35.0;
  const auto e01 = exponent_discrete(bath, cav, th, 0, 1, t);
  const auto e10 = exponent_discrete(bath, cav, th, 1, 0, t);
  const auto e02 = exponent_discrete(bath, cav, th, 0, 2, t);
  CHECK(e01.dephase == e10.dephase);
  CHECK(e02.dephase == doctest::Approx(4.0 * e01.dephase).epsilon(1e-12));
  CHECK(e01.dephase <= 0.0);
  CHECK(e01.dephase < 0.0);
}

TEST_CASE("kerr and oscillatory phases cancel at short times") {
  const auto bath = generic_bath();
  const CavityParams cav{1.0};
  const auto th = ThermalParams::from_beta_hbar(10.0);
  const double t = 1e-4;  // omega_u t = 1e-4
  const auto e = exponent_discrete(bath, cav, th, 1, 0, t);
  CHECK(std::abs(e.kerr_phase + e.osc_phase) / std::abs(e.kerr_phase) < 1e-3);
}

TEST_CASE("negative time is rejected") {
  const auto bath = single_mode(1.0, 0.1);
  const CavityParams cav{1.0};
  const auto th = ThermalParams::from_beta_hbar(1.0);
  CHECK_THROWS_AS(exponent_discrete(bath, cav, th, 1, 0, -1.0), std::domain_error);
}

TEST_CASE("kerr constant") {
  const CavityParams cav{1.0};
  SUBCASE("uncoupled bath gives zero") {
    const auto bath = single_mode(2.0, 0.0);
    CHECK(kerr_constant_discrete(bath, cav) == 0.0);
  }
  SUBCASE("single mode") {
    const auto bath = single_mode(2.0, 0.1);
    CHECK(kerr_constant_discrete(bath, cav) == doctest::Approx(-0.005).epsilon(1e-14));
  }
  SUBCASE("matches the frequency renormalization sum of the exponent") {
    const auto bath = generic_bath();
    const auto th = ThermalParams::from_beta_hbar(10.0);
    const auto e = exponent_discrete(bath, cav, th, 1, 0, 2.0);
    // kerr_phase = t (n+n'+1)(n-n') sum = -t (n+n'+1)(n-n') Lambda_kerr
    CHECK(e.kerr_phase ==
          doctest::Approx(-2.0 * 2.0 * kerr_constant_discrete(bath, cav)).epsilon(1e-12));
  }
}

TEST_CASE("density matrix evolution") {
  const auto bath = generic_bath();
  const CavityParams cav{1.0};
  const auto th = ThermalParams::from_beta_hbar(10.0);

  SUBCASE("diagonal states are stationary") {
    const auto rho0 = FockDensityMatrix::diagonal({0.2, 0.5, 0.3});
    for (double t : {0.0, 3.0, 300.0}) {
      const auto rho = evolve_density_matrix(rho0, bath, cav, th, t);
      CHECK((rho.entries() - rho0.entries()).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  SUBCASE("superposition coherence decays as exp(dephase)") {
    const auto rho0 = FockDensityMatrix::equal_superposition(2, 0, 1);
    const double t = 20.0;
    const auto rho = evolve_density_matrix(rho0, bath, cav, th, t);
    const auto e = exponent_discrete(bath, cav, th, 0, 1, t);
    CHECK(coherence_magnitude(rho, 0, 1) ==
          doctest::Approx(0.5 * std::exp(e.dephase)).epsilon(1e-12));
    CHECK(coherence_magnitude(rho0, 0, 1) == doctest::Approx(0.5));
  }

  SUBCASE("t = 0 is the identity map") {
    const auto rho0 = random_state(5, 17);
    const auto rho = evolve_density_matrix(rho0, bath, cav, th, 0.0);
    CHECK((rho.entries() - rho0.entries()).cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("trace, Hermiticity, positivity and diagonal invariance hold") {
    for (unsigned seed : {1u, 2u, 3u}) {
      const auto rho0 = random_state(6, seed);
      for (double t : {0.5, 80.0, 4000.0}) {
        const auto sums = bath_sums(bath, cav, th, t);
        const auto rho = evolve_from_sums(rho0, sums, cav, t);
        CHECK(std::abs(rho.trace_real() - 1.0) < 1e-12);
        CHECK(rho.hermiticity_defect() < 1e-12);
        CHECK(rho.min_eigenvalue() > -1e-10);
        for (int i = 0; i < 6; ++i) {
          CHECK(std::abs(rho.entry(i, i) - rho0.entry(i, i)) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("coherence magnitude guards its indices") {
  const auto rho = FockDensityMatrix::diagonal({1.0, 0.0});
  CHECK(coherence_magnitude(rho, 0, 1) == 0.0);
  CHECK_THROWS_AS(coherence_magnitude(rho, 0, 2), std::out_of_range);
}

TEST_CASE("mode bath validation") {
  ModeBath b;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  b.omega = {1.0, 0.5};
  b.lambda = {0.1, 0.1};
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);  // not ascending
  b.omega = {0.5, 1.0};
  CHECK_NOTHROW(b.validate());
}

TEST_CASE("thermal params derive beta hbar from temperature") {
  const auto th = ThermalParams::from_temperature(0.05);
  CHECK(th.beta_hbar ==
        doctest::Approx(constants::hbar / (constants::boltzmann * 0.05)).epsilon(1e-15));
  const auto th2 = ThermalParams::from_beta_hbar(th.beta_hbar);
  CHECK(th2.temperature == doctest::Approx(0.05).epsilon(1e-14));
}
