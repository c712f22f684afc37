#include <doctest.h>

#include <cmath>
#include <numbers>

#include "esfv/error.hpp"
#include "esfv/state.hpp"
#include "test_support.hpp"

using namespace esfv;
using esfv::testing::StateSampler;

namespace {
const GasModel kAir{1.4, 1.0};
}

TEST_CASE("primitive_to_conserved examples") {
  auto q = primitive_to_conserved({1.0, 0.75, 0.0, 1.0}, kAir);
  CHECK(q.rho == doctest::Approx(1.0));
  CHECK(q.mom_x == doctest::Approx(0.75));
  CHECK(q.mom_y == 0.0);
  CHECK(q.energy == doctest::Approx(2.78125).epsilon(1e-15));

  q = primitive_to_conserved({1.0, 0.0, 0.0, 1.0}, kAir);
  CHECK(q.energy == doctest::Approx(2.5).epsilon(1e-15));

  q = primitive_to_conserved({0.125, 0.0, 0.0, 0.1}, kAir);
  CHECK(q.energy == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("conserved_to_primitive examples and errors") {
  auto w = conserved_to_primitive({1.0, 0.75, 0.0, 2.78125}, kAir);
  CHECK(w.vel_x == doctest::Approx(0.75));
  CHECK(w.pressure == doctest::Approx(1.0).epsilon(1e-15));

  w = conserved_to_primitive({1.0, 0.0, 0.0, 2.5}, kAir);
  CHECK(w.pressure == doctest::Approx(1.0).epsilon(1e-15));

  // Low but positive pressure is not an error.
  w = conserved_to_primitive({1.0, 0.0, 0.0, 0.1}, kAir);
  CHECK(w.pressure == doctest::Approx(0.04).epsilon(1e-14));

  try {
    conserved_to_primitive({0.0, 0.0, 0.0, 1.0}, kAir);
    FAIL("expected NonPositiveDensity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveDensity);
  }
  try {
    conserved_to_primitive({1.0, 2.0, 0.0, 1.0}, kAir);  // kinetic energy 2 > E
    FAIL("expected NonPositivePressure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositivePressure);
  }
  // Below the admissibility floor counts as lost, not clipped.
  CHECK_THROWS_AS(conserved_to_primitive({1e-13, 0.0, 0.0, 1.0}, kAir), Error);
}

TEST_CASE("gas model validation") {
  CHECK_NOTHROW(kAir.validate());
  CHECK_THROWS_AS((GasModel{1.0, 1.0}.validate()), Error);
  CHECK_THROWS_AS((GasModel{1.4, 0.0}.validate()), Error);
}

TEST_CASE("sound speed and physical entropy") {
  CHECK(sound_speed({1.0, 0, 0, 1.0}, kAir) == doctest::Approx(std::sqrt(1.4)).epsilon(1e-15));
  CHECK(sound_speed({1.4, 0, 0, 1.0}, kAir) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sound_speed({0.125, 0, 0, 0.1}, kAir) == doctest::Approx(1.0583005244258363).epsilon(1e-14));

  CHECK(physical_entropy({1.0, 0, 0, 1.0}, kAir) == 0.0);
  const double s_right = std::log(0.1) - 1.4 * std::log(0.125);
  CHECK(physical_entropy({0.125, 0, 0, 0.1}, kAir) == doctest::Approx(0.6086330653577243).epsilon(1e-14));
  CHECK(physical_entropy({0.125, 0, 0, 0.1}, kAir) == doctest::Approx(s_right).epsilon(1e-15));
  CHECK(physical_entropy({std::numbers::e, 0, 0, 1.0}, kAir) == doctest::Approx(-1.4).epsilon(1e-15));

  // Depends on rho and p only.
  CHECK(physical_entropy({0.3, 5.0, -2.0, 0.7}, kAir) == physical_entropy({0.3, 0.0, 0.0, 0.7}, kAir));
}

TEST_CASE("entropy pair examples") {
  auto pair = entropy_pair(primitive_to_conserved({1.0, 0.75, 0.0, 1.0}, kAir), kAir);
  CHECK(pair.entropy == doctest::Approx(0.0));
  CHECK(pair.flux_x == doctest::Approx(0.0));

  pair = entropy_pair(primitive_to_conserved({0.125, 0.0, 0.0, 0.1}, kAir), kAir);
  CHECK(pair.entropy == doctest::Approx(-0.19019783292428885).epsilon(1e-13));

  pair = entropy_pair(primitive_to_conserved({1.0, 2.0, 0.0, std::exp(0.4)}, kAir), kAir);
  CHECK(pair.entropy == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(pair.flux_x == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(pair.flux_y == doctest::Approx(0.0));
}

TEST_CASE("entropy variables examples and inverse") {
  auto r = conserved_to_entropy_vars(primitive_to_conserved({1.0, 0.0, 0.0, 1.0}, kAir), kAir);
  CHECK(r.r1 == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(r.r2 == 0.0);
  CHECK(r.r3 == 0.0);
  CHECK(r.r4 == doctest::Approx(-1.0));

  r = conserved_to_entropy_vars(primitive_to_conserved({1.0, 0.75, 0.0, 1.0}, kAir), kAir);
  CHECK(r.r1 == doctest::Approx(3.21875).epsilon(1e-14));
  CHECK(r.r2 == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(r.r4 == doctest::Approx(-1.0));

  auto q = entropy_vars_to_conserved({3.5, 0.0, 0.0, -1.0}, kAir);
  CHECK(q.rho == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.energy == doctest::Approx(2.5).epsilon(1e-14));
  q = entropy_vars_to_conserved({3.21875, 0.75, 0.0, -1.0}, kAir);
  CHECK(q.rho == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.mom_x == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(q.energy == doctest::Approx(2.78125).epsilon(1e-14));

  try {
    entropy_vars_to_conserved({3.5, 0.0, 0.0, 1.0}, kAir);
    FAIL("expected InvalidEntropyState");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidEntropyState);
  }
}

TEST_CASE("entropy flux potential is the momentum") {
  auto psi = entropy_flux_potential(primitive_to_conserved({1.0, 0.75, 0.0, 1.0}, kAir));
  CHECK(psi.x == 0.75);
  CHECK(psi.y == 0.0);
  psi = entropy_flux_potential(primitive_to_conserved({1.0, 0.0, 0.0, 1.0}, kAir));
  CHECK(psi.x == 0.0);
  CHECK(psi.y == 0.0);
  psi = entropy_flux_potential(primitive_to_conserved({2.0, -1.0, 3.0, 5.0}, kAir));
  CHECK(psi.x == -2.0);
  CHECK(psi.y == 6.0);
}

TEST_CASE("property: conserved/primitive round trip") {
  StateSampler sampler(11);
  double worst = 0.0;
  for (int n = 0; n < 100000; ++n) {
    const Primitive w = sampler.draw(1e-3, 1e3, 10.0);
    const Conserved q = primitive_to_conserved(w, kAir);
    const Conserved q2 = primitive_to_conserved(conserved_to_primitive(q, kAir), kAir);
    const double scale = std::fmax(max_abs(q.as_vec()), 1e-300);
    worst = std::fmax(worst, max_abs(q2.as_vec() - q.as_vec()) / scale);
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("property: entropy variables are the gradient of U") {
  StateSampler sampler(12);
  for (int n = 0; n < 1000; ++n) {
    const Primitive w = sampler.draw(1e-2, 1e2, 3.0);
    const Conserved q = primitive_to_conserved(w, kAir);
    const Vec4 r = conserved_to_entropy_vars(q, kAir).as_vec();
    const Vec4 qv = q.as_vec();
    // Steps on the natural scales (rho, rho c, rho c, rho c^2), shrunk at high
    // Mach where a density step at fixed energy moves the pressure a lot.
    const double c = sound_speed(w, kAir);
    const double shrink = std::fmin(1.0, c * c / std::fmax(w.speed_squared(), 1e-300));
    const Vec4 natural{w.rho, w.rho * c, w.rho * c, w.rho * c * c};
    Vec4 fd{};
    auto central = [&](std::size_t k, double h) {
      Vec4 qp = qv, qm = qv;
      qp[k] += h;
      qm[k] -= h;
      return (entropy_pair(Conserved::from_vec(qp), kAir).entropy -
              entropy_pair(Conserved::from_vec(qm), kAir).entropy) /
             (2.0 * h);
    };
    for (std::size_t k = 0; k < 4; ++k) {
      // Richardson extrapolation of two central differences.
      const double h = 1e-3 * shrink * natural[k];
      fd[k] = (4.0 * central(k, 0.5 * h) - central(k, h)) / 3.0;
    }
    const double scale = std::fmax(max_abs(r), 1.0);
    REQUIRE(max_abs(fd - r) / scale <= 1e-5);
    CHECK(r[3] < 0.0);
  }
}

TEST_CASE("property: entropy variable inverse") {
  StateSampler sampler(13);
  for (int n = 0; n < 10000; ++n) {
    const Primitive w = sampler.draw(0.1, 10.0, 3.0);
    const Conserved q = primitive_to_conserved(w, kAir);
    const Conserved back = entropy_vars_to_conserved(conserved_to_entropy_vars(q, kAir), kAir);
    REQUIRE(max_abs(back.as_vec() - q.as_vec()) / max_abs(q.as_vec()) <= 1e-12);
  }
}

TEST_CASE("property: U is convex (finite-difference Hessian)") {
  StateSampler sampler(14);
  for (int n = 0; n < 100; ++n) {
    const Primitive w = sampler.draw(0.1, 10.0, 3.0);
    const Vec4 qv = primitive_to_conserved(w, kAir).as_vec();
    // Hessian of U = Jacobian of r(q); central differences of the gradient.
    Eigen::Matrix4d hess;
    for (int k = 0; k < 4; ++k) {
      const double h = 1e-6 * std::fmax(std::fabs(qv[static_cast<std::size_t>(k)]), 1e-3);
      Vec4 qp = qv, qm = qv;
      qp[static_cast<std::size_t>(k)] += h;
      qm[static_cast<std::size_t>(k)] -= h;
      const Vec4 d = (1.0 / (2.0 * h)) * (conserved_to_entropy_vars(Conserved::from_vec(qp), kAir).as_vec() -
                                          conserved_to_entropy_vars(Conserved::from_vec(qm), kAir).as_vec());
      for (int i = 0; i < 4; ++i) hess(i, k) = d[static_cast<std::size_t>(i)];
    }
    const Eigen::Matrix4d sym = 0.5 * (hess + hess.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(sym);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("analytic Jacobians agree with finite differences") {
  StateSampler sampler(15);
  for (int n = 0; n < 50; ++n) {
    const Primitive w = sampler.draw(0.1, 10.0, 3.0);
    const Mat4 dq_du = conserved_wrt_primitive(w, kAir);
    const Mat4 du_dq = primitive_wrt_conserved(w, kAir);
    const Mat4 id = dq_du * du_dq;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(id[i][j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));

    const Mat4 dr_du = entropy_vars_wrt_primitive(w, kAir);
    const Vec4 wv{w.rho, w.vel_x, w.vel_y, w.pressure};
    for (std::size_t k = 0; k < 4; ++k) {
      const double h = 1e-6 * std::fmax(std::fabs(wv[k]), 1e-2);
      Vec4 wp = wv, wm = wv;
      wp[k] += h;
      wm[k] -= h;
      const Vec4 d = (1.0 / (2.0 * h)) *
                     (primitive_to_entropy_vars({wp[0], wp[1], wp[2], wp[3]}, kAir).as_vec() -
                      primitive_to_entropy_vars({wm[0], wm[1], wm[2], wm[3]}, kAir).as_vec());
      for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::fabs(d[i] - dr_du[i][k]) <= 1e-6 * std::fmax(1.0, std::fabs(d[i])));
    }
  }
}
