#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "cliffstab/grid.hpp"
#include "cliffstab/moebius.hpp"

using namespace cliffstab;

namespace {

constexpr double pi = std::numbers::pi;

template <std::size_t N>
double norm(const std::array<double, N>& v) {
  double acc = 0.0;
  for (double c : v) acc += c * c;
  return std::sqrt(acc);
}

template <std::size_t N>
std::array<double, N> random_unit(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<double, N> v{};
  for (auto& c : v) c = gauss(rng);
  const double len = norm<N>(v);
  for (auto& c : v) c /= len;
  return v;
}

}  // namespace

TEST_SUITE("moebius") {
  TEST_CASE("identity at a = 0") {
    std::mt19937 rng(71u);
    const MobiusParam<4> id{};
    for (int k = 0; k < 50; ++k) {
      const auto x = random_unit<4>(rng);
      const auto y = mobius_apply(id, x);
      for (std::size_t i = 0; i < 4; ++i) CHECK(y[i] == x[i]);
    }
  }

  TEST_CASE("worked example: half dilation toward e1 moves the equator") {
    const MobiusParam<4> m{{0.5, 0.0, 0.0, 0.0}};
    const auto y = mobius_apply(m, {0.0, 1.0, 0.0, 0.0});
    // Stereographic from -e1, plane scaled by (1-1/2)/(1+1/2) = 1/3,
    // mapped back: (1 - 1/9, 2/3, 0, 0)/(1 + 1/9) = (0.8, 0.6, 0, 0).
    CHECK(y[0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(y[2] == 0.0);
    CHECK(y[3] == 0.0);
  }

  TEST_CASE("unit sphere maps to itself") {
    std::mt19937 rng(72u);
    std::uniform_real_distribution<double> radius(0.0, 0.95);
    for (int k = 0; k < 100; ++k) {
      auto a = random_unit<4>(rng);
      const double s = radius(rng);
      for (auto& c : a) c *= s;
      const auto y = mobius_apply(MobiusParam<4>{a}, random_unit<4>(rng));
      CHECK(std::abs(norm<4>(y) - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("opposite parameter inverts the map") {
    std::mt19937 rng(73u);
    std::uniform_real_distribution<double> radius(0.0, 0.9);
    for (int k = 0; k < 100; ++k) {
      auto a = random_unit<4>(rng);
      const double s = radius(rng);
      for (auto& c : a) c *= s;
      MobiusParam<4> fwd{a};
      MobiusParam<4> bwd{a};
      for (auto& c : bwd.a) c = -c;
      const auto x = random_unit<4>(rng);
      const auto back = mobius_apply(bwd, mobius_apply(fwd, x));
      for (std::size_t i = 0; i < 4; ++i)
        CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-11));
    }
  }

  TEST_CASE("poles are fixed, antipode guard returns the antipode") {
    const MobiusParam<4> m{{0.0, 0.6, 0.0, 0.0}};
    const auto fixed_pole = mobius_apply(m, {0.0, 1.0, 0.0, 0.0});
    CHECK(fixed_pole[1] == doctest::Approx(1.0).epsilon(1e-14));
    const auto anti = mobius_apply(m, {0.0, -1.0, 0.0, 0.0});
    CHECK(anti[1] == doctest::Approx(-1.0).epsilon(1e-14));
    // A hair off the antipode must not blow up.
    const auto near = mobius_apply(m, {0.0, -1.0 + 1e-16, 0.0, 0.0});
    CHECK(std::isfinite(near[0]));
    CHECK(std::abs(norm<4>(near) - 1.0) <= 1e-12);
  }

  TEST_CASE("conformality of the differential") {
    // Finite-difference pushforward of two orthonormal tangent vectors:
    // equal stretch, preserved orthogonality.
    std::mt19937 rng(74u);
    const double h = 1e-5;
    for (int k = 0; k < 25; ++k) {
      auto a = random_unit<4>(rng);
      for (auto& c : a) c *= 0.7;
      const MobiusParam<4> m{a};
      const auto x = random_unit<4>(rng);
      // Orthonormal frame at x by Gram-Schmidt of random vectors.
      auto u = random_unit<4>(rng);
      auto v = random_unit<4>(rng);
      const auto project = [&](std::array<double, 4>& w,
                               const std::array<double, 4>& onto) {
        double d = 0.0;
        for (std::size_t i = 0; i < 4; ++i) d += w[i] * onto[i];
        for (std::size_t i = 0; i < 4; ++i) w[i] -= d * onto[i];
      };
      project(u, x);
      double lu = norm<4>(u);
      for (auto& c : u) c /= lu;
      project(v, x);
      project(v, u);
      double lv = norm<4>(v);
      for (auto& c : v) c /= lv;

      const auto push = [&](const std::array<double, 4>& dir) {
        std::array<double, 4> xp = x;
        std::array<double, 4> xm = x;
        for (std::size_t i = 0; i < 4; ++i) {
          xp[i] += h * dir[i];
          xm[i] -= h * dir[i];
        }
        // Renormalize the probes onto the sphere before mapping.
        const double np = norm<4>(xp);
        const double nm = norm<4>(xm);
        for (std::size_t i = 0; i < 4; ++i) {
          xp[i] /= np;
          xm[i] /= nm;
        }
        const auto yp = mobius_apply(m, xp);
        const auto ym = mobius_apply(m, xm);
        std::array<double, 4> d{};
        for (std::size_t i = 0; i < 4; ++i) d[i] = (yp[i] - ym[i]) / (2.0 * h);
        return d;
      };
      const auto du = push(u);
      const auto dv = push(v);
      double dot = 0.0;
      for (std::size_t i = 0; i < 4; ++i) dot += du[i] * dv[i];
      const double su = norm<4>(du);
      const double sv = norm<4>(dv);
      CHECK(std::abs(su - sv) <= 1e-6 * su);
      CHECK(std::abs(dot) <= 1e-6 * su * sv);
    }
  }

  TEST_CASE("problem validation") {
    BalanceProblem<4> p;
    p.samples = {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}};
    p.weights = {1.0};
    CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
    p.weights = {1.0, 0.0};
    CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
    p.weights = {1.0, 1.0};
    CHECK_NOTHROW(validate_problem(p));
    p.samples[1] = {0.0, 1.1, 0.0, 0.0};
    CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
  }

  TEST_CASE("uniform clifford problem is already balanced") {
    const TorusGrid g = make_grid(16);
    const auto problem = torus_embedding_problem(g);
    const auto com = center_of_mass(problem, MobiusParam<4>{});
    CHECK(norm<4>(com) <= 1e-13);
    const auto res = balance(problem, 1e-10, 200);
    CHECK(norm<4>(res.param.a) <= 1e-10);
    CHECK(res.iterations == 0);
    CHECK(res.residual <= 1e-10);
  }

  TEST_CASE("dilated samples re-balance to the opposite parameter") {
    // T_a and T_b along the same axis compose by Moebius addition, so the
    // exact balancing parameter for samples shifted by b is a = -b.
    const TorusGrid g = make_grid(16);
    const MobiusParam<4> b{{0.3, 0.0, 0.0, 0.0}};
    const auto problem = shifted_torus_problem(g, b);
    const auto res = balance(problem, 1e-8, 200);
    CHECK(res.residual <= 1e-8);
    CHECK(res.iterations <= 200);
    CHECK(res.param.a[0] == doctest::Approx(-0.3).epsilon(1e-7));
    CHECK(std::abs(res.param.a[1]) <= 1e-8);

    // A stronger, off-axis dilation still converges.
    MobiusParam<4> hard{{0.3, -0.55, 0.2, 0.1}};
    const auto res2 = balance(shifted_torus_problem(g, hard), 1e-8, 200);
    CHECK(res2.residual <= 1e-8);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(res2.param.a[i] == doctest::Approx(-hard.a[i]).epsilon(1e-6));
  }

  TEST_CASE("nonuniform density shifts the balance point") {
    const TorusGrid g = make_grid(16);
    const double om = 2.0 * pi / g.period;
    const GridFunction rho =
        sample(g, [&](double th, double) { return 1.0 + 0.5 * std::cos(om * th); });
    const auto problem = torus_embedding_problem(g, rho);
    const auto res = balance(problem, 1e-9, 200);
    CHECK(res.residual <= 1e-9);
    CHECK(norm<4>(res.param.a) > 1e-3);  // genuinely off-center
    const auto com = center_of_mass(problem, res.param);
    CHECK(norm<4>(com) <= 1e-9);
  }

  TEST_CASE("three-dimensional instantiation balances the octahedron") {
    BalanceProblem<3> p;
    p.samples = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                 {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    p.weights.assign(6, 1.0);
    const auto res = balance(p, 1e-12, 100);
    CHECK(norm<3>(res.param.a) <= 1e-12);

    const MobiusParam<3> b{{0.4, 0.0, 0.0}};
    BalanceProblem<3> shifted = p;
    for (auto& s : shifted.samples) s = mobius_apply(b, s);
    const auto res2 = balance(shifted, 1e-10, 200);
    CHECK(res2.residual <= 1e-10);
    CHECK(res2.param.a[0] == doctest::Approx(-0.4).epsilon(1e-8));
  }

  TEST_CASE("degenerate mass throws") {
    BalanceProblem<4> p;
    p.samples.assign(8, {1.0, 0.0, 0.0, 0.0});
    p.weights.assign(8, 1.0);
    CHECK_THROWS_AS((void)balance(p, 1e-8, 50), DegenerateMass);
  }

  TEST_CASE("iteration budget exhaustion reports the residual") {
    const TorusGrid g = make_grid(16);
    const MobiusParam<4> b{{0.9, 0.0, 0.0, 0.0}};
    const auto problem = shifted_torus_problem(g, b);
    try {
      (void)balance(problem, 1e-14, 1);
      FAIL("expected NonConvergence");
    } catch (const NonConvergence& e) {
      CHECK(e.iterations >= 1);
      CHECK(e.residual > 0.0);
    }
  }

  TEST_CASE("conformal energy of the clifford map is 4 pi^2 twice over") {
    const TorusGrid g = make_grid(32);
    const auto problem = torus_embedding_problem(g);
    const auto e = conformal_energy(problem, g, MobiusParam<4>{});
    // |dPsi|^2 = 2 pointwise, area 2 pi^2: energy 4 pi^2; equal area term.
    CHECK(std::abs(e.dirichlet - 4.0 * pi * pi) <= 1e-10);
    CHECK(std::abs(e.two_area - 4.0 * pi * pi) <= 1e-10);
  }

  TEST_CASE("energy identity survives moebius composition") {
    // Dilations are conformal, so the Dirichlet energy keeps matching twice
    // the pullback area. The balanced map maximizes that area over the
    // dilation orbit, so the composites can only lose energy.
    const TorusGrid g = make_grid(32);
    const auto problem = torus_embedding_problem(g);
    for (double s : {0.2, 0.5, 0.7}) {
      const MobiusParam<4> m{{s * 0.6, s * 0.8, 0.0, 0.0}};
      const auto e = conformal_energy(problem, g, m);
      CHECK(std::abs(e.dirichlet - e.two_area) <= 1e-8);
      CHECK(e.dirichlet <= 4.0 * pi * pi + 1e-8);
      CHECK(e.dirichlet > 0.0);
    }
  }
}
