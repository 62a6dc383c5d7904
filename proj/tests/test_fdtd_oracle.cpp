#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wave_nonuniq/constructor.hpp"
#include "wave_nonuniq/errors.hpp"
#include "wave_nonuniq/fdtd.hpp"
#include "wave_nonuniq/verification.hpp"

using namespace wave_nonuniq;
using std::numbers::pi;

namespace {

const BoxDomain kPiBox{};

ModalSource single_mode(ModeIndex m) {
  ModalSource src;
  src.set(m, TimeSignal::exponential(-1.0));
  return src;
}

}  // namespace

TEST_CASE("grid construction") {
  const FdtdGrid g = make_fdtd_grid(kPiBox, pi / 50, VelocityProfile(1.0));
  CHECK(g.intervals1 == 50);
  CHECK(g.nodes2() == 51);
  CHECK(g.cfl(VelocityProfile(1.0)) == doctest::Approx(kCflSafety));
  CHECK_THROWS_AS(make_fdtd_grid(kPiBox, 0.3, VelocityProfile(1.0)), InvalidInput);
  const FdtdGrid rect = make_fdtd_grid(BoxDomain{2.0, 1.0}, 0.05, VelocityProfile(1.0));
  CHECK(rect.intervals1 == 40);
  CHECK(rect.intervals2 == 20);
}

TEST_CASE("CFL violation is reported before stepping") {
  const FdtdGrid g = make_fdtd_grid(kPiBox, pi / 50, VelocityProfile(1.0), 0.05);
  CHECK_THROWS_AS(FdtdSolver(single_mode({0, 1}), VelocityProfile(1.0), kPiBox, g), StabilityError);
  const FdtdGrid ok = make_fdtd_grid(kPiBox, pi / 50, VelocityProfile(1.0));
  CHECK_THROWS_AS(FdtdSolver(single_mode({0, 1}), VelocityProfile(2.0), kPiBox, ok), StabilityError);
}

TEST_CASE("zero source stays zero") {
  const FdtdGrid g = make_fdtd_grid(kPiBox, pi / 20, VelocityProfile(1.0));
  const auto t = uniform_time_grid(2.0, 0.1);
  const SurfaceTrace tr = simulate(ModalSource{}, VelocityProfile(1.0), kPiBox, g, surface_grid(kPiBox, 5), t);
  CHECK(tr.max_abs() == 0.0);
}

TEST_CASE("discrete initial levels") {
  const ModalSource src = paper_example().src;
  const FdtdGrid g = make_fdtd_grid(kPiBox, pi / 40, VelocityProfile(1.0));
  FdtdSolver solver(src, VelocityProfile(1.0), kPiBox, g);
  for (double u : solver.surface_row()) CHECK(u == 0.0);
  solver.step();
  const double courant2 = g.dt * g.dt;
  const ModalEvaluator f(src);
  for (int i = 0; i <= g.intervals1; i += 7)
    for (int j = 0; j <= g.intervals2; j += 5)
      CHECK(solver.at(i, j) == doctest::Approx(0.5 * courant2 * f(kPiBox, i * g.h, j * g.h, 0.0)).epsilon(1e-13));
}

TEST_CASE("ghost mirror leaves no normal difference at the boundary") {
  const FdtdGrid g = make_fdtd_grid(kPiBox, pi / 30, VelocityProfile(1.3));
  ModalSource src = paper_example().src;
  src.set({2, 1}, TimeSignal({{0, -0.2, 3.0, 1.0, 0.5}}));
  FdtdSolver solver(src, VelocityProfile(1.3), kPiBox, g);
  for (int n = 0; n < 200; ++n) {
    solver.step();
    REQUIRE(solver.ghost_mismatch() == 0.0);
  }
}

TEST_CASE("single mode stays in its eigenspace") {
  const ModeIndex m{1, 1};
  const ModalSource src = single_mode(m);
  const auto t_end = 3.0;
  double previous_error = INFINITY;
  for (int n : {20, 40, 80}) {
    const FdtdGrid g = make_fdtd_grid(kPiBox, pi / n, VelocityProfile(1.0));
    FdtdSolver solver(src, VelocityProfile(1.0), kPiBox, g);
    while (solver.time() < t_end - 1e-12) solver.step();
    // Discrete cosines are exact eigenvectors of the mirrored 5-point
    // Laplacian, so the field is a multiple of phi_11 up to rounding.
    const double ref_phi = eigenfunction(m, kPiBox, g.h, g.h);
    const double amp = solver.at(1, 1) / ref_phi;
    double spread = 0.0;
    for (int i = 0; i <= g.intervals1; ++i)
      for (int j = 0; j <= g.intervals2; ++j)
        spread = std::max(spread, std::abs(solver.at(i, j) - amp * eigenfunction(m, kPiBox, i * g.h, j * g.h)));
    CHECK(spread <= 1e-12);
    const std::vector<double> tt{0.0, solver.time()};
    const double exact = mode_response(TimeSignal::exponential(-1.0), VelocityProfile(1.0), 2.0, tt)[1];
    const double error = std::abs(amp - exact);
    CHECK(error <= 0.5 * g.h * g.h);
    CHECK(error < previous_error);
    previous_error = error;
  }
}

TEST_CASE("the scheme is linear in the source") {
  const ModalSource f = paper_example().src;
  const ModalSource g = single_mode({1, 1});
  const double alpha = 0.7, beta = -2.5;
  const FdtdGrid grid = make_fdtd_grid(kPiBox, pi / 40, VelocityProfile(1.0));
  const auto t = uniform_time_grid(4.0, 0.05);
  const auto x1 = surface_grid(kPiBox, 11);
  const SurfaceTrace uf = simulate(f, VelocityProfile(1.0), kPiBox, grid, x1, t);
  const SurfaceTrace ug = simulate(g, VelocityProfile(1.0), kPiBox, grid, x1, t);
  const SurfaceTrace ucomb = simulate(f.combined(alpha, g, beta), VelocityProfile(1.0), kPiBox, grid, x1, t);
  const double scale = std::max(uf.max_abs(), ug.max_abs());
  for (std::size_t k = 0; k < ucomb.values.size(); ++k)
    CHECK(std::abs(ucomb.values[k] - (alpha * uf.values[k] + beta * ug.values[k])) <= 1e-12 * scale);
}

TEST_CASE("paper example agrees with the spectral trace") {
  const auto sc = paper_example();
  const auto t = uniform_time_grid(10.0, 0.01);
  const auto x1 = surface_grid(kPiBox, 64);
  for (double c : {1.0, 2.0}) {
    const FdtdGrid g = make_fdtd_grid(kPiBox, pi / 200, VelocityProfile(c));
    const SurfaceTrace fd = simulate(sc.src, VelocityProfile(c), kPiBox, g, x1, t);
    const SurfaceTrace sp = surface_trace(sc.src, VelocityProfile(c), kPiBox, x1, t);
    CHECK(relative_l2_error(sp, fd) <= kFdtdRelativeL2Tol);
  }
}

TEST_CASE("convergence study") {
  SUBCASE("smooth single mode") {
    const std::vector<double> hs{pi / 16, pi / 32, pi / 64};
    const auto rep = convergence_study(single_mode({1, 2}), VelocityProfile(1.0), kPiBox, hs, 4.0);
    CHECK(rep.observed_order == doctest::Approx(2.0).epsilon(0.15));
    for (std::size_t k = 1; k < rep.errors.size(); ++k) CHECK(rep.errors[k] < rep.errors[k - 1]);
  }
  SUBCASE("zero source is degenerate") {
    const std::vector<double> hs{pi / 8, pi / 16, pi / 32};
    const auto rep = convergence_study(ModalSource{}, VelocityProfile(1.0), kPiBox, hs, 1.0);
    CHECK(rep.degenerate);
    for (double e : rep.errors) CHECK(e == 0.0);
  }
  SUBCASE("paper example at c = 2") {
    const std::vector<double> hs{pi / 25, pi / 50, pi / 100, pi / 200};
    const auto rep = convergence_study(paper_example().src, VelocityProfile(2.0), kPiBox, hs, 10.0);
    CHECK(rep.observed_order >= 1.7);
    CHECK(rep.observed_order <= 2.3);
  }
  SUBCASE("argument checks") {
    const std::vector<double> two{pi / 8, pi / 16};
    CHECK_THROWS_AS(convergence_study(ModalSource{}, VelocityProfile(1.0), kPiBox, two, 1.0), InvalidInput);
    const std::vector<double> uneven{pi / 8, pi / 12, pi / 24};
    CHECK_THROWS_AS(convergence_study(ModalSource{}, VelocityProfile(1.0), kPiBox, uneven, 1.0), InvalidInput);
  }
}
