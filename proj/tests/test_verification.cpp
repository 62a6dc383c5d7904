#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wave_nonuniq/constructor.hpp"
#include "wave_nonuniq/errors.hpp"
#include "wave_nonuniq/fdtd.hpp"
#include "wave_nonuniq/verification.hpp"

using namespace wave_nonuniq;

namespace {

const BoxDomain kPiBox{};

SurfaceTrace ramp_trace(double scale) {
  SurfaceTrace tr(surface_grid(kPiBox, 4), uniform_time_grid(1.0, 0.25));
  for (std::size_t i = 0; i < tr.nt(); ++i)
    for (std::size_t j = 0; j < tr.nx(); ++j) tr(i, j) = scale * tr.t[i] * (1.0 + tr.x1[j]);
  return tr;
}

}  // namespace

TEST_CASE("identical nonzero traces pass with zero difference") {
  const SurfaceTrace a = ramp_trace(1.0);
  const TraceReport r = compare_traces(a, a);
  CHECK(r.pass);
  CHECK(r.sup_diff == 0.0);
  CHECK(r.l2_diff == 0.0);
  CHECK(r.nontriviality_floor == doctest::Approx(1e3 * kSpectralTraceTol));
}

TEST_CASE("vacuous equality of zero traces fails") {
  const SurfaceTrace z = ramp_trace(0.0);
  const TraceReport r = compare_traces(z, z);
  CHECK_FALSE(r.pass);
  CHECK(r.sup_diff == 0.0);
}

TEST_CASE("report fields and symmetry") {
  const SurfaceTrace a = ramp_trace(1.0), b = ramp_trace(1.5);
  const TraceReport ab = compare_traces(a, b, 1e-3), ba = compare_traces(b, a, 1e-3);
  CHECK_FALSE(ab.pass);
  CHECK(ab.sup_diff == doctest::Approx(0.5 * 1.0 * (1.0 + kPiBox.L1)));
  CHECK(ab.sup_diff == ba.sup_diff);
  CHECK(ab.l2_diff == ba.l2_diff);
  // ||0.5 t (1 + x)|| with trapezoid weights, computed independently.
  double acc = 0.0;
  for (std::size_t i = 0; i < a.nt(); ++i)
    for (std::size_t j = 0; j < a.nx(); ++j) {
      const double wt = (i == 0 || i + 1 == a.nt()) ? 0.125 : 0.25;
      const double wx = (j == 0 || j + 1 == a.nx()) ? kPiBox.L1 / 6 : kPiBox.L1 / 3;
      const double d = 0.5 * a.t[i] * (1.0 + a.x1[j]);
      acc += wt * wx * d * d;
    }
  CHECK(ab.l2_diff == doctest::Approx(std::sqrt(acc)).epsilon(1e-14));
  CHECK(relative_l2_error(a, b) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("mismatched grids are rejected") {
  SurfaceTrace a = ramp_trace(1.0);
  SurfaceTrace b(surface_grid(kPiBox, 5), uniform_time_grid(1.0, 0.25));
  CHECK_THROWS_AS(compare_traces(a, b), GridMismatch);
  CHECK_THROWS_AS(relative_l2_error(a, b), GridMismatch);
}

TEST_CASE("paper example spectral traces pass at 1e-9") {
  const auto sc = paper_example();
  const auto t = uniform_time_grid(10.0, 0.01);
  const auto x1 = surface_grid(kPiBox, 16);
  const TraceReport r = compare_traces(surface_trace(sc.src, sc.c1, sc.dom, x1, t),
                                       surface_trace(sc.src, sc.c2, sc.dom, x1, t));
  CHECK(r.pass);
  CHECK(r.sup_diff <= 1e-9);
}

TEST_CASE("time-domain matching condition") {
  const auto sc = paper_example();
  const auto t = uniform_time_grid(10.0, 0.01);
  CHECK(matching_condition_time(sc.src, sc.c1, sc.c2, sc.dom, 0, t) <= 1e-8);
  CHECK(matching_condition_time(sc.src, sc.c1, sc.c2, sc.dom, 3, t) == 0.0);

  ModalSource lone = sc.src;
  lone.set({0, 1}, RationalFn{});
  // Only gamma_02 (u_02(t, 1) - u_02(t, 2)) remains; its size is set by the
  // closed-form responses, and it is far from the tolerance.
  const double mismatch = matching_condition_time(lone, sc.c1, sc.c2, sc.dom, 0, t);
  const double gamma = eigen_data({0, 2}, kPiBox).gamma;
  const auto u1 = mode_response(lone.at({0, 2}), sc.c1, 4.0, t);
  const auto u2 = mode_response(lone.at({0, 2}), sc.c2, 4.0, t);
  double direct = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) direct = std::max(direct, gamma * std::abs(u1[i] - u2[i]));
  CHECK(mismatch == doctest::Approx(direct).epsilon(1e-12));
  CHECK(mismatch > 1e-2);
}

TEST_CASE("symbolic and time-domain checks agree on constructed scenarios") {
  const auto t = uniform_time_grid(10.0, 0.02);
  for (double c2 : {0.6, 1.7, 2.9}) {
    const auto sc = construct_pair(VelocityProfile(1.1), VelocityProfile(c2), {2, 1}, {2, 4},
                                   RationalFn(Polynomial{0.5, 1.0}, Polynomial{2.0, 3.0, 1.0}));
    CHECK(verify_identity_symbolic(sc.src, sc.c1, sc.c2).zero);
    CHECK(matching_condition_time(sc.src, sc.c1, sc.c2, sc.dom, 2, t) <= 1e-8);
  }
}

TEST_CASE("spectral c1 trace against the FDTD c2 trace") {
  const auto sc = paper_example();
  const auto t = uniform_time_grid(10.0, 0.01);
  const auto x1 = surface_grid(kPiBox, 32);
  const FdtdGrid g = make_fdtd_grid(kPiBox, std::numbers::pi / 200, sc.c2);
  const SurfaceTrace spectral_c1 = surface_trace(sc.src, sc.c1, sc.dom, x1, t);
  const SurfaceTrace fdtd_c2 = simulate(sc.src, sc.c2, sc.dom, g, x1, t);
  CHECK(relative_l2_error(spectral_c1, fdtd_c2) <= kFdtdRelativeL2Tol);
}
