#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wave_nonuniq/constructor.hpp"
#include "wave_nonuniq/errors.hpp"
#include "wave_nonuniq/laplace.hpp"
#include "wave_nonuniq/verification.hpp"

using namespace wave_nonuniq;

namespace {

const BoxDomain kPiBox{};
const VelocityProfile kOne(1.0), kTwo(2.0), kThree(3.0);

RationalFn inv_shift(double a) { return {Polynomial{1.0}, Polynomial{a, 1.0}}; }

double rel_diff(const RationalFn& f, const RationalFn& g) {
  const Polynomial dn = f.num() - g.num(), dd = f.den() - g.den();
  const double scale = std::max({f.num().max_abs_coeff(), g.num().max_abs_coeff(), 1e-300});
  return std::max(dn.max_abs_coeff() / scale, dd.max_abs_coeff() / std::max(1.0, f.den().max_abs_coeff()));
}

double pointwise_rel_diff(const RationalFn& f, const RationalFn& g, double p) {
  return std::abs(f(p) - g(p)) / std::max(std::abs(g(p)), 1e-300);
}

// Random stable strictly proper seed with denominator degree <= 3.
RationalFn random_seed(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-3.0, -0.2), im(0.3, 3.0), coef(-2.0, 2.0);
  std::uniform_int_distribution<int> deg(1, 3);
  const int d = deg(rng);
  PoleSet poles;
  if (d >= 2 && (rng() & 1u)) {
    const Complex z(re(rng), im(rng));
    poles = {{z, 1}, {std::conj(z), 1}};
    if (d == 3) poles.push_back({Complex(re(rng), 0.0), 1});
  } else {
    for (int i = 0; i < d; ++i) poles.push_back({Complex(re(rng), 0.0), 1});
  }
  std::uniform_int_distribution<int> nd(0, d - 1);
  std::vector<double> num(nd(rng) + 1);
  for (double& c : num) c = coef(rng);
  num.back() = num.back() == 0.0 ? 1.0 : num.back();
  return {Polynomial(num), from_poles(poles)};
}

}  // namespace

TEST_SUITE("bracket") {
  TEST_CASE("equal speeds give the zero bracket") {
    CHECK(bracket({0, 1}, kOne, kOne, kPiBox).is_exact_zero());
  }

  TEST_CASE("closed forms for lambda = 1 and lambda = 4") {
    const RationalFn b1 = bracket({0, 1}, kOne, kTwo, kPiBox);
    CHECK(rel_diff(b1, RationalFn(Polynomial{0.0, 0.0, -3.0}, Polynomial{1.0, 0.0, 1.0} * Polynomial{4.0, 0.0, 1.0})) < 1e-15);
    const RationalFn b4 = bracket({0, 2}, kOne, kTwo, kPiBox);
    CHECK(rel_diff(b4, RationalFn(Polynomial{0.0, 0.0, -3.0}, Polynomial{4.0, 0.0, 1.0} * Polynomial{16.0, 0.0, 1.0})) < 1e-15);
    const RationalFn b0 = bracket({0, 0}, kOne, kTwo, kPiBox);
    CHECK(rel_diff(b0, RationalFn(Polynomial{-3.0}, Polynomial{0.0, 0.0, 1.0})) < 1e-15);
  }

  TEST_CASE("simplified form equals the two-term difference") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> speed(0.5, 3.0), p(0.1, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
      const VelocityProfile c1(speed(rng)), c2(speed(rng));
      const ModeIndex m{trial % 3, 1 + trial % 4};
      const double lambda = eigen_data(m, kPiBox).lambda;
      const RationalFn two_term = RationalFn(Polynomial{c1.c2()}, Polynomial{c1.c2() * lambda, 0.0, 1.0}) -
                                  RationalFn(Polynomial{c2.c2()}, Polynomial{c2.c2() * lambda, 0.0, 1.0});
      const RationalFn closed = bracket(m, c1, c2, kPiBox);
      for (int i = 0; i < 50; ++i) {
        const double s = p(rng);
        const double direct = c1.c2() / (s * s + c1.c2() * lambda) - c2.c2() / (s * s + c2.c2() * lambda);
        CHECK(std::abs(closed(s) - direct) <= 1e-10 * std::abs(direct) + 1e-15);
        CHECK(pointwise_rel_diff(two_term, closed, s) <= 1e-10);
      }
    }
  }
}

TEST_SUITE("construction") {
  TEST_CASE("pair construction reproduces the printed c1 = 1, c2 = 2 coefficients") {
    const auto sc = construct_pair(kOne, kTwo, {0, 1}, {0, 2}, inv_shift(1.0));
    const RationalFn expected(Polynomial{-1.0, 0.0, -1.0}, Polynomial{1.0, 1.0} * Polynomial{16.0, 0.0, 1.0});
    CHECK(rel_diff(std::get<RationalFn>(sc.src.at({0, 1})), expected) < 1e-12);
    CHECK(rel_diff(std::get<RationalFn>(sc.src.at({0, 2})), inv_shift(1.0)) == 0.0);
    CHECK(sc.residuals.size() == 1);
    CHECK(sc.warnings.empty());
  }

  TEST_CASE("pair construction with c2 = 3") {
    const auto sc = construct_pair(kOne, kThree, {0, 1}, {0, 2}, inv_shift(1.0));
    const RationalFn expected(-1.0 * (Polynomial{1.0, 0.0, 1.0} * Polynomial{9.0, 0.0, 1.0}),
                              Polynomial{1.0, 1.0} * Polynomial{4.0, 0.0, 1.0} * Polynomial{36.0, 0.0, 1.0});
    CHECK(rel_diff(std::get<RationalFn>(sc.src.at({0, 1})), expected) < 1e-12);
    CHECK(verify_identity_symbolic(sc.src, kOne, kThree).zero);
  }

  TEST_CASE("precondition violations") {
    CHECK_THROWS_AS(construct_pair(kOne, kOne, {0, 1}, {0, 2}, inv_shift(1.0)), DegenerateVelocities);
    CHECK_THROWS_AS(construct_pair(kOne, kTwo, {0, 1}, {1, 2}, inv_shift(1.0)), ModeMismatch);
    CHECK_THROWS_AS(construct_pair(kOne, kTwo, {0, 1}, {0, 1}, inv_shift(1.0)), InvalidInput);
    CHECK_THROWS_AS(construct_pair(kOne, kTwo, {0, 1}, {0, 2}, RationalFn{}), TrivialSource);
    CHECK_THROWS_AS(construct_pair(kOne, kTwo, {0, 1}, {0, 2}, RationalFn(Polynomial{0.0, 1.0}, Polynomial{1.0, 1.0})),
                    ContractError);
    // Seeding the static mode puts a fourth-order pole at p = 0 in the partner.
    CHECK_THROWS_AS(construct_pair(kOne, kTwo, {0, 1}, {0, 0}, inv_shift(1.0)), UnsupportedMultiplicity);
  }

  TEST_CASE("static mode can be the solved partner") {
    const auto sc = construct_pair(kOne, kTwo, {0, 0}, {0, 3}, inv_shift(0.5));
    CHECK(std::get<RationalFn>(sc.src.at({0, 0})).strictly_proper());
    const auto t = uniform_time_grid(10.0, 0.05);
    CHECK(matching_condition_time(sc.src, kOne, kTwo, kPiBox, 0, t) <= 1e-8);
  }

  TEST_CASE("growing seed pole warns but still constructs") {
    const auto sc = construct_pair(kOne, kTwo, {0, 1}, {0, 2}, inv_shift(-0.5));
    REQUIRE(sc.warnings.size() == 1);
    CHECK(sc.warnings[0].find("growing pole") != std::string::npos);
    CHECK(verify_identity_symbolic(sc.src, kOne, kTwo).zero);
  }

  TEST_CASE("multi-mode construction") {
    const ModeIndex pair_modes[] = {{0, 2}, {0, 1}};
    const RationalFn one_seed[] = {inv_shift(1.0)};
    const auto k2 = construct_multi(kOne, kTwo, pair_modes, one_seed);
    const auto pair = construct_pair(kOne, kTwo, {0, 1}, {0, 2}, inv_shift(1.0));
    for (const auto& [m, rep] : pair.src.entries())
      CHECK(rel_diff(std::get<RationalFn>(k2.src.at(m)), std::get<RationalFn>(rep)) == 0.0);

    const ModeIndex modes[] = {{0, 1}, {0, 2}, {0, 3}};
    const RationalFn seeds[] = {inv_shift(1.0), inv_shift(2.0)};
    const auto sc = construct_multi(kOne, kTwo, modes, seeds);
    CHECK(sc.src.entries().size() == 3);
    const SymbolicCheck check = verify_identity_symbolic(sc.src, kOne, kTwo);
    CHECK(check.zero);
    CHECK_FALSE(check.trivial);

    const RationalFn zero_seeds[] = {RationalFn{}, RationalFn{}};
    CHECK_THROWS_AS(construct_multi(kOne, kTwo, modes, zero_seeds), TrivialSource);
  }

  TEST_CASE("seed scaling scales the whole source") {
    const auto base = construct_pair(VelocityProfile(0.7), VelocityProfile(2.2), {1, 1}, {1, 4}, inv_shift(1.5));
    for (double s : {-3.0, 0.01, 250.0}) {
      const auto scaled = construct_pair(VelocityProfile(0.7), VelocityProfile(2.2), {1, 1}, {1, 4},
                                         rat_scale(inv_shift(1.5), s));
      CHECK(verify_identity_symbolic(scaled.src, VelocityProfile(0.7), VelocityProfile(2.2)).zero);
      for (const auto& [m, rep] : base.src.entries())
        CHECK(rel_diff(std::get<RationalFn>(scaled.src.at(m)), rat_scale(std::get<RationalFn>(rep), s)) < 1e-12);
    }
  }

  TEST_CASE("randomized constructions match symbolically and on the surface") {
    std::mt19937_64 rng(1995);
    std::uniform_real_distribution<double> speed(0.5, 3.0);
    std::uniform_int_distribution<int> m1_dist(0, 3), m2_dist(0, 5);
    const auto t = uniform_time_grid(10.0, 0.02);
    const auto x1 = surface_grid(kPiBox, 8);
    for (int trial = 0; trial < 50; ++trial) {
      const VelocityProfile c1(speed(rng));
      VelocityProfile c2(speed(rng));
      while (std::abs(c2.c() - c1.c()) < 0.05) c2 = VelocityProfile(speed(rng));
      const int m1 = m1_dist(rng);
      int a2 = m2_dist(rng), b2 = m2_dist(rng);
      while (a2 == b2) b2 = m2_dist(rng);
      // Seed the mode with the larger eigenvalue so the solved partner stays proper.
      if (a2 > b2) std::swap(a2, b2);
      const auto sc = construct_pair(c1, c2, {m1, a2}, {m1, b2}, random_seed(rng));
      CHECK(verify_identity_symbolic(sc.src, c1, c2).zero);
      const SurfaceTrace u1 = surface_trace(sc.src, c1, kPiBox, x1, t);
      const SurfaceTrace u2 = surface_trace(sc.src, c2, kPiBox, x1, t);
      const TraceReport r = compare_traces(u1, u2, 1e-8);
      CHECK(r.sup_diff <= 1e-8);
      CHECK(r.max_magnitude >= 1e3 * r.sup_diff);
    }
  }

  TEST_CASE("paper example structure") {
    const auto sc = paper_example();
    CHECK(sc.c1 == kOne);
    CHECK(sc.c2 == kTwo);
    CHECK(sc.dom == kPiBox);
    CHECK(rel_diff(std::get<RationalFn>(sc.src.at({0, 2})), inv_shift(1.0)) == 0.0);
    const TimeSignal f01 = inverse_laplace(std::get<RationalFn>(sc.src.at({0, 1})));
    CHECK(f01(0.0) == doctest::Approx(-1.0).epsilon(1e-14));
    const TimeSignal expected({{0, -1.0, 0.0, -2.0 / 17.0, 0.0}, {0, 0.0, 4.0, -15.0 / 17.0, 15.0 / 68.0}});
    CHECK(TimeSignal::distance(f01, expected) < 1e-12);
    REQUIRE(sc.residuals.contains(0));
    CHECK(sc.residuals.at(0).is_zero(kResidualTol, 1.0));
  }
}

TEST_SUITE("symbolic identity") {
  TEST_CASE("paper example satisfies the Laplace-domain matching") {
    const auto sc = paper_example();
    const SymbolicCheck check = verify_identity_symbolic(sc.src, sc.c1, sc.c2);
    CHECK(check.zero);
    CHECK_FALSE(check.trivial);
  }

  TEST_CASE("rescaling one coefficient breaks the identity") {
    auto sc = paper_example();
    sc.src.set({0, 2}, rat_scale(inv_shift(1.0), 2.0));
    const SymbolicCheck check = verify_identity_symbolic(sc.src, sc.c1, sc.c2);
    CHECK_FALSE(check.zero);
    // The residual is then gamma_02 fbar_02 B_02 alone.
    const RationalFn lone = rat_scale(inv_shift(1.0) * bracket({0, 2}, kOne, kTwo, kPiBox), eigen_data({0, 2}, kPiBox).gamma);
    CHECK(pointwise_rel_diff(check.residuals.at(0), lone, 1.3) < 1e-10);
  }

  TEST_CASE("empty source is vacuously matched but flagged") {
    const SymbolicCheck check = verify_identity_symbolic(ModalSource{}, kOne, kTwo);
    CHECK(check.zero);
    CHECK(check.trivial);
  }

  TEST_CASE("time-domain entries are rejected") {
    ModalSource src;
    src.set({0, 1}, TimeSignal::exponential(-1.0));
    CHECK_THROWS_AS(verify_identity_symbolic(src, kOne, kTwo), UnsupportedRepresentation);
  }
}

TEST_SUITE("surface-concentrated obstruction") {
  const std::vector<double> kSamples{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};

  TEST_CASE("direct summation at p = 1 is negative") {
    const std::vector<double> p{1.0};
    const auto rep = surface_source_obstruction(kOne, kTwo, 0, 50, p);
    // Independent summation with the unsimplified bracket.
    double direct = 0.0;
    for (int m2 = 0; m2 <= 50; ++m2) {
      const EigenData e = eigen_data({0, m2}, kPiBox);
      direct += e.gamma * e.gamma * (1.0 / (1.0 + e.lambda) - 4.0 / (1.0 + 4.0 * e.lambda));
    }
    CHECK(rep.rows[0].total() < 0.0);
    CHECK(rep.rows[0].total() == doctest::Approx(direct).epsilon(1e-12));
    CHECK(rep.expected_sign == -1);
  }

  TEST_CASE("truncations are nested lower bounds") {
    const auto rep1 = surface_source_obstruction(kOne, kTwo, 0, 1, kSamples);
    const auto rep50 = surface_source_obstruction(kOne, kTwo, 0, 50, kSamples);
    for (std::size_t i = 0; i < kSamples.size(); ++i)
      CHECK(std::abs(rep1.rows[i].total()) <= std::abs(rep50.rows[i].total()));
    CHECK(rep50.forces_trivial_source());
  }

  TEST_CASE("swapping speeds flips every sign") {
    for (int m1 : {0, 1, 2}) {
      const auto a = surface_source_obstruction(kOne, kTwo, m1, 30, kSamples);
      const auto b = surface_source_obstruction(kTwo, kOne, m1, 30, kSamples);
      CHECK(b.expected_sign == -a.expected_sign);
      for (std::size_t i = 0; i < kSamples.size(); ++i)
        for (std::size_t k = 0; k < a.rows[i].partial_sums.size(); ++k)
          CHECK(b.rows[i].partial_sums[k] == doctest::Approx(-a.rows[i].partial_sums[k]).epsilon(1e-14));
    }
  }

  TEST_CASE("sign constancy up to M = 200") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> speed(0.5, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
      const VelocityProfile c1(speed(rng)), c2(speed(rng));
      const auto rep = surface_source_obstruction(c1, c2, trial % 4, 200, kSamples);
      CHECK(rep.all_same_sign);
      CHECK(rep.all_monotone);
    }
  }

  TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(surface_source_obstruction(kOne, kOne, 0, 5, kSamples), DegenerateVelocities);
    CHECK_THROWS_AS(surface_source_obstruction(kOne, kTwo, 0, 0, kSamples), InvalidInput);
    const std::vector<double> bad{-1.0};
    CHECK_THROWS_AS(surface_source_obstruction(kOne, kTwo, 0, 5, bad), InvalidInput);
  }
}
