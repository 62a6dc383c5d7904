#include "wave_nonuniq/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "wave_nonuniq/errors.hpp"
#include "wave_nonuniq/laplace.hpp"

namespace wave_nonuniq {

namespace {

std::string mode_name(ModeIndex m) { return "(" + std::to_string(m.m1) + "," + std::to_string(m.m2) + ")"; }

void require_distinct_speeds(VelocityProfile c1, VelocityProfile c2) {
  if (c1 == c2)
    throw DegenerateVelocities("wave speeds must differ, got c1 = c2 = " + std::to_string(c1.c()));
}

// 1 / (gamma_m B_m(p)).
RationalFn inverse_weighted_bracket(ModeIndex m, VelocityProfile c1, VelocityProfile c2, const BoxDomain& dom) {
  const EigenData e = eigen_data(m, dom);
  const double scale = 1.0 / (e.gamma * (c1.c2() - c2.c2()));
  if (e.lambda == 0.0) return {Polynomial{0.0, 0.0, scale}, Polynomial{1.0}};
  const Polynomial q1{c1.c2() * e.lambda, 0.0, 1.0}, q2{c2.c2() * e.lambda, 0.0, 1.0};
  return {scale * (q1 * q2), Polynomial{0.0, 0.0, 1.0}};
}

}  // namespace

RationalFn bracket(ModeIndex m, VelocityProfile c1, VelocityProfile c2, const BoxDomain& dom) {
  const double lambda = eigen_data(m, dom).lambda;
  const double diff = c1.c2() - c2.c2();
  if (diff == 0.0) return {};
  if (lambda == 0.0) return {Polynomial{diff}, Polynomial{0.0, 0.0, 1.0}};
  return {Polynomial{0.0, 0.0, diff},
          Polynomial{c1.c2() * lambda, 0.0, 1.0} * Polynomial{c2.c2() * lambda, 0.0, 1.0}};
}

CounterexampleScenario construct_multi(VelocityProfile c1, VelocityProfile c2, std::span<const ModeIndex> modes,
                                       std::span<const RationalFn> seeds, const BoxDomain& dom) {
  dom.validate();
  require_distinct_speeds(c1, c2);
  if (modes.size() < 2) throw InvalidInput("construction needs at least two modes");
  if (seeds.size() + 1 != modes.size())
    throw InvalidInput("expected " + std::to_string(modes.size() - 1) + " seeds for " +
                       std::to_string(modes.size()) + " modes, got " + std::to_string(seeds.size()));
  for (ModeIndex m : modes) {
    if (m.m1 < 0 || m.m2 < 0) throw InvalidInput("mode indices must be nonnegative, got " + mode_name(m));
    if (m.m1 != modes[0].m1)
      throw ModeMismatch("all modes must share m1: " + mode_name(modes[0]) + " vs " + mode_name(m));
  }
  if (std::set<ModeIndex>(modes.begin(), modes.end()).size() != modes.size())
    throw InvalidInput("modes must be pairwise distinct");

  CounterexampleScenario out{dom, c1, c2, {}, {}, {}};
  bool any_nonzero = false;
  for (std::size_t j = 0; j < seeds.size(); ++j) {
    if (!seeds[j].strictly_proper())
      throw ContractError("seed for mode " + mode_name(modes[j]) + " must be strictly proper (numerator degree " +
                          std::to_string(seeds[j].num().degree()) + ", denominator degree " +
                          std::to_string(seeds[j].den().degree()) + ")");
    if (seeds[j].is_exact_zero()) continue;
    any_nonzero = true;
    if (seeds[j].den().degree() >= 1) {
      for (const Pole& p : poly_roots(seeds[j].den()))
        if (p.location.real() > 0.0) {
          out.warnings.push_back("seed for mode " + mode_name(modes[j]) + " has a growing pole at Re p = " +
                                 std::to_string(p.location.real()) + "; time-domain checks need short windows");
          break;
        }
    }
  }
  if (!any_nonzero) throw TrivialSource("all seeds are zero, the constructed source would vanish");

  RationalFn weighted_sum;
  for (std::size_t j = 0; j < seeds.size(); ++j) {
    out.src.set(modes[j], seeds[j]);
    weighted_sum = weighted_sum + rat_scale(seeds[j] * bracket(modes[j], c1, c2, dom), eigen_data(modes[j], dom).gamma);
  }
  const ModeIndex solved_mode = modes.back();
  const RationalFn solved = -(weighted_sum * inverse_weighted_bracket(solved_mode, c1, c2, dom));
  if (!solved.strictly_proper())
    throw ContractError("solved coefficient for mode " + mode_name(solved_mode) +
                        " is not strictly proper (numerator degree " + std::to_string(solved.num().degree()) +
                        ", denominator degree " + std::to_string(solved.den().degree()) +
                        "); seed a mode with a larger eigenvalue instead");
  out.src.set(solved_mode, solved);

  // Every entry must stay invertible for both speeds (pole order <= 3).
  for (const auto& [m, rep] : out.src.entries()) {
    const auto& fbar = std::get<RationalFn>(rep);
    const double lambda = eigen_data(m, dom).lambda;
    inverse_laplace(fbar);
    closed_form_response(fbar, c1, lambda);
    closed_form_response(fbar, c2, lambda);
  }

  const SymbolicCheck check = verify_identity_symbolic(out.src, c1, c2, dom);
  if (!check.zero) throw ContractError("matching residual did not vanish; the construction is ill-conditioned");
  out.residuals = check.residuals;
  return out;
}

CounterexampleScenario construct_pair(VelocityProfile c1, VelocityProfile c2, ModeIndex mode_a, ModeIndex mode_b,
                                      const RationalFn& seed, const BoxDomain& dom) {
  if (mode_a == mode_b) throw InvalidInput("construct_pair needs two distinct modes");
  if (mode_a.m1 != mode_b.m1)
    throw ModeMismatch("modes " + mode_name(mode_a) + " and " + mode_name(mode_b) + " have different m1");
  if (seed.is_exact_zero()) throw TrivialSource("zero seed gives the trivial source");
  const ModeIndex modes[] = {mode_b, mode_a};
  return construct_multi(c1, c2, modes, std::span<const RationalFn>(&seed, 1), dom);
}

CounterexampleScenario paper_example() {
  CounterexampleScenario out{BoxDomain{}, VelocityProfile(1.0), VelocityProfile(2.0), {}, {}, {}};
  out.src.set({0, 1}, RationalFn(Polynomial{-1.0, 0.0, -1.0}, Polynomial{1.0, 1.0} * Polynomial{16.0, 0.0, 1.0}));
  out.src.set({0, 2}, RationalFn(Polynomial{1.0}, Polynomial{1.0, 1.0}));
  out.residuals = verify_identity_symbolic(out.src, out.c1, out.c2, out.dom).residuals;
  return out;
}

SymbolicCheck verify_identity_symbolic(const ModalSource& src, VelocityProfile c1, VelocityProfile c2,
                                       const BoxDomain& dom, double tol) {
  SymbolicCheck out;
  out.trivial = true;
  for (const auto& [m, rep] : src.entries()) {
    const auto* fbar = std::get_if<RationalFn>(&rep);
    if (!fbar)
      throw UnsupportedRepresentation("mode " + mode_name(m) + " is not in Laplace form; symbolic check needs rational entries");
    if (!fbar->is_exact_zero()) out.trivial = false;
  }
  for (int m1 : src.horizontal_indices()) {
    std::vector<RationalFn> terms;
    for (const auto& [m, rep] : src.entries()) {
      if (m.m1 != m1) continue;
      terms.push_back(rat_scale(std::get<RationalFn>(rep) * bracket(m, c1, c2, dom), eigen_data(m, dom).gamma));
    }
    const CommonSum sum = common_denominator_sum(terms);
    if (!sum.vanishes(tol)) out.zero = false;
    out.residuals.emplace(m1, RationalFn(sum.num, sum.den));
    out.scales.emplace(m1, sum.scale);
  }
  return out;
}

ObstructionReport surface_source_obstruction(VelocityProfile c1, VelocityProfile c2, int m1, int truncation,
                                             std::span<const double> p_samples, const BoxDomain& dom) {
  require_distinct_speeds(c1, c2);
  if (truncation < 1) throw InvalidInput("truncation M must be at least 1");
  if (m1 < 0) throw InvalidInput("m1 must be nonnegative");
  ObstructionReport report;
  report.m1 = m1;
  report.truncation = truncation;
  report.expected_sign = c1.c2() > c2.c2() ? 1 : -1;
  for (double p : p_samples) {
    if (!(p > 0.0)) throw InvalidInput("obstruction samples need p > 0");
    ObstructionRow row;
    row.p = p;
    double acc = 0.0;
    for (int m2 = 0; m2 <= truncation; ++m2) {
      const EigenData e = eigen_data({m1, m2}, dom);
      const double p2 = p * p;
      const double diff = c1.c2() - c2.c2();
      const double b = e.lambda == 0.0 ? diff / p2
                                       : diff * p2 / ((p2 + c1.c2() * e.lambda) * (p2 + c2.c2() * e.lambda));
      const double term = e.gamma * e.gamma * b;
      const int sign = term > 0.0 ? 1 : (term < 0.0 ? -1 : 0);
      if (sign != report.expected_sign) row.same_sign = false;
      const double next = acc + term;
      if (!row.partial_sums.empty() && std::abs(next) < std::abs(acc)) row.monotone = false;
      acc = next;
      row.partial_sums.push_back(acc);
    }
    report.all_same_sign = report.all_same_sign && row.same_sign;
    report.all_monotone = report.all_monotone && row.monotone;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace wave_nonuniq
