#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "wave_nonuniq/rational.hpp"
#include "wave_nonuniq/spectral.hpp"

namespace wave_nonuniq {

/// Relative tolerance below which a matching residual counts as zero.
inline constexpr double kResidualTol = 1e-10;

/// Two wave speeds and a source whose surface traces coincide.
struct CounterexampleScenario {
  BoxDomain dom;
  VelocityProfile c1{1.0};
  VelocityProfile c2{2.0};
  ModalSource src;
  /// Laplace-domain matching residual for each horizontal index m1.
  std::map<int, RationalFn> residuals;
  /// Non-fatal diagnostics, e.g. seeds with growing poles.
  std::vector<std::string> warnings;
};

/// B_m(p) = c1^2/(p^2 + c1^2 lambda_m) - c2^2/(p^2 + c2^2 lambda_m), in the
/// simplified form (c1^2 - c2^2) p^2 / ((p^2 + c1^2 lambda)(p^2 + c2^2 lambda)),
/// or (c1^2 - c2^2)/p^2 for the static mode.
RationalFn bracket(ModeIndex m, VelocityProfile c1, VelocityProfile c2, const BoxDomain& dom);

/// Seeds mode_b with `seed` and solves for the coefficient of mode_a so that
/// the two modes cancel in the matching condition.
CounterexampleScenario construct_pair(VelocityProfile c1, VelocityProfile c2, ModeIndex mode_a,
                                      ModeIndex mode_b, const RationalFn& seed,
                                      const BoxDomain& dom = {});

/// Seeds modes[0..k-2] and solves for the coefficient of modes[k-1].
CounterexampleScenario construct_multi(VelocityProfile c1, VelocityProfile c2,
                                       std::span<const ModeIndex> modes,
                                       std::span<const RationalFn> seeds, const BoxDomain& dom = {});

/// The two-mode example with c1 = 1, c2 = 2 on the pi-box:
///   fbar_02 = 1/(p+1),  fbar_01 = -(p^2+1)/((p+1)(p^2+16)).
CounterexampleScenario paper_example();

struct SymbolicCheck {
  std::map<int, RationalFn> residuals;
  /// Reference magnitude for each residual (largest lifted term coefficient).
  std::map<int, double> scales;
  bool zero = true;
  /// The source has no nonzero entry, so the identity holds vacuously.
  bool trivial = false;
};

/// Assembles sum over m2 of gamma_m fbar_m B_m for every m1 over a common
/// denominator. Throws UnsupportedRepresentation for non-rational entries.
SymbolicCheck verify_identity_symbolic(const ModalSource& src, VelocityProfile c1, VelocityProfile c2,
                                       const BoxDomain& dom = {}, double tol = kResidualTol);

struct ObstructionRow {
  double p = 0.0;
  /// partial_sums[M'] = sum over m2 = 0 .. M' of gamma^2 B.
  std::vector<double> partial_sums;
  bool same_sign = true;
  bool monotone = true;

  double total() const { return partial_sums.back(); }
};

struct ObstructionReport {
  int m1 = 0;
  int truncation = 0;
  /// Sign of c1^2 - c2^2 shared by every summand.
  int expected_sign = 0;
  std::vector<ObstructionRow> rows;
  bool all_same_sign = true;
  bool all_monotone = true;
  /// Every summand has one sign and |T| grows with the truncation, so no
  /// nonzero surface-concentrated source can satisfy the matching condition.
  bool forces_trivial_source() const { return all_same_sign && all_monotone; }
};

/// Truncated sums T(p) = sum_{m2=0}^{M} gamma_{m1 m2}^2 B_m(p) at each p.
ObstructionReport surface_source_obstruction(VelocityProfile c1, VelocityProfile c2, int m1, int truncation,
                                             std::span<const double> p_samples, const BoxDomain& dom = {});

}  // namespace wave_nonuniq
