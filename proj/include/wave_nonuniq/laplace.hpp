#pragma once

#include <vector>

#include "wave_nonuniq/polynomial.hpp"
#include "wave_nonuniq/rational.hpp"
#include "wave_nonuniq/time_signal.hpp"

namespace wave_nonuniq {

/// Highest pole order accepted by inverse_laplace (terms up to t^2 e^{at}).
inline constexpr int kMaxPoleMultiplicity = 3;

/// The principal part of a rational function at one pole:
///   sum_j coeffs[j] / (p - pole)^(j + 1),  j = 0 .. multiplicity - 1.
struct PartialFraction {
  Pole pole;
  std::vector<Complex> coeffs;
};

/// Complete decomposition over all poles (conjugate poles carry conjugate
/// coefficients). Throws ContractError unless F is strictly proper.
std::vector<PartialFraction> partial_fractions(const RationalFn& f);

/// Sums the principal parts back over a common denominator.
RationalFn recombine(const std::vector<PartialFraction>& parts);

/// Real time-domain signal whose Laplace transform is F. Throws ContractError
/// for improper F and UnsupportedMultiplicity for poles of order above 3.
TimeSignal inverse_laplace(const RationalFn& f);

/// Laplace transform of a closed-form signal (always strictly proper).
RationalFn laplace(const TimeSignal& s);

}  // namespace wave_nonuniq
