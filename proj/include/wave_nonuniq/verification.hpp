#pragma once

#include <span>

#include "wave_nonuniq/spectral.hpp"

namespace wave_nonuniq {

/// Spectral-to-spectral trace agreement.
inline constexpr double kSpectralTraceTol = 1e-9;
/// Spectral-to-FDTD relative L2 budget.
inline constexpr double kFdtdRelativeL2Tol = 2e-2;
/// Default nontriviality floor as a multiple of the tolerance.
inline constexpr double kNontrivialityFactor = 1e3;

struct TraceReport {
  double sup_diff = 0.0;
  double l2_diff = 0.0;       // trapezoid-weighted over the (t, x1) grid
  double max_magnitude = 0.0; // max |u| of the first trace
  double tolerance = 0.0;
  double nontriviality_floor = 0.0;
  bool pass = false;
};

/// pass <=> sup_diff <= tolerance and max_magnitude >= floor. A negative
/// floor selects kNontrivialityFactor * tolerance. Throws GridMismatch when
/// the two traces live on different grids.
TraceReport compare_traces(const SurfaceTrace& a, const SurfaceTrace& b, double tolerance = kSpectralTraceTol,
                           double nontriviality_floor = -1.0);

/// ||test - reference|| / ||reference|| in the same weighted L2 norm.
double relative_l2_error(const SurfaceTrace& reference, const SurfaceTrace& test);

/// Weighted L2 norm of a trace; the weights are trapezoid rules in t and x1.
double weighted_l2_norm(const SurfaceTrace& trace);

/// max over t of | sum_{m2} gamma_m u_m(t, c1) - sum_{m2} gamma_m u_m(t, c2) |
/// for one horizontal index m1.
double matching_condition_time(const ModalSource& src, VelocityProfile c1, VelocityProfile c2,
                               const BoxDomain& dom, int m1, std::span<const double> t);

}  // namespace wave_nonuniq
