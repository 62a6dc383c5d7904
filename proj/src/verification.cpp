#include "wave_nonuniq/verification.hpp"

#include <algorithm>
#include <cmath>

#include "wave_nonuniq/errors.hpp"

namespace wave_nonuniq {

namespace {

bool same_grid(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-12 * std::max(1.0, std::abs(a[i]))) return false;
  return true;
}

void require_same_grid(const SurfaceTrace& a, const SurfaceTrace& b) {
  if (!same_grid(a.x1, b.x1) || !same_grid(a.t, b.t))
    throw GridMismatch("traces are sampled on different grids (" + std::to_string(a.nt()) + "x" +
                       std::to_string(a.nx()) + " vs " + std::to_string(b.nt()) + "x" + std::to_string(b.nx()) +
                       ")");
  if (a.values.size() != a.nt() * a.nx() || b.values.size() != b.nt() * b.nx())
    throw GridMismatch("trace values do not match the grid dimensions");
}

std::vector<double> trapezoid_weights(std::span<const double> x) {
  std::vector<double> w(x.size(), 0.0);
  if (x.size() == 1) {
    w[0] = 1.0;
    return w;
  }
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double half = 0.5 * (x[i + 1] - x[i]);
    w[i] += half;
    w[i + 1] += half;
  }
  return w;
}

template <class F>
double weighted_norm(const SurfaceTrace& grid, F&& value) {
  const auto wt = trapezoid_weights(grid.t);
  const auto wx = trapezoid_weights(grid.x1);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.nt(); ++i)
    for (std::size_t j = 0; j < grid.nx(); ++j) {
      const double v = value(i, j);
      acc += wt[i] * wx[j] * v * v;
    }
  return std::sqrt(acc);
}

}  // namespace

double weighted_l2_norm(const SurfaceTrace& trace) {
  return weighted_norm(trace, [&](std::size_t i, std::size_t j) { return trace(i, j); });
}

TraceReport compare_traces(const SurfaceTrace& a, const SurfaceTrace& b, double tolerance,
                           double nontriviality_floor) {
  require_same_grid(a, b);
  TraceReport r;
  r.tolerance = tolerance;
  r.nontriviality_floor = nontriviality_floor < 0.0 ? kNontrivialityFactor * tolerance : nontriviality_floor;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    r.sup_diff = std::max(r.sup_diff, std::abs(a.values[k] - b.values[k]));
    r.max_magnitude = std::max(r.max_magnitude, std::abs(a.values[k]));
  }
  r.l2_diff = weighted_norm(a, [&](std::size_t i, std::size_t j) { return a(i, j) - b(i, j); });
  r.pass = r.sup_diff <= r.tolerance && r.max_magnitude >= r.nontriviality_floor;
  return r;
}

double relative_l2_error(const SurfaceTrace& reference, const SurfaceTrace& test) {
  require_same_grid(reference, test);
  const double diff = weighted_norm(reference, [&](std::size_t i, std::size_t j) { return test(i, j) - reference(i, j); });
  const double ref = weighted_l2_norm(reference);
  if (ref == 0.0) return diff == 0.0 ? 0.0 : INFINITY;
  return diff / ref;
}

double matching_condition_time(const ModalSource& src, VelocityProfile c1, VelocityProfile c2,
                               const BoxDomain& dom, int m1, std::span<const double> t) {
  std::vector<double> diff(t.size(), 0.0);
  for (const auto& [m, rep] : src.entries()) {
    if (m.m1 != m1) continue;
    const EigenData e = eigen_data(m, dom);
    const auto u1 = mode_response(rep, c1, e.lambda, t);
    const auto u2 = mode_response(rep, c2, e.lambda, t);
    for (std::size_t i = 0; i < t.size(); ++i) diff[i] += e.gamma * (u1[i] - u2[i]);
  }
  double worst = 0.0;
  for (double d : diff) worst = std::max(worst, std::abs(d));
  return worst;
}

}  // namespace wave_nonuniq
