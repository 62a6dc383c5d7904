#pragma once

#include <compare>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "wave_nonuniq/rational.hpp"
#include "wave_nonuniq/time_signal.hpp"

namespace wave_nonuniq {

/// Rectangle [0, L1] x [0, L2] with zero normal derivative on all four edges.
/// The observation surface is the edge x2 = 0.
struct BoxDomain {
  double L1 = std::numbers::pi;
  double L2 = std::numbers::pi;

  /// Throws InvalidInput unless both lengths are positive and finite.
  void validate() const;
  friend bool operator==(const BoxDomain&, const BoxDomain&) = default;
};

/// Cosine mode cos(m1 pi x1 / L1) cos(m2 pi x2 / L2).
struct ModeIndex {
  int m1 = 0;
  int m2 = 0;
  friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

struct EigenData {
  double gamma = 0.0;   // L2-normalization constant
  double lambda = 0.0;  // -Laplacian eigenvalue
};

/// Throws InvalidInput for negative indices.
EigenData eigen_data(ModeIndex m, const BoxDomain& dom);

/// Normalized eigenfunction phi_m(x1, x2).
double eigenfunction(ModeIndex m, const BoxDomain& dom, double x1, double x2);

/// Constant wave speed.
class VelocityProfile {
 public:
  explicit VelocityProfile(double c);
  double c() const { return c_; }
  double c2() const { return c_ * c_; }
  friend bool operator==(const VelocityProfile&, const VelocityProfile&) = default;

 private:
  double c_;
};

/// Uniform grid 0, dt, 2 dt, ..., t_end (the last point is snapped to t_end).
std::vector<double> uniform_time_grid(double t_end, double dt);
/// Throws InvalidInput unless t is nonempty, starts at 0 and is strictly increasing.
void validate_time_grid(std::span<const double> t);

using SampledSource = std::function<double(double)>;
/// A modal source coefficient f_m, either as its Laplace transform, as a
/// closed-form signal, or as an opaque callable of time.
using SourceRep = std::variant<RationalFn, TimeSignal, SampledSource>;

/// Time-domain evaluator for any representation. Rational entries are
/// inverted once, up front.
SampledSource time_evaluator(const SourceRep& rep);

/// Finite-support modal source  f(x, t) = sum_m f_m(t) phi_m(x).
class ModalSource {
 public:
  using Entries = std::map<ModeIndex, SourceRep>;

  ModalSource() = default;
  explicit ModalSource(Entries entries) : entries_(std::move(entries)) {}

  void set(ModeIndex m, SourceRep rep) { entries_.insert_or_assign(m, std::move(rep)); }
  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  bool contains(ModeIndex m) const { return entries_.contains(m); }
  const SourceRep& at(ModeIndex m) const { return entries_.at(m); }

  /// True when every entry is a RationalFn.
  bool all_rational() const;
  /// Distinct m1 values with at least one entry, ascending.
  std::vector<int> horizontal_indices() const;

  /// f(x1, x2, t); converts representations on every call, so prefer
  /// field_evaluator in loops.
  double operator()(const BoxDomain& dom, double x1, double x2, double t) const;

  /// alpha * this + beta * other, combining entries mode by mode.
  ModalSource combined(double alpha, const ModalSource& other, double beta) const;

 private:
  Entries entries_;
};

/// Precomputed time evaluators for each entry of a ModalSource.
struct ModalEvaluator {
  std::vector<ModeIndex> modes;
  std::vector<SampledSource> coefficient;

  explicit ModalEvaluator(const ModalSource& src);
  double operator()(const BoxDomain& dom, double x1, double x2, double t) const;
};

using SpaceTimeFn = std::function<double(double x1, double x2, double t)>;

/// f_m(t) = integral over D of f(x, t) phi_m(x), by tensor Gauss-Legendre
/// quadrature with `panels` 20-point panels per axis.
std::vector<double> project_source(const SpaceTimeFn& f, ModeIndex m, const BoxDomain& dom,
                                   std::span<const double> t, int panels = 8);

/// Closed-form modal response  u_m = L^{-1}[ c^2 fbar / (p^2 + c^2 lambda) ].
TimeSignal closed_form_response(const RationalFn& fbar, VelocityProfile c, double lambda);

/// Duhamel response by composite Simpson quadrature, step min(dt, max_dtau).
std::vector<double> duhamel_response(const SampledSource& f, VelocityProfile c, double lambda,
                                     std::span<const double> t, double max_dtau = 1e-3);

/// u_m(t, c) sampled on t. Rational and closed-form sources take the exact
/// route; callables go through Duhamel quadrature. Throws InvalidInput for
/// lambda < 0.
std::vector<double> mode_response(const SourceRep& f, VelocityProfile c, double lambda,
                                  std::span<const double> t);

/// u(x1, 0, t) sampled on an x1 by t grid; values are row-major in time.
struct SurfaceTrace {
  std::vector<double> x1;
  std::vector<double> t;
  std::vector<double> values;

  SurfaceTrace() = default;
  SurfaceTrace(std::vector<double> x1_grid, std::vector<double> t_grid);

  std::size_t nx() const { return x1.size(); }
  std::size_t nt() const { return t.size(); }
  double& operator()(std::size_t it, std::size_t ix) { return values[it * x1.size() + ix]; }
  double operator()(std::size_t it, std::size_t ix) const { return values[it * x1.size() + ix]; }
  double max_abs() const;
};

/// x1 samples 0, L1/(n-1), ..., L1.
std::vector<double> surface_grid(const BoxDomain& dom, int n);

/// u(x, t) at one point.
std::vector<double> field_eval(const ModalSource& src, VelocityProfile c, const BoxDomain& dom,
                               double x1, double x2, std::span<const double> t);

SurfaceTrace surface_trace(const ModalSource& src, VelocityProfile c, const BoxDomain& dom,
                           std::span<const double> x1, std::span<const double> t);

}  // namespace wave_nonuniq
