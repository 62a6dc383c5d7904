#pragma once

#include <span>
#include <vector>

#include "wave_nonuniq/spectral.hpp"

namespace wave_nonuniq {

/// Fraction of the 2-D leapfrog stability limit h / (c sqrt 2) that a time
/// step may use.
inline constexpr double kCflSafety = 0.9;

/// Uniform node grid covering [0, L1] x [0, L2], boundary nodes included.
struct FdtdGrid {
  int intervals1 = 0;
  int intervals2 = 0;
  double h = 0.0;
  double dt = 0.0;

  int nodes1() const { return intervals1 + 1; }
  int nodes2() const { return intervals2 + 1; }
  /// c dt sqrt(2) / h; stable runs need cfl <= kCflSafety.
  double cfl(VelocityProfile c) const;
};

/// Grid with spacing h (which must divide both lengths). A nonpositive dt
/// selects the largest step allowed by the safety factor.
FdtdGrid make_fdtd_grid(const BoxDomain& dom, double h, VelocityProfile c, double dt = 0.0);

/// Explicit second-order solver for c^-2 u_tt - Laplace u = f with zero
/// normal derivative, on a ghost-padded node array.
class FdtdSolver {
 public:
  /// Throws StabilityError when the grid violates the CFL bound for c.
  FdtdSolver(const ModalSource& src, VelocityProfile c, const BoxDomain& dom, const FdtdGrid& grid);

  /// Advances one level. The first call applies the Taylor start
  /// u^1 = (c dt)^2 f^0 / 2 for zero initial data.
  void step();

  int level() const { return level_; }
  double time() const { return level_ * grid_.dt; }
  const FdtdGrid& grid() const { return grid_; }

  /// Current value at node (i, j), 0 <= i <= intervals1, 0 <= j <= intervals2.
  double at(int i, int j) const { return cur_[index(i, j)]; }
  /// Current values along x2 = 0.
  std::vector<double> surface_row() const;
  /// Largest |ghost - mirrored interior| over the padding, after refreshing
  /// the ghosts for the current level.
  double ghost_mismatch();

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i + 1) * static_cast<std::size_t>(stride_) + static_cast<std::size_t>(j + 1);
  }
  void fill_ghosts(std::vector<double>& u) const;
  void source_at(double t, std::vector<double>& out) const;

  BoxDomain dom_;
  FdtdGrid grid_;
  double courant2_;  // (c dt)^2
  ModalEvaluator source_;
  std::vector<std::vector<double>> phi_;  // per mode, on interior nodes
  int stride_ = 0;
  int level_ = 0;
  std::vector<double> prev_, cur_, next_, forcing_;
};

/// Runs the solver to the last requested time and returns u(x1, 0, t),
/// interpolated linearly in time and in x1 where the request is off-grid.
SurfaceTrace simulate(const ModalSource& src, VelocityProfile c, const BoxDomain& dom, const FdtdGrid& grid,
                      std::span<const double> x1, std::span<const double> t);

struct ConvergenceReport {
  std::vector<double> h;
  std::vector<double> dt;
  std::vector<double> errors;   // relative L2 against the spectral trace
  std::vector<double> orders;   // log2(e_k / e_{k+1})
  double observed_order = 0.0;  // least-squares slope of log e against log h
  bool degenerate = false;      // every error and the reference vanish
};

/// Successive refinements with h halved and dt scaled with it. Errors are
/// measured on the coarsest grid's surface nodes and time levels, which every
/// finer level reproduces exactly. Throws InvalidInput for fewer than three
/// levels or a sequence that does not halve.
ConvergenceReport convergence_study(const ModalSource& src, VelocityProfile c, const BoxDomain& dom,
                                    std::span<const double> h_sequence, double t_end);

}  // namespace wave_nonuniq
