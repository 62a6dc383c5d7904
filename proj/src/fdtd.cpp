#include "wave_nonuniq/fdtd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wave_nonuniq/errors.hpp"
#include "wave_nonuniq/verification.hpp"

namespace wave_nonuniq {

double FdtdGrid::cfl(VelocityProfile c) const { return c.c() * dt * std::sqrt(2.0) / h; }

namespace {

int intervals_for(double length, double h) {
  const double n = length / h;
  const long rounded = std::lround(n);
  if (rounded < 2 || std::abs(n - static_cast<double>(rounded)) > 1e-9 * n)
    throw InvalidInput("grid spacing " + std::to_string(h) + " does not divide the box length " +
                       std::to_string(length) + " into at least two intervals");
  return static_cast<int>(rounded);
}

}  // namespace

FdtdGrid make_fdtd_grid(const BoxDomain& dom, double h, VelocityProfile c, double dt) {
  dom.validate();
  if (!(h > 0.0)) throw InvalidInput("grid spacing must be positive");
  FdtdGrid g;
  g.intervals1 = intervals_for(dom.L1, h);
  g.intervals2 = intervals_for(dom.L2, h);
  g.h = dom.L1 / g.intervals1;
  g.dt = dt > 0.0 ? dt : kCflSafety * g.h / (c.c() * std::sqrt(2.0));
  return g;
}

FdtdSolver::FdtdSolver(const ModalSource& src, VelocityProfile c, const BoxDomain& dom, const FdtdGrid& grid)
    : dom_(dom), grid_(grid), courant2_(c.c2() * grid.dt * grid.dt), source_(src) {
  if (grid_.intervals1 < 2 || grid_.intervals2 < 2 || !(grid_.h > 0.0) || !(grid_.dt > 0.0))
    throw InvalidInput("FDTD grid needs at least two intervals per axis and positive h, dt");
  const double cfl = grid_.cfl(c);
  if (cfl > kCflSafety)
    throw StabilityError("time step " + std::to_string(grid_.dt) + " gives CFL number " + std::to_string(cfl) +
                         " above the limit " + std::to_string(kCflSafety) + " (need dt <= " +
                         std::to_string(kCflSafety * grid_.h / (c.c() * std::sqrt(2.0))) + ")");
  stride_ = grid_.nodes2() + 2;
  const std::size_t size = static_cast<std::size_t>(grid_.nodes1() + 2) * static_cast<std::size_t>(stride_);
  prev_.assign(size, 0.0);
  cur_.assign(size, 0.0);
  next_.assign(size, 0.0);
  forcing_.assign(size, 0.0);
  for (const ModeIndex& m : source_.modes) {
    std::vector<double> phi(size, 0.0);
    for (int i = 0; i < grid_.nodes1(); ++i)
      for (int j = 0; j < grid_.nodes2(); ++j)
        phi[index(i, j)] = eigenfunction(m, dom_, i * grid_.h, j * grid_.h);
    phi_.push_back(std::move(phi));
  }
}

void FdtdSolver::source_at(double t, std::vector<double>& out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < phi_.size(); ++k) {
    const double amp = source_.coefficient[k](t);
    if (amp == 0.0) continue;
    const auto& phi = phi_[k];
    for (std::size_t q = 0; q < out.size(); ++q) out[q] += amp * phi[q];
  }
}

void FdtdSolver::fill_ghosts(std::vector<double>& u) const {
  const int n1 = grid_.intervals1, n2 = grid_.intervals2;
  for (int j = 0; j <= n2; ++j) {
    u[index(-1, j)] = u[index(1, j)];
    u[index(n1 + 1, j)] = u[index(n1 - 1, j)];
  }
  for (int i = -1; i <= n1 + 1; ++i) {
    u[index(i, -1)] = u[index(i, 1)];
    u[index(i, n2 + 1)] = u[index(i, n2 - 1)];
  }
}

void FdtdSolver::step() {
  const int n1 = grid_.intervals1, n2 = grid_.intervals2;
  source_at(time(), forcing_);
  if (level_ == 0) {
    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j <= n2; ++j) next_[index(i, j)] = 0.5 * courant2_ * forcing_[index(i, j)];
  } else {
    fill_ghosts(cur_);
    const double inv_h2 = 1.0 / (grid_.h * grid_.h);
    for (int i = 0; i <= n1; ++i) {
      for (int j = 0; j <= n2; ++j) {
        const std::size_t q = index(i, j);
        const double lap = (cur_[q + stride_] + cur_[q - stride_] + cur_[q + 1] + cur_[q - 1] - 4.0 * cur_[q]) * inv_h2;
        next_[q] = 2.0 * cur_[q] - prev_[q] + courant2_ * (lap + forcing_[q]);
      }
    }
  }
  std::swap(prev_, cur_);
  std::swap(cur_, next_);
  ++level_;
}

std::vector<double> FdtdSolver::surface_row() const {
  std::vector<double> row(grid_.nodes1());
  for (int i = 0; i < grid_.nodes1(); ++i) row[i] = at(i, 0);
  return row;
}

double FdtdSolver::ghost_mismatch() {
  fill_ghosts(cur_);
  double worst = 0.0;
  const int n1 = grid_.intervals1, n2 = grid_.intervals2;
  for (int j = 0; j <= n2; ++j) {
    worst = std::max(worst, std::abs(cur_[index(-1, j)] - cur_[index(1, j)]));
    worst = std::max(worst, std::abs(cur_[index(n1 + 1, j)] - cur_[index(n1 - 1, j)]));
  }
  for (int i = 0; i <= n1; ++i) {
    worst = std::max(worst, std::abs(cur_[index(i, -1)] - cur_[index(i, 1)]));
    worst = std::max(worst, std::abs(cur_[index(i, n2 + 1)] - cur_[index(i, n2 - 1)]));
  }
  return worst;
}

SurfaceTrace simulate(const ModalSource& src, VelocityProfile c, const BoxDomain& dom, const FdtdGrid& grid,
                      std::span<const double> x1, std::span<const double> t) {
  validate_time_grid(t);
  FdtdSolver solver(src, c, dom, grid);
  const double dt = grid.dt;
  const long last = static_cast<long>(std::ceil(t.back() / dt - 1e-9));
  std::vector<std::vector<double>> rows;
  rows.reserve(last + 1);
  rows.push_back(solver.surface_row());
  while (solver.level() < last) {
    solver.step();
    rows.push_back(solver.surface_row());
  }

  SurfaceTrace out({x1.begin(), x1.end()}, {t.begin(), t.end()});
  for (std::size_t n = 0; n < t.size(); ++n) {
    const double s = t[n] / dt;
    long k = std::clamp(static_cast<long>(std::floor(s + 1e-9)), 0L, last);
    double wt = std::clamp(s - static_cast<double>(k), 0.0, 1.0);
    if (k == last) wt = 0.0;
    for (std::size_t j = 0; j < x1.size(); ++j) {
      const double r = std::clamp(x1[j] / grid.h, 0.0, static_cast<double>(grid.intervals1));
      long i = std::clamp(static_cast<long>(std::floor(r + 1e-9)), 0L, static_cast<long>(grid.intervals1));
      double wx = std::clamp(r - static_cast<double>(i), 0.0, 1.0);
      if (i == grid.intervals1) wx = 0.0;
      auto row_value = [&](long level) {
        const auto& row = rows[level];
        return wx == 0.0 ? row[i] : (1.0 - wx) * row[i] + wx * row[i + 1];
      };
      out(n, j) = wt == 0.0 ? row_value(k) : (1.0 - wt) * row_value(k) + wt * row_value(k + 1);
    }
  }
  return out;
}

ConvergenceReport convergence_study(const ModalSource& src, VelocityProfile c, const BoxDomain& dom,
                                    std::span<const double> h_sequence, double t_end) {
  if (h_sequence.size() < 3) throw InvalidInput("convergence study needs at least three grid levels");
  for (std::size_t k = 1; k < h_sequence.size(); ++k)
    if (std::abs(h_sequence[k - 1] / h_sequence[k] - 2.0) > 1e-9)
      throw InvalidInput("convergence study expects each level to halve h");
  if (!(t_end > 0.0)) throw InvalidInput("convergence study needs a positive horizon");

  const FdtdGrid coarse = make_fdtd_grid(dom, h_sequence[0], c);
  const long coarse_steps = static_cast<long>(std::ceil(t_end / coarse.dt));
  const double dt0 = t_end / static_cast<double>(coarse_steps);

  std::vector<double> t(coarse_steps + 1), x1(coarse.nodes1());
  for (long n = 0; n <= coarse_steps; ++n) t[n] = static_cast<double>(n) * dt0;
  for (int i = 0; i < coarse.nodes1(); ++i) x1[i] = i * coarse.h;
  const SurfaceTrace reference = surface_trace(src, c, dom, x1, t);

  ConvergenceReport report;
  double scale = 1.0;
  for (double h : h_sequence) {
    const FdtdGrid g = make_fdtd_grid(dom, h, c, dt0 / scale);
    const SurfaceTrace fd = simulate(src, c, dom, g, x1, t);
    report.h.push_back(g.h);
    report.dt.push_back(g.dt);
    report.errors.push_back(relative_l2_error(reference, fd));
    scale *= 2.0;
  }
  const bool zero_ref = weighted_l2_norm(reference) == 0.0;
  report.degenerate = zero_ref && std::all_of(report.errors.begin(), report.errors.end(), [](double e) { return e == 0.0; });
  if (report.degenerate) return report;

  for (std::size_t k = 1; k < report.errors.size(); ++k)
    report.orders.push_back(std::log2(report.errors[k - 1] / report.errors[k]));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(report.errors.size());
  for (std::size_t k = 0; k < report.errors.size(); ++k) {
    const double x = std::log(report.h[k]), y = std::log(report.errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.observed_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return report;
}

}  // namespace wave_nonuniq
