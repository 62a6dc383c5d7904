#include "wave_nonuniq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "wave_nonuniq/errors.hpp"
#include "wave_nonuniq/laplace.hpp"

namespace wave_nonuniq {

void BoxDomain::validate() const {
  if (!(L1 > 0.0) || !(L2 > 0.0) || !std::isfinite(L1) || !std::isfinite(L2))
    throw InvalidInput("box lengths must be positive and finite");
}

EigenData eigen_data(ModeIndex m, const BoxDomain& dom) {
  if (m.m1 < 0 || m.m2 < 0) throw InvalidInput("mode indices must be nonnegative");
  const double g1 = std::sqrt((m.m1 == 0 ? 1.0 : 2.0) / dom.L1);
  const double g2 = std::sqrt((m.m2 == 0 ? 1.0 : 2.0) / dom.L2);
  const double k1 = m.m1 * std::numbers::pi / dom.L1;
  const double k2 = m.m2 * std::numbers::pi / dom.L2;
  return {g1 * g2, k1 * k1 + k2 * k2};
}

double eigenfunction(ModeIndex m, const BoxDomain& dom, double x1, double x2) {
  const EigenData e = eigen_data(m, dom);
  return e.gamma * std::cos(m.m1 * std::numbers::pi * x1 / dom.L1) *
         std::cos(m.m2 * std::numbers::pi * x2 / dom.L2);
}

VelocityProfile::VelocityProfile(double c) : c_(c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("wave speed must be positive and finite");
}

std::vector<double> uniform_time_grid(double t_end, double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0)) throw InvalidInput("time grid needs t_end > 0 and dt > 0");
  const long n = std::max(1L, std::lround(t_end / dt));
  std::vector<double> t(n + 1);
  for (long i = 0; i <= n; ++i) t[i] = t_end * static_cast<double>(i) / static_cast<double>(n);
  return t;
}

void validate_time_grid(std::span<const double> t) {
  if (t.empty() || t.front() != 0.0) throw InvalidInput("time grids must start at t = 0");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw InvalidInput("time grid must be strictly increasing");
}

SampledSource time_evaluator(const SourceRep& rep) {
  return std::visit(
      [](const auto& r) -> SampledSource {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RationalFn>) {
          TimeSignal s = inverse_laplace(r);
          return [s = std::move(s)](double t) { return s(t); };
        } else if constexpr (std::is_same_v<T, TimeSignal>) {
          return [s = r](double t) { return s(t); };
        } else {
          return r;
        }
      },
      rep);
}

bool ModalSource::all_rational() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& kv) { return std::holds_alternative<RationalFn>(kv.second); });
}

std::vector<int> ModalSource::horizontal_indices() const {
  std::set<int> m1;
  for (const auto& [m, rep] : entries_) m1.insert(m.m1);
  return {m1.begin(), m1.end()};
}

double ModalSource::operator()(const BoxDomain& dom, double x1, double x2, double t) const {
  return ModalEvaluator(*this)(dom, x1, x2, t);
}

namespace {

SourceRep scaled_rep(const SourceRep& rep, double s) {
  return std::visit(
      [s](const auto& r) -> SourceRep {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, RationalFn>)
          return rat_scale(r, s);
        else if constexpr (std::is_same_v<T, TimeSignal>)
          return r.scaled(s);
        else
          return SampledSource([r, s](double t) { return s * r(t); });
      },
      rep);
}

SourceRep sum_rep(const SourceRep& a, const SourceRep& b) {
  if (std::holds_alternative<RationalFn>(a) && std::holds_alternative<RationalFn>(b))
    return std::get<RationalFn>(a) + std::get<RationalFn>(b);
  if (std::holds_alternative<TimeSignal>(a) && std::holds_alternative<TimeSignal>(b))
    return std::get<TimeSignal>(a) + std::get<TimeSignal>(b);
  return SampledSource([fa = time_evaluator(a), fb = time_evaluator(b)](double t) { return fa(t) + fb(t); });
}

}  // namespace

ModalSource ModalSource::combined(double alpha, const ModalSource& other, double beta) const {
  Entries out;
  for (const auto& [m, rep] : entries_) out.insert_or_assign(m, scaled_rep(rep, alpha));
  for (const auto& [m, rep] : other.entries_) {
    SourceRep scaled = scaled_rep(rep, beta);
    auto it = out.find(m);
    if (it == out.end())
      out.emplace(m, std::move(scaled));
    else
      it->second = sum_rep(it->second, scaled);
  }
  return ModalSource(std::move(out));
}

ModalEvaluator::ModalEvaluator(const ModalSource& src) {
  for (const auto& [m, rep] : src.entries()) {
    modes.push_back(m);
    coefficient.push_back(time_evaluator(rep));
  }
}

double ModalEvaluator::operator()(const BoxDomain& dom, double x1, double x2, double t) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) acc += coefficient[i](t) * eigenfunction(modes[i], dom, x1, x2);
  return acc;
}

std::vector<double> project_source(const SpaceTimeFn& f, ModeIndex m, const BoxDomain& dom,
                                   std::span<const double> t, int panels) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  if (panels < 1) throw InvalidInput("project_source needs at least one panel");
  std::vector<double> out;
  out.reserve(t.size());
  const double w1 = dom.L1 / panels, w2 = dom.L2 / panels;
  for (double time : t) {
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
      for (int j = 0; j < panels; ++j) {
        total += Rule::integrate(
            [&](double x1) {
              return Rule::integrate(
                  [&](double x2) { return f(x1, x2, time) * eigenfunction(m, dom, x1, x2); },
                  j * w2, (j + 1) * w2);
            },
            i * w1, (i + 1) * w1);
      }
    }
    out.push_back(total);
  }
  return out;
}

TimeSignal closed_form_response(const RationalFn& fbar, VelocityProfile c, double lambda) {
  if (lambda < 0.0) throw InvalidInput("eigenvalue must be nonnegative, got " + std::to_string(lambda));
  const RationalFn kernel(Polynomial{c.c2()}, Polynomial{c.c2() * lambda, 0.0, 1.0});
  return inverse_laplace(fbar * kernel);
}

std::vector<double> duhamel_response(const SampledSource& f, VelocityProfile c, double lambda,
                                     std::span<const double> t, double max_dtau) {
  if (lambda < 0.0) throw InvalidInput("eigenvalue must be nonnegative, got " + std::to_string(lambda));
  validate_time_grid(t);
  double dtau = max_dtau;
  for (std::size_t i = 1; i < t.size(); ++i) dtau = std::min(dtau, t[i] - t[i - 1]);

  // u(t) = K1(t) A(t) - K2(t) B(t) with cumulative integrals A, B of f
  // against two separable kernel factors.
  const double omega = c.c() * std::sqrt(lambda);
  const bool static_mode = lambda == 0.0;
  auto weight_a = [&](double tau) { return static_mode ? 1.0 : std::cos(omega * tau); };
  auto weight_b = [&](double tau) { return static_mode ? tau : std::sin(omega * tau); };

  std::vector<double> u(t.size(), 0.0);
  double acc_a = 0.0, acc_b = 0.0;
  for (std::size_t n = 1; n < t.size(); ++n) {
    const double lo = t[n - 1], hi = t[n];
    long sub = static_cast<long>(std::ceil((hi - lo) / dtau - 1e-9));
    if (sub % 2 != 0) ++sub;
    const double h = (hi - lo) / static_cast<double>(sub);
    double sa = 0.0, sb = 0.0;
    for (long k = 0; k <= sub; ++k) {
      const double tau = lo + h * static_cast<double>(k);
      const double w = (k == 0 || k == sub) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      const double fv = f(tau);
      sa += w * weight_a(tau) * fv;
      sb += w * weight_b(tau) * fv;
    }
    acc_a += sa * h / 3.0;
    acc_b += sb * h / 3.0;
    const double tn = hi;
    if (static_mode)
      u[n] = c.c2() * (tn * acc_a - acc_b);
    else
      u[n] = (c.c() / std::sqrt(lambda)) * (std::sin(omega * tn) * acc_a - std::cos(omega * tn) * acc_b);
  }
  return u;
}

std::vector<double> mode_response(const SourceRep& f, VelocityProfile c, double lambda,
                                  std::span<const double> t) {
  if (lambda < 0.0) throw InvalidInput("eigenvalue must be nonnegative, got " + std::to_string(lambda));
  validate_time_grid(t);
  if (const auto* fbar = std::get_if<RationalFn>(&f)) return closed_form_response(*fbar, c, lambda).sample(t);
  if (const auto* sig = std::get_if<TimeSignal>(&f))
    return closed_form_response(laplace(*sig), c, lambda).sample(t);
  return duhamel_response(std::get<SampledSource>(f), c, lambda, t);
}

SurfaceTrace::SurfaceTrace(std::vector<double> x1_grid, std::vector<double> t_grid)
    : x1(std::move(x1_grid)), t(std::move(t_grid)), values(x1.size() * t.size(), 0.0) {}

double SurfaceTrace::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> surface_grid(const BoxDomain& dom, int n) {
  if (n < 1) throw InvalidInput("surface grid needs at least one sample");
  if (n == 1) return {0.0};
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = dom.L1 * static_cast<double>(i) / static_cast<double>(n - 1);
  return x;
}

namespace {

struct ModalHistory {
  ModeIndex mode;
  std::vector<double> response;
};

// Mode responses in map order; both field_eval and surface_trace sum these
// in the same order so that they agree bit for bit.
std::vector<ModalHistory> modal_histories(const ModalSource& src, VelocityProfile c, const BoxDomain& dom,
                                          std::span<const double> t) {
  dom.validate();
  validate_time_grid(t);
  std::vector<ModalHistory> out;
  for (const auto& [m, rep] : src.entries())
    out.push_back({m, mode_response(rep, c, eigen_data(m, dom).lambda, t)});
  return out;
}

}  // namespace

std::vector<double> field_eval(const ModalSource& src, VelocityProfile c, const BoxDomain& dom, double x1,
                               double x2, std::span<const double> t) {
  std::vector<double> u(t.size(), 0.0);
  for (const ModalHistory& h : modal_histories(src, c, dom, t)) {
    const double phi = eigenfunction(h.mode, dom, x1, x2);
    for (std::size_t i = 0; i < t.size(); ++i) u[i] += h.response[i] * phi;
  }
  return u;
}

SurfaceTrace surface_trace(const ModalSource& src, VelocityProfile c, const BoxDomain& dom,
                           std::span<const double> x1, std::span<const double> t) {
  SurfaceTrace trace({x1.begin(), x1.end()}, {t.begin(), t.end()});
  const auto histories = modal_histories(src, c, dom, t);
  for (std::size_t j = 0; j < x1.size(); ++j) {
    for (const ModalHistory& h : histories) {
      const double phi = eigenfunction(h.mode, dom, x1[j], 0.0);
      for (std::size_t i = 0; i < t.size(); ++i) trace(i, j) += h.response[i] * phi;
    }
  }
  return trace;
}

}  // namespace wave_nonuniq
