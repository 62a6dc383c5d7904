#include "wave_nonuniq/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wave_nonuniq/errors.hpp"

namespace wave_nonuniq {

namespace {

constexpr double kCancelTol = 1e-9;

Polynomial factor_for(const Pole& p) {
  return p.location.imag() == 0.0 ? Polynomial::linear_factor(p.location.real())
                                  : Polynomial::quadratic_factor(p.location);
}

bool vanishes_at(const Polynomial& q, Complex z) {
  return std::abs(q(z)) <= kCancelTol * q.max_abs_coeff() * std::pow(std::max(1.0, std::abs(z)), q.degree());
}

// Coefficients within a few ulps of the polynomial's norm are rounding
// residue from cancellation; dropping them exposes exact roots at p = 0.
Polynomial snap_rounding_residue(const Polynomial& q) {
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * q.max_abs_coeff();
  std::vector<double> c = q.coeffs();
  for (double& x : c)
    if (std::abs(x) <= floor) x = 0.0;
  return Polynomial(std::move(c));
}

int shared_multiplicity(const Polynomial& q, Complex z) {
  int k = 0;
  for (Polynomial d = q; d.degree() >= 1 && vanishes_at(d, z); d = d.derivative()) ++k;
  return k;
}

}  // namespace

RationalFn::RationalFn(Polynomial num, Polynomial den)
    : num_(snap_rounding_residue(num)), den_(snap_rounding_residue(den)) {
  if (den_.is_zero()) throw InvalidInput("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial{1.0};
    return;
  }
  if (den_.degree() >= 1 && num_.degree() >= 1) {
    for (const Pole& pole : poly_roots(den_)) {
      if (pole.location.imag() < 0.0) continue;
      const Polynomial factor = factor_for(pole);
      for (int j = 0; j < pole.multiplicity && num_.degree() >= factor.degree(); ++j) {
        if (!vanishes_at(num_, pole.location)) break;
        num_ = divmod(num_, factor).first;
        den_ = divmod(den_, factor).first;
      }
    }
  }
  const double lead = den_.leading();
  num_ = (1.0 / lead) * num_;
  den_ = den_.monic();
}

bool RationalFn::is_zero(double rel_tol, double scale) const {
  if (scale <= 0.0) scale = den_.max_abs_coeff();
  return num_.max_abs_coeff() <= rel_tol * scale;
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) throw InvalidInput("poly_gcd of a zero polynomial");
  if (a.degree() < 1 || b.degree() < 1) return Polynomial{1.0};
  Polynomial g{1.0};
  for (const Pole& pole : poly_roots(a)) {
    if (pole.location.imag() < 0.0) continue;
    const int shared = std::min(pole.multiplicity, shared_multiplicity(b, pole.location));
    if (shared > 0) g = g * factor_for(pole).pow(shared);
  }
  return g;
}

RationalFn rat_add(const RationalFn& f, const RationalFn& g) {
  if (f.is_exact_zero()) return g;
  if (g.is_exact_zero()) return f;
  const Polynomial common = poly_gcd(f.den(), g.den());
  const Polynomial f_rest = divmod(f.den(), common).first;
  const Polynomial g_rest = divmod(g.den(), common).first;
  return {f.num() * g_rest + g.num() * f_rest, f.den() * g_rest};
}

RationalFn rat_mul(const RationalFn& f, const RationalFn& g) {
  if (f.is_exact_zero() || g.is_exact_zero()) return {};
  return {f.num() * g.num(), f.den() * g.den()};
}

RationalFn rat_scale(const RationalFn& f, double s) { return {s * f.num(), f.den()}; }

CommonSum common_denominator_sum(std::span<const RationalFn> terms) {
  CommonSum out{Polynomial{}, Polynomial{1.0}, 0.0};
  for (const RationalFn& t : terms) {
    if (t.is_exact_zero()) continue;
    const Polynomial common = poly_gcd(out.den, t.den());
    out.den = out.den * divmod(t.den(), common).first;
  }
  for (const RationalFn& t : terms) {
    if (t.is_exact_zero()) continue;
    const Polynomial lifted = t.num() * divmod(out.den, t.den()).first;
    out.scale = std::max(out.scale, lifted.max_abs_coeff());
    out.num = out.num + lifted;
  }
  return out;
}

}  // namespace wave_nonuniq
