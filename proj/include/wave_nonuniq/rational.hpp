#pragma once

#include <span>
#include <vector>

#include "wave_nonuniq/polynomial.hpp"

namespace wave_nonuniq {

/// Real rational function num(p)/den(p) of the Laplace variable.
///
/// Construction normalizes eagerly: the denominator becomes monic and every
/// denominator root at which the numerator also vanishes is divided out. The
/// zero function is stored as 0/1.
class RationalFn {
 public:
  RationalFn() : den_{1.0} {}
  RationalFn(Polynomial num, Polynomial den);
  /// A constant.
  static RationalFn constant(double c) { return {Polynomial{c}, Polynomial{1.0}}; }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_exact_zero() const { return num_.is_zero(); }
  /// All numerator coefficients are at most rel_tol * scale in magnitude. A
  /// nonpositive scale means "relative to this function's own denominator".
  bool is_zero(double rel_tol, double scale = 0.0) const;
  bool strictly_proper() const { return num_.degree() < den_.degree(); }

  double operator()(double p) const { return num_(p) / den_(p); }
  Complex operator()(Complex p) const { return num_(p) / den_(p); }

  RationalFn operator-() const { return {-num_, den_}; }

 private:
  Polynomial num_;
  Polynomial den_;
};

RationalFn rat_add(const RationalFn& f, const RationalFn& g);
RationalFn rat_mul(const RationalFn& f, const RationalFn& g);
RationalFn rat_scale(const RationalFn& f, double s);

inline RationalFn operator+(const RationalFn& f, const RationalFn& g) { return rat_add(f, g); }
inline RationalFn operator-(const RationalFn& f, const RationalFn& g) { return rat_add(f, -g); }
inline RationalFn operator*(const RationalFn& f, const RationalFn& g) { return rat_mul(f, g); }
inline RationalFn operator*(double s, const RationalFn& f) { return rat_scale(f, s); }

/// Greatest common divisor of two nonzero polynomials, found by matching
/// roots of `a` against `b`. The result is monic.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// Sum of several rational functions placed over their least common
/// denominator, before any cancellation. `scale` is the largest coefficient
/// among the individual numerators once each is lifted to that common
/// denominator; it is the reference for deciding whether the sum vanishes.
struct CommonSum {
  Polynomial num;
  Polynomial den;
  double scale = 0.0;

  bool vanishes(double rel_tol) const { return num.max_abs_coeff() <= rel_tol * scale; }
};

CommonSum common_denominator_sum(std::span<const RationalFn> terms);

}  // namespace wave_nonuniq
