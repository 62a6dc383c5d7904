#include "wave_nonuniq/laplace.hpp"

#include <cmath>
#include <string>

#include "wave_nonuniq/errors.hpp"

namespace wave_nonuniq {

namespace {

using CPoly = std::vector<Complex>;  // ascending coefficients

CPoly cmul(const CPoly& a, const CPoly& b) {
  CPoly c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Taylor coefficients of q about z, q(z + s) = sum_i out[i] s^i, up to order n.
CPoly taylor_at(const CPoly& q, Complex z, int n) {
  CPoly work = q;
  CPoly out;
  for (int i = 0; i <= n && !work.empty(); ++i) {
    // Synthetic division by (p - z): the remainder is the next coefficient.
    Complex acc = 0.0;
    CPoly quot(work.size() > 1 ? work.size() - 1 : 0);
    for (std::size_t j = work.size(); j-- > 0;) {
      acc = acc * z + work[j];
      if (j > 0) quot[j - 1] = acc;
    }
    out.push_back(acc);
    work = std::move(quot);
  }
  out.resize(n + 1, 0.0);
  return out;
}

CPoly to_complex(const Polynomial& q) { return CPoly(q.coeffs().begin(), q.coeffs().end()); }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_strictly_proper(const RationalFn& f, const char* op) {
  if (!f.strictly_proper())
    throw ContractError(std::string(op) + " needs a strictly proper rational function, got numerator degree " +
                        std::to_string(f.num().degree()) + " over denominator degree " +
                        std::to_string(f.den().degree()));
}

}  // namespace

std::vector<PartialFraction> partial_fractions(const RationalFn& f) {
  require_strictly_proper(f, "partial_fractions");
  std::vector<PartialFraction> out;
  if (f.is_exact_zero()) return out;

  const PoleSet poles = poly_roots(f.den());
  const CPoly num = to_complex(f.num());
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const Pole& pole = poles[i];
    if (pole.location.imag() < 0.0) continue;
    const int k = pole.multiplicity;
    CPoly others{f.den().leading()};
    for (std::size_t j = 0; j < poles.size(); ++j) {
      if (j == i) continue;
      for (int m = 0; m < poles[j].multiplicity; ++m) others = cmul(others, {-poles[j].location, 1.0});
    }
    const CPoly n_t = taylor_at(num, pole.location, k - 1);
    const CPoly g_t = taylor_at(others, pole.location, k - 1);
    CPoly h(k);
    for (int m = 0; m < k; ++m) {
      Complex acc = n_t[m];
      for (int j = 1; j <= m; ++j) acc -= g_t[j] * h[m - j];
      h[m] = acc / g_t[0];
    }
    PartialFraction pf{pole, CPoly(k)};
    for (int m = 0; m < k; ++m) pf.coeffs[k - 1 - m] = h[m];
    if (pole.location.imag() == 0.0) {
      for (Complex& c : pf.coeffs) c = Complex(c.real(), 0.0);
      out.push_back(std::move(pf));
    } else {
      PartialFraction mirror{{std::conj(pole.location), k}, CPoly(k)};
      for (int m = 0; m < k; ++m) mirror.coeffs[m] = std::conj(pf.coeffs[m]);
      out.push_back(std::move(pf));
      out.push_back(std::move(mirror));
    }
  }
  return out;
}

RationalFn recombine(const std::vector<PartialFraction>& parts) {
  CPoly den{1.0};
  for (const auto& pf : parts)
    for (int m = 0; m < pf.pole.multiplicity; ++m) den = cmul(den, {-pf.pole.location, 1.0});
  CPoly num(den.size(), 0.0);
  for (const auto& pf : parts) {
    for (std::size_t j = 0; j < pf.coeffs.size(); ++j) {
      // den / (p - r)^(j+1) = product of every other factor.
      CPoly piece{pf.coeffs[j]};
      for (const auto& other : parts) {
        int power = other.pole.multiplicity;
        if (&other == &pf) power -= static_cast<int>(j) + 1;
        for (int m = 0; m < power; ++m) piece = cmul(piece, {-other.pole.location, 1.0});
      }
      for (std::size_t i = 0; i < piece.size(); ++i) num[i] += piece[i];
    }
  }
  std::vector<double> rn(num.size()), rd(den.size());
  for (std::size_t i = 0; i < num.size(); ++i) rn[i] = num[i].real();
  for (std::size_t i = 0; i < den.size(); ++i) rd[i] = den[i].real();
  return {Polynomial(std::move(rn)), Polynomial(std::move(rd))};
}

TimeSignal inverse_laplace(const RationalFn& f) {
  require_strictly_proper(f, "inverse_laplace");
  if (f.is_exact_zero()) return {};
  const PoleSet poles = poly_roots(f.den());
  for (const Pole& p : poles)
    if (p.multiplicity > kMaxPoleMultiplicity)
      throw UnsupportedMultiplicity("pole at " + std::to_string(p.location.real()) + "+" +
                                    std::to_string(p.location.imag()) + "i has multiplicity " +
                                    std::to_string(p.multiplicity) + " (at most " +
                                    std::to_string(kMaxPoleMultiplicity) + " supported)");
  std::vector<SignalTerm> terms;
  for (const PartialFraction& pf : partial_fractions(f)) {
    const Complex r = pf.pole.location;
    if (r.imag() < 0.0) continue;
    for (std::size_t j = 0; j < pf.coeffs.size(); ++j) {
      const int k = static_cast<int>(j);
      const double w = 1.0 / factorial(k);
      const Complex c = pf.coeffs[j];
      if (r.imag() == 0.0)
        terms.push_back({k, r.real(), 0.0, c.real() * w, 0.0});
      else
        terms.push_back({k, r.real(), r.imag(), 2.0 * c.real() * w, -2.0 * c.imag() * w});
    }
  }
  return TimeSignal(std::move(terms));
}

RationalFn laplace(const TimeSignal& s) {
  struct Group {
    double a, b;
    int max_k;
    Polynomial factor;
  };
  std::vector<Group> groups;
  std::vector<std::size_t> group_of;
  for (const SignalTerm& t : s.terms()) {
    std::size_t g = 0;
    for (; g < groups.size(); ++g) {
      const double scale = std::max({1.0, std::abs(t.a), std::abs(t.b)});
      if (std::abs(groups[g].a - t.a) <= 1e-12 * scale && std::abs(groups[g].b - t.b) <= 1e-12 * scale) break;
    }
    if (g == groups.size()) {
      const Polynomial factor = t.b == 0.0 ? Polynomial::linear_factor(t.a)
                                           : Polynomial::quadratic_factor(Complex(t.a, t.b));
      groups.push_back({t.a, t.b, t.k, factor});
    }
    groups[g].max_k = std::max(groups[g].max_k, t.k);
    group_of.push_back(g);
  }

  Polynomial den{1.0};
  for (const Group& g : groups) den = den * g.factor.pow(g.max_k + 1);

  Polynomial num;
  for (std::size_t i = 0; i < s.terms().size(); ++i) {
    const SignalTerm& t = s.terms()[i];
    const Group& g = groups[group_of[i]];
    Polynomial piece;
    if (g.b == 0.0) {
      piece = Polynomial{factorial(t.k) * t.alpha};
    } else {
      // k! Re[(alpha - i beta)(p - a + i b)^(k+1)], coefficientwise.
      CPoly z{Complex(-g.a, g.b), 1.0};
      CPoly acc{Complex(t.alpha, -t.beta)};
      for (int m = 0; m <= t.k; ++m) acc = cmul(acc, z);
      std::vector<double> re(acc.size());
      for (std::size_t j = 0; j < acc.size(); ++j) re[j] = factorial(t.k) * acc[j].real();
      piece = Polynomial(std::move(re));
    }
    Polynomial cofactor{1.0};
    for (std::size_t h = 0; h < groups.size(); ++h) {
      const int power = h == group_of[i] ? groups[h].max_k - t.k : groups[h].max_k + 1;
      cofactor = cofactor * groups[h].factor.pow(power);
    }
    num = num + piece * cofactor;
  }
  return {num, den};
}

}  // namespace wave_nonuniq
