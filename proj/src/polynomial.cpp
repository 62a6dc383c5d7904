#include "wave_nonuniq/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "wave_nonuniq/errors.hpp"

namespace wave_nonuniq {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::constant(double c) { return Polynomial{c}; }

Polynomial Polynomial::linear_factor(double r) { return Polynomial{-r, 1.0}; }

Polynomial Polynomial::quadratic_factor(Complex z) {
  return Polynomial{std::norm(z), -2.0 * z.real(), 1.0};
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Polynomial::magnitude_at(double abs_z) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * abs_z + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return (1.0 / leading()) * *this;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> c = a.coeffs_;
  for (double& x : c) x *= s;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::pow(int n) const {
  Polynomial out{1.0};
  for (int i = 0; i < n; ++i) out = out * *this;
  return out;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw InvalidInput("polynomial division by the zero polynomial");
  const int dn = den.degree();
  if (num.degree() < dn) return {Polynomial{}, num};
  std::vector<double> rem = num.coeffs();
  std::vector<double> quot(rem.size() - dn, 0.0);
  const double lead = den.leading();
  for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
    const double q = rem[i + dn] / lead;
    quot[i] = q;
    for (int j = 0; j <= dn; ++j) rem[i + j] -= q * den[j];
    rem[i + dn] = 0.0;
  }
  rem.resize(dn);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

int root_multiplicity(const Polynomial& q, Complex z, double tol) {
  int k = 0;
  Polynomial d = q;
  while (!d.is_zero() && d.degree() >= 1) {
    if (std::abs(d(z)) > tol * d.magnitude_at(std::abs(z))) break;
    ++k;
    d = d.derivative();
  }
  return k;
}

namespace {

Complex newton_polish(const Polynomial& q, Complex z) {
  const Polynomial dq = q.derivative();
  double best = std::abs(q(z));
  for (int it = 0; it < 30 && best > 0.0; ++it) {
    const Complex d = dq(z);
    if (d == 0.0) break;
    const Complex step = q(z) / d;
    const Complex next = z - step;
    const double r = std::abs(q(next));
    if (!(r < best)) break;
    z = next;
    best = r;
    if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

bool is_multiple_root(const Polynomial& q, Complex c, int k, double tol) {
  Polynomial d = q;
  for (int j = 1; j < k; ++j) {
    d = d.derivative();
    if (std::abs(d(c)) > tol * d.magnitude_at(std::abs(c))) return false;
  }
  return true;
}

// Splits raw eigenvalues into groups that represent one root each. Groups are
// formed by single linkage at `radius`; a group that fails the derivative test
// is re-split at a smaller radius.
void cluster(const Polynomial& q, std::vector<Complex> pts, double radius, double tol,
             std::vector<std::vector<Complex>>& out) {
  const std::size_t n = pts.size();
  std::vector<int> label(n, -1);
  int groups = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = groups;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < n; ++b) {
        if (label[b] >= 0) continue;
        const double scale = std::max(1.0, std::abs(pts[a]));
        if (std::abs(pts[a] - pts[b]) <= radius * scale) {
          label[b] = groups;
          stack.push_back(b);
        }
      }
    }
    ++groups;
  }
  for (int g = 0; g < groups; ++g) {
    std::vector<Complex> members;
    for (std::size_t i = 0; i < n; ++i)
      if (label[i] == g) members.push_back(pts[i]);
    if (members.size() == 1) {
      out.push_back(std::move(members));
      continue;
    }
    Complex centroid = 0.0;
    for (Complex z : members) centroid += z;
    centroid /= static_cast<double>(members.size());
    if (is_multiple_root(q, centroid, static_cast<int>(members.size()), tol)) {
      out.push_back(std::move(members));
    } else if (radius < 1e-12) {
      for (Complex z : members) out.push_back({z});
    } else {
      cluster(q, std::move(members), radius * 0.1, tol, out);
    }
  }
}

}  // namespace

PoleSet poly_roots(const Polynomial& q, double cluster_tol) {
  if (q.degree() < 1)
    throw InvalidInput("poly_roots needs a polynomial of degree >= 1, got degree " +
                       std::to_string(q.degree()));
  const auto& c = q.coeffs();
  int zeros = 0;
  while (c[zeros] == 0.0) ++zeros;
  const Polynomial reduced(std::vector<double>(c.begin() + zeros, c.end()));

  PoleSet poles;
  if (zeros > 0) poles.push_back({Complex(0.0, 0.0), zeros});

  const int n = reduced.degree();
  if (n >= 1) {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -reduced[i] / reduced.leading();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<Complex> raw(n);
    for (int i = 0; i < n; ++i) raw[i] = solver.eigenvalues()[i];

    std::vector<std::vector<Complex>> groups;
    cluster(reduced, raw, 1e-2, cluster_tol, groups);

    for (const auto& g : groups) {
      Complex centroid = 0.0;
      for (Complex z : g) centroid += z;
      centroid /= static_cast<double>(g.size());
      const int k = static_cast<int>(g.size());
      if (centroid.imag() < 0.0) continue;  // rebuilt from its upper-half mirror
      Polynomial target = reduced;
      for (int j = 1; j < k; ++j) target = target.derivative();
      const bool real = centroid.imag() == 0.0;
      Complex z = newton_polish(target, centroid);
      if (real) z = Complex(z.real(), 0.0);
      poles.push_back({z, k});
      if (!real) poles.push_back({std::conj(z), k});
    }
  }
  std::sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return poles;
}

Polynomial from_poles(const PoleSet& poles, double leading) {
  Polynomial out{leading};
  for (const Pole& p : poles) {
    if (p.location.imag() > 0.0)
      out = out * Polynomial::quadratic_factor(p.location).pow(p.multiplicity);
    else if (p.location.imag() == 0.0)
      out = out * Polynomial::linear_factor(p.location.real()).pow(p.multiplicity);
  }
  return out;
}

}  // namespace wave_nonuniq
