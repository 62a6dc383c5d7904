#pragma once

#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

namespace wave_nonuniq {

using Complex = std::complex<double>;

/// Real polynomial in the Laplace variable, coefficients in ascending degree.
///
/// Trailing exact zeros are trimmed on construction, so the last stored
/// coefficient is nonzero unless the polynomial is identically zero (in which
/// case no coefficients are stored and degree() is -1).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  static Polynomial constant(double c);
  /// p - r
  static Polynomial linear_factor(double r);
  /// (p - z)(p - conj z) = p^2 - 2 Re(z) p + |z|^2
  static Polynomial quadratic_factor(Complex z);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  /// Coefficient of p^i; zero past the degree.
  double operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0.0; }
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  double max_abs_coeff() const;

  double operator()(double x) const;
  Complex operator()(Complex z) const;
  /// Sum of |c_i| |z|^i, the natural scale against which |q(z)| is judged.
  double magnitude_at(double abs_z) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);
  Polynomial operator-() const { return -1.0 * *this; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(int n) const;

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// Quotient and remainder of polynomial long division. Throws InvalidInput on
/// a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den);

/// A root location with its multiplicity.
struct Pole {
  Complex location;
  int multiplicity = 1;
};

/// Distinct roots of a denominator. For real-coefficient input the complex
/// entries come in exact conjugate pairs and multiplicities sum to the degree.
using PoleSet = std::vector<Pole>;

/// Default clustering tolerance: a group of nearby eigenvalues is merged into
/// one multiple root when the lower derivatives vanish at the centroid to
/// this relative accuracy.
inline constexpr double kRootClusterTol = 1e-8;

/// Roots of q from the eigenvalues of its companion matrix, Newton-polished
/// and clustered into multiple roots. Throws InvalidInput for degree < 1.
PoleSet poly_roots(const Polynomial& q, double cluster_tol = kRootClusterTol);

/// Multiplicity of z as a root of q: the count of leading derivatives that
/// vanish at z to relative accuracy tol.
int root_multiplicity(const Polynomial& q, Complex z, double tol = kRootClusterTol);

/// Leading coefficient times the product over poles of (p - r)^k. Conjugate
/// pairs are combined into real quadratics; poles with negative imaginary
/// part are assumed to mirror an upper-half pole and are skipped.
Polynomial from_poles(const PoleSet& poles, double leading = 1.0);

}  // namespace wave_nonuniq
