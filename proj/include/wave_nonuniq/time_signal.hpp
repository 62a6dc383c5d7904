#pragma once

#include <span>
#include <vector>

namespace wave_nonuniq {

/// One closed-form term  t^k e^{a t} (alpha cos(b t) + beta sin(b t)).
struct SignalTerm {
  int k = 0;
  double a = 0.0;  // decay rate, 1/time
  double b = 0.0;  // angular frequency, rad/time
  double alpha = 0.0;
  double beta = 0.0;

  double operator()(double t) const;
  friend bool operator==(const SignalTerm&, const SignalTerm&) = default;
};

/// Finite sum of SignalTerms in canonical form: b >= 0, no two terms share
/// (k, a, b), no term with both amplitudes zero, terms sorted by (k, a, b).
class TimeSignal {
 public:
  TimeSignal() = default;
  explicit TimeSignal(std::vector<SignalTerm> terms);

  static TimeSignal exponential(double a, double amplitude = 1.0);

  const std::vector<SignalTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  double operator()(double t) const;
  std::vector<double> sample(std::span<const double> t) const;

  TimeSignal scaled(double s) const;
  friend TimeSignal operator+(const TimeSignal& x, const TimeSignal& y);

  /// Largest |amplitude| difference between matched terms (unmatched terms
  /// count with their full amplitude); exponents match within a relative 1e-9.
  static double distance(const TimeSignal& x, const TimeSignal& y);

 private:
  std::vector<SignalTerm> terms_;
};

}  // namespace wave_nonuniq
