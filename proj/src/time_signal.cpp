#include "wave_nonuniq/time_signal.hpp"

#include <algorithm>
#include <cmath>

namespace wave_nonuniq {

namespace {

bool same_exponent(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

bool same_shape(const SignalTerm& x, const SignalTerm& y, double tol) {
  return x.k == y.k && same_exponent(x.a, y.a, tol) && same_exponent(x.b, y.b, tol);
}

}  // namespace

double SignalTerm::operator()(double t) const {
  double tk = 1.0;
  for (int i = 0; i < k; ++i) tk *= t;
  const double osc = b == 0.0 ? alpha : alpha * std::cos(b * t) + beta * std::sin(b * t);
  return tk * std::exp(a * t) * osc;
}

TimeSignal::TimeSignal(std::vector<SignalTerm> terms) {
  for (SignalTerm& t : terms) {
    if (t.b < 0.0) {
      t.b = -t.b;
      t.beta = -t.beta;
    }
    if (t.b == 0.0) t.beta = 0.0;
  }
  std::sort(terms.begin(), terms.end(), [](const SignalTerm& x, const SignalTerm& y) {
    if (x.k != y.k) return x.k < y.k;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  for (const SignalTerm& t : terms) {
    auto match = std::find_if(terms_.begin(), terms_.end(),
                              [&](const SignalTerm& u) { return same_shape(t, u, 1e-12); });
    if (match != terms_.end()) {
      match->alpha += t.alpha;
      match->beta += t.beta;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const SignalTerm& t) { return t.alpha == 0.0 && t.beta == 0.0; });
}

TimeSignal TimeSignal::exponential(double a, double amplitude) {
  return TimeSignal({SignalTerm{0, a, 0.0, amplitude, 0.0}});
}

double TimeSignal::operator()(double t) const {
  double acc = 0.0;
  for (const SignalTerm& term : terms_) acc += term(t);
  return acc;
}

std::vector<double> TimeSignal::sample(std::span<const double> t) const {
  std::vector<double> out(t.size());
  std::transform(t.begin(), t.end(), out.begin(), [this](double s) { return (*this)(s); });
  return out;
}

TimeSignal TimeSignal::scaled(double s) const {
  std::vector<SignalTerm> terms = terms_;
  for (SignalTerm& t : terms) {
    t.alpha *= s;
    t.beta *= s;
  }
  return TimeSignal(std::move(terms));
}

TimeSignal operator+(const TimeSignal& x, const TimeSignal& y) {
  std::vector<SignalTerm> terms = x.terms_;
  terms.insert(terms.end(), y.terms_.begin(), y.terms_.end());
  return TimeSignal(std::move(terms));
}

double TimeSignal::distance(const TimeSignal& x, const TimeSignal& y) {
  double worst = 0.0;
  std::vector<bool> used(y.terms_.size(), false);
  for (const SignalTerm& t : x.terms_) {
    bool found = false;
    for (std::size_t j = 0; j < y.terms_.size(); ++j) {
      if (used[j] || !same_shape(t, y.terms_[j], 1e-9)) continue;
      used[j] = true;
      found = true;
      worst = std::max({worst, std::abs(t.alpha - y.terms_[j].alpha),
                        std::abs(t.beta - y.terms_[j].beta)});
      break;
    }
    if (!found) worst = std::max({worst, std::abs(t.alpha), std::abs(t.beta)});
  }
  for (std::size_t j = 0; j < y.terms_.size(); ++j)
    if (!used[j]) worst = std::max({worst, std::abs(y.terms_[j].alpha), std::abs(y.terms_[j].beta)});
  return worst;
}

}  // namespace wave_nonuniq
