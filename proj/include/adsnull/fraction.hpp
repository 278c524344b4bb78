#pragma once

#include <adsnull/errors.hpp>

#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace adsnull {

/// Reduced fraction num/den with den > 0.
struct Fraction {
  long num = 0;
  long den = 1;

  static Fraction make(long n, long d) {
    if (d < 0) { n = -n; d = -d; }
    long g = std::gcd(n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Parses "p/q" or an integer "p".
inline Fraction parse_fraction(const std::string& text) {
  try {
    auto slash = text.find('/');
    std::size_t used = 0;
    long n = std::stol(text.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? text.size() : slash)) throw std::invalid_argument(text);
    if (slash == std::string::npos) return {n, 1};
    std::string ds = text.substr(slash + 1);
    long d = std::stol(ds, &used);
    if (used != ds.size() || d == 0) throw std::invalid_argument(text);
    return Fraction::make(n, d);
  } catch (const std::logic_error&) {
    throw DomainError("not a fraction: '" + text + "'");
  }
}

/// Best continued-fraction convergent p/q of x with q <= cap, accepted only
/// if |x - p/q| <= tol.
inline std::optional<Fraction> rationalize(double x, long cap, double tol) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  std::optional<Fraction> best;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > cap) break;
    if (std::abs(x - static_cast<double>(p2) / static_cast<double>(q2)) <= tol) {
      best = Fraction::make(p2, q2);
      break;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1 / frac;
  }
  return best;
}

}  // namespace adsnull
