#pragma once

#include <array>
#include <cmath>
#include <ostream>

namespace adsnull {

/// Real 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;

  static constexpr Mat2 identity() { return {1, 0, 0, 1}; }
  static constexpr Mat2 zero() { return {0, 0, 0, 0}; }

  constexpr double det() const { return a * d - b * c; }
  constexpr double trace() const { return a + d; }
  constexpr Mat2 transpose() const { return {a, c, b, d}; }
  /// Inverse assuming det = 1 is not required; general formula.
  Mat2 inverse() const {
    double D = det();
    return {d / D, -b / D, -c / D, a / D};
  }
  /// Rescales to unit determinant (det must be positive).
  Mat2 unimodular() const {
    double s = std::sqrt(det());
    return {a / s, b / s, c / s, d / s};
  }
  std::array<double, 4> entries() const { return {a, b, c, d}; }
};

/// Unit-determinant element of SL(2,R): spinor frames, monodromies, points of AdS.
using Unimodular2 = Mat2;
/// 2x2 matrix viewed as a vector of R^{2,2} with q(X) = -det X.
using Spacetime22 = Mat2;

constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
constexpr Mat2 operator+(const Mat2& x, const Mat2& y) {
  return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}
constexpr Mat2 operator-(const Mat2& x, const Mat2& y) {
  return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}
constexpr Mat2 operator*(double k, const Mat2& x) {
  return {k * x.a, k * x.b, k * x.c, k * x.d};
}
constexpr Mat2 operator*(const Mat2& x, double k) { return k * x; }

inline double max_abs(const Mat2& x) {
  return std::max(std::max(std::abs(x.a), std::abs(x.b)),
                  std::max(std::abs(x.c), std::abs(x.d)));
}
inline double frobenius(const Mat2& x) {
  return std::sqrt(x.a * x.a + x.b * x.b + x.c * x.c + x.d * x.d);
}

inline Mat2 power(Mat2 m, long n) {
  if (n < 0) { m = m.inverse(); n = -n; }
  Mat2 r = Mat2::identity();
  while (n > 0) {
    if (n & 1) r = r * m;
    m = m * m;
    n >>= 1;
  }
  return r;
}

/// exp(t * [[0, b], [c, 0]]) in closed form; (tX)^2 = t^2 bc Id.
inline Mat2 exp_offdiag(double b, double c, double t) {
  double w2 = b * c;
  double C, S;  // exp = C Id + S X
  if (w2 < 0) {
    double w = std::sqrt(-w2);
    C = std::cos(w * t);
    S = std::sin(w * t) / w;
  } else if (w2 > 0) {
    double w = std::sqrt(w2);
    C = std::cosh(w * t);
    S = std::sinh(w * t) / w;
  } else {
    C = 1;
    S = t;
  }
  return {C, S * b, S * c, C};
}

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
}

}  // namespace adsnull
