#pragma once

#include <adsnull/errors.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace adsnull {

inline void check_parameter(double mu) {
  if (!(mu > 0 && mu < 1)) throw DomainError("elliptic parameter must lie in (0,1)");
}

struct CompleteElliptic {
  double K;
  double E;
};

/// K(mu) and E(mu) by the arithmetic-geometric mean; mu is the parameter (k^2).
inline CompleteElliptic complete_elliptic(double mu) {
  check_parameter(mu);
  double a = 1, b = std::sqrt(1 - mu);
  double c2sum = 0.5 * mu;  // sum of 2^{n-1} c_n^2, n = 0
  double pow2 = 0.5;
  for (int n = 0; n < 64; ++n) {
    double c = 0.5 * (a - b);
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2;
    c2sum += pow2 * c * c;
    if (std::abs(c) <= 4 * std::numeric_limits<double>::epsilon() * a) break;
  }
  double K = std::numbers::pi / (2 * a);
  return {K, K * (1 - c2sum)};
}

inline double elliptic_K(double mu) { return complete_elliptic(mu).K; }

struct JacobiValues {
  double sn;
  double cn;
  double dn;
};

namespace detail {
// Descending Landen / AGM evaluation for |u| <= K.
inline JacobiValues sncndn_core(double u, double mu) {
  constexpr int kMax = 40;
  std::array<double, kMax + 1> a{}, c{};
  a[0] = 1;
  double b = std::sqrt(1 - mu);
  c[0] = std::sqrt(mu);
  int n = 0;
  while (std::abs(c[n]) > std::numeric_limits<double>::epsilon() * a[n] && n < kMax) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) phi = 0.5 * (phi + std::asin(c[j] * std::sin(phi) / a[j]));
  double sn = std::sin(phi), cn = std::cos(phi);
  return {sn, cn, std::sqrt(cn * cn + (1 - mu) * sn * sn)};
}
}  // namespace detail

/// Jacobi sn, cn, dn with parameter mu; argument reduced modulo 4K so that
/// periodicity holds to rounding.
inline JacobiValues jacobi_sncndn(double s, double mu, double K) {
  double four = 4 * K;
  double u = s - four * std::round(s / four);  // u in [-2K, 2K]
  // sn(2K - u) = sn(u), cn(2K - u) = -cn(u)
  if (u > K) {
    auto v = detail::sncndn_core(2 * K - u, mu);
    return {v.sn, -v.cn, v.dn};
  }
  if (u < -K) {
    auto v = detail::sncndn_core(-2 * K - u, mu);
    return {v.sn, -v.cn, v.dn};
  }
  return detail::sncndn_core(u, mu);
}

inline JacobiValues jacobi_sncndn(double s, double mu) {
  check_parameter(mu);
  return jacobi_sncndn(s, mu, elliptic_K(mu));
}

/// Parameters of the general Heun equation
///   f'' + (g/z + d/(z-1) + e/(z-a)) f' + (alpha beta z - q)/(z(z-1)(z-a)) f = 0,
/// with e = alpha + beta - gamma - delta + 1.
struct HeunParams {
  double a, q, alpha, beta, gamma, delta;
  double epsilon() const { return alpha + beta - gamma - delta + 1; }
};

struct HeunValue {
  double f;
  double df;
};

namespace detail {

inline void check_heun(const HeunParams& p) {
  if (p.gamma <= 0 && p.gamma == std::floor(p.gamma))
    throw DomainError("Heun gamma must not be a non-positive integer");
  if (!(p.a > 1)) throw DomainError("Heun singular point a must exceed 1");
}

// Sum a Taylor series sum c_k w^k and its derivative; `next` yields c_k.
template <class Gen>
HeunValue sum_series(Gen&& next, double w, int max_terms = 2000) {
  double f = 0, df = 0, wk = 1, wk1 = 0;  // wk = w^k, wk1 = w^{k-1}
  int small = 0;
  for (int k = 0; k < max_terms; ++k) {
    double ck = next(k);
    double tf = ck * wk, td = k * ck * wk1;
    f += tf;
    df += td;
    double scale = std::abs(f) + std::abs(df) + 1e-300;
    if (std::abs(tf) + std::abs(td) <= 1e-17 * scale) {
      if (++small >= 3) return {f, df};
    } else {
      small = 0;
    }
    wk1 = wk;
    wk *= w;
  }
  throw NonConvergence("Heun series did not converge");
}

// Frobenius series at z = 0 normalized by f(0) = 1.
inline HeunValue heun_frobenius(const HeunParams& p, double z) {
  double e = p.epsilon();
  auto next = [&p, e, cm1 = 0.0, c0 = 1.0](int k) mutable {
    if (k == 0) return 1.0;
    int j = k - 1;
    double R = p.a * (j + 1) * (j + p.gamma);
    double Q = j * ((j - 1 + p.gamma) * (1 + p.a) + p.a * p.delta + e);
    double P = (j - 1 + p.alpha) * (j - 1 + p.beta);
    double c1 = ((Q + p.q) * c0 - P * cm1) / R;
    cm1 = c0;
    c0 = c1;
    return c1;
  };
  return sum_series(next, z);
}

// Taylor step from a regular point z0 with data (f, f') to z0 + w.  Works with
// the scaled coefficients d_k = c_k w^k so that steps very close to a singular
// point neither overflow nor underflow.
inline HeunValue heun_taylor(const HeunParams& p, double z0, HeunValue v0, double w) {
  if (w == 0) return v0;
  double a = p.a, e = p.epsilon();
  double p0 = z0 * (z0 - 1) * (z0 - a);
  double p1 = 3 * z0 * z0 - 2 * (1 + a) * z0 + a;
  double p2 = 3 * z0 - (1 + a);
  double p3 = 1;
  double s = p.gamma + p.delta + e;
  double q0 = p.gamma * (z0 - 1) * (z0 - a) + p.delta * z0 * (z0 - a) + e * z0 * (z0 - 1);
  double q1 = 2 * s * z0 - (p.gamma * (1 + a) + p.delta * a + e);
  double q2 = s;
  double r0 = p.alpha * p.beta * z0 - p.q;
  double r1 = p.alpha * p.beta;
  const double w2 = w * w, w3 = w2 * w;
  std::vector<double> d{v0.f, v0.df * w};
  d.reserve(128);
  auto at = [&d](int i) { return i >= 0 ? d[i] : 0.0; };
  double f = d[0] + d[1], df = d[1];
  int small = 0;
  for (int m = 0; m < 2000; ++m) {
    // coefficient of w^m in the ODE gives d_{m+2}
    double rest = (p1 * (m + 1) * m + q0 * (m + 1)) * at(m + 1) * w +
                  (p2 * m * (m - 1) + q1 * m + r0) * at(m) * w2 +
                  (p3 * (m - 1) * (m - 2) + q2 * (m - 1) + r1) * at(m - 1) * w3;
    double dk = -rest / (p0 * (m + 2) * (m + 1));
    d.push_back(dk);
    f += dk;
    df += (m + 2) * dk;
    double scale = std::abs(f) + std::abs(df) + 1e-300;
    if (std::abs(dk) * (m + 3) <= 1e-17 * scale) {
      if (++small >= 3) return {f, df / w};
    } else {
      small = 0;
    }
  }
  throw NonConvergence("Heun series did not converge");
}

}  // namespace detail

/// Local Heun function and derivative at real z <= 1 (z = 1 excluded here;
/// see heun_local).  Frobenius at 0, then recentered Taylor discs of
/// radius 0.4 times the distance to the nearest singular point.
inline HeunValue heun_local_d(const HeunParams& p, double z) {
  detail::check_heun(p);
  if (z >= 1) throw DomainError("heun_local_d requires z < 1");
  constexpr double kFrac = 0.4;
  double first = kFrac * std::min(1.0, p.a);
  if (std::abs(z) <= first) return detail::heun_frobenius(p, z);
  double dir = z > 0 ? 1.0 : -1.0;
  double z0 = dir * first;
  HeunValue v = detail::heun_frobenius(p, z0);
  for (int step = 0; step < 4000; ++step) {
    double dist = std::min({std::abs(z0), std::abs(1 - z0), std::abs(p.a - z0)});
    double r = kFrac * dist;
    if (std::abs(z - z0) <= r) return detail::heun_taylor(p, z0, v, z - z0);
    v = detail::heun_taylor(p, z0, v, dir * r);
    z0 += dir * r;
  }
  throw NonConvergence("Heun continuation exceeded the step budget");
}

struct RichardsonResult {
  double value;
  double error;
};

/// Richardson extrapolation in sqrt(eps) of samples taken at eps = 2^{-k0-i}.
inline RichardsonResult richardson_sqrt_samples(const std::vector<double>& x) {
  const double r = std::numbers::sqrt2;
  const std::size_t n = x.size();
  std::vector<std::vector<double>> T(n);
  for (std::size_t i = 0; i < n; ++i) {
    T[i].resize(i + 1);
    T[i][0] = x[i];
    double rj = 1;
    for (std::size_t j = 1; j <= i; ++j) {
      rj *= r;
      T[i][j] = T[i][j - 1] + (T[i][j - 1] - T[i - 1][j - 1]) / (rj - 1);
    }
  }
  RichardsonResult best{T[0][0], std::numeric_limits<double>::infinity()};
  for (std::size_t i = 1; i < n; ++i) {
    double err = std::abs(T[i][i] - T[i - 1][i - 1]);
    if (err < best.error) best = {T[i][i], err};
  }
  return best;
}

/// Sample epsilons used by the one-sided limits at z = 1.
inline std::vector<double> limit_epsilons(int k0 = 8, int levels = 12) {
  std::vector<double> e(levels);
  for (int i = 0; i < levels; ++i) e[i] = std::ldexp(1.0, -(k0 + i));
  return e;
}

/// Limit of F(eps) as eps -> 0+ for F with an expansion in powers of sqrt(eps).
template <class F>
RichardsonResult richardson_sqrt(F&& fn) {
  std::vector<double> x;
  for (double e : limit_epsilons()) x.push_back(fn(e));
  return richardson_sqrt_samples(x);
}

/// Local Heun function; z = 1 is the one-sided limit from below.
inline double heun_local(const HeunParams& p, double z, double limit_tol = 1e-7) {
  if (z > 1) throw DomainError("heun_local requires z <= 1");
  if (z < 1) return heun_local_d(p, z).f;
  auto lim = richardson_sqrt([&](double eps) { return heun_local_d(p, 1 - eps).f; });
  if (!(lim.error <= limit_tol * std::max(1.0, std::abs(lim.value))))
    throw LimitUnstable("Heun limit at z=1 did not stabilize");
  return lim.value;
}

/// Parameter sets of the two Heun functions building the Lame solutions.
inline HeunParams heun_params_1(double mu, double h) {
  return {1 / mu, (mu - h) / (4 * mu), 0.0, 1.5, 0.5, 0.5};
}
inline HeunParams heun_params_2(double mu, double h) {
  return {1 / mu, (1 - h + 4 * mu) / (4 * mu), 0.5, 2.0, 1.5, 0.5};
}

struct HeunPair {
  double hl1;
  double hl2;
};

inline HeunPair heun_pair(double mu, double h, double z) {
  check_parameter(mu);
  if (z < 0 || z > 1) throw DomainError("heun_pair requires z in [0,1]");
  return {heun_local(heun_params_1(mu, h), z), heun_local(heun_params_2(mu, h), z)};
}

}  // namespace adsnull
