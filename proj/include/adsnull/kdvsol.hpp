#pragma once

#include <adsnull/config.hpp>
#include <adsnull/errors.hpp>
#include <adsnull/roots.hpp>
#include <adsnull/specfun.hpp>
#include <adsnull/taylor.hpp>

#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>

#include <boost/numeric/odeint.hpp>

namespace adsnull {

/// Jet of a bending field kappa(s, t) at one point.
struct BendingJet {
  double k = 0, ks = 0, kss = 0, ksss = 0, kt = 0;
  double kdv_residual() const { return kt + ksss - 6 * k * ks; }
};

/// kappa(s, t) with analytic derivatives.
using BendingField = std::function<BendingJet(double s, double t)>;

// ---------------------------------------------------------------- stationary

/// Periodic stationary bending kappa(s) = (4 mu sn^2(sigma s) - h- - h+)/(h- - h+).
struct StationaryBending {
  double mu;
  double h_plus;
  double h_minus;
  double ell;

  static StationaryBending make(double mu, double h_plus, double h_minus) {
    check_parameter(mu);
    if (!(h_minus > h_plus)) throw DomainError("stationary bending needs h_minus > h_plus");
    double d = h_minus - h_plus;
    return {mu, h_plus, h_minus, (4 * (1 + mu) - 3 * (h_minus + h_plus)) / d};
  }
  /// Scale of the sn argument, sqrt(2/(h- - h+)).
  double sigma() const { return std::sqrt(2 / (h_minus - h_plus)); }
  double period() const { return 2 * elliptic_K(mu) / sigma(); }
};

template <std::size_t N>
Taylor<N> stationary_series(const StationaryBending& b, double s) {
  double K = elliptic_K(b.mu), sg = b.sigma(), d = b.h_minus - b.h_plus;
  auto j = jacobi_taylor<N>(sg * s, sg, b.mu, K);
  return (4 * b.mu * (j.sn * j.sn) - (b.h_minus + b.h_plus)) * (1 / d);
}

inline double stationary_bending(const StationaryBending& b, double s) {
  return stationary_series<0>(b, s).value();
}

/// kappa, kappa', kappa'', kappa''' at s.
inline BendingJet stationary_jet(const StationaryBending& b, double s) {
  auto t = stationary_series<3>(b, s);
  return {t.derivative(0), t.derivative(1), t.derivative(2), t.derivative(3), 0};
}

/// kappa''' + 2 ell kappa' - 6 kappa kappa' of the stationary ODE.
inline double stationary_ode_residual(const StationaryBending& b, double s) {
  auto j = stationary_jet(b, s);
  return j.ksss + 2 * b.ell * j.ks - 6 * j.k * j.ks;
}

/// Traveling wave kappa(s + 2 ell t).
inline BendingField stationary_field(const StationaryBending& b) {
  return [b](double s, double t) {
    auto j = stationary_jet(b, s + 2 * b.ell * t);
    j.kt = 2 * b.ell * j.ks;
    return j;
  };
}

// ---------------------------------------------------------------------- KKSH

/// KKSH solution data: elliptic parameters mu, tau, homothety h.
struct KkshSpec {
  double mu;
  double tau;
  double h;
  std::optional<std::pair<int, int>> quantum;  // (m, n)
  bool allow_degenerate = false;               // permit mu == tau (tests only)

  void validate() const {
    check_parameter(mu);
    check_parameter(tau);
    if (!(h > 0)) throw DomainError("KKSH homothety must be positive");
    if (!allow_degenerate && std::abs(mu - tau) < 1e-12) throw DomainError("KKSH requires mu != tau");
  }
  double amplitude() const { return std::pow(mu * tau, 0.25); }
  double w_plus() const { return h; }
  double w_minus() const { return std::pow(mu / tau, 0.25) * h; }
  double c_plus() const {
    return h * h * (1 + mu + 3 * std::sqrt(mu / tau) * (1 + tau));
  }
  double c_minus() const {
    return h * h * (std::sqrt(mu / tau) * (1 + tau) + 3 * (1 + mu));
  }
  /// Least s-period 4m K(mu)/h when quantum numbers are set.
  double s_period() const {
    int m = quantum ? quantum->first : 1;
    return 4.0 * m * elliptic_K(mu) / h;
  }
};

/// Series in s (about s) of u, u_t, kappa, kappa_t.
template <std::size_t N>
struct KkshSeries {
  Taylor<N> phi, u, ut, kappa, kappa_t;
};

template <std::size_t N>
KkshSeries<N> kksh_series(const KkshSpec& sp, double s, double t) {
  double wp = sp.w_plus(), wm = sp.w_minus(), cp = sp.c_plus(), cm = sp.c_minus();
  double Kp = elliptic_K(sp.mu), Km = elliptic_K(sp.tau);
  // reduce the time phase first so that the s-dependence is not rounded against a large c t
  auto phase = [](double w, double s, double ct, double K) { return std::remainder(w * ct, 4 * K) + w * s; };
  auto fp = jacobi_taylor<N>(phase(wp, s, cp * t, Kp), wp, sp.mu, Kp).sn;
  auto fm = jacobi_taylor<N>(phase(wm, s, cm * t, Km), wm, sp.tau, Km).sn;
  double amp = sp.amplitude();
  KkshSeries<N> r;
  r.phi = amp * (fp * fm);
  auto dphi = differentiate(r.phi);
  auto phit = amp * (cp * (differentiate(fp) * fm) + cm * (fp * differentiate(fm)));
  auto den = 1.0 - r.phi * r.phi;
  r.u = -2.0 * (dphi / den);
  r.ut = -2.0 * differentiate(phit / den);
  r.kappa = differentiate(r.u) + r.u * r.u;
  r.kappa_t = differentiate(r.ut) + 2.0 * (r.u * r.ut);
  return r;
}

inline double kksh_u(const KkshSpec& sp, double s, double t) {
  return kksh_series<1>(sp, s, t).u.value();
}

inline double kksh_kappa(const KkshSpec& sp, double s, double t) {
  return kksh_series<2>(sp, s, t).kappa.value();
}

/// Defocusing mKdV residual u_t - 6 u^2 u_s + u_sss.
inline double mkdv_residual(const KkshSpec& sp, double s, double t) {
  auto r = kksh_series<6>(sp, s, t);
  double u = r.u.value();
  return r.ut.value() - 6 * u * u * r.u.derivative(1) + r.u.derivative(3);
}

/// kappa and its first `order` s-derivatives (order <= 8).
inline std::vector<double> kksh_kappa_jet(const KkshSpec& sp, double s, double t, int order) {
  if (order < 0 || order > 8) throw DomainError("kksh_kappa_jet supports orders 0..8");
  auto r = kksh_series<10>(sp, s, t);
  std::vector<double> j;
  for (int k = 0; k <= order; ++k) j.push_back(r.kappa.derivative(k));
  return j;
}

inline BendingField kksh_field(const KkshSpec& sp) {
  return [sp](double s, double t) {
    auto r = kksh_series<7>(sp, s, t);
    return BendingJet{r.kappa.derivative(0), r.kappa.derivative(1), r.kappa.derivative(2),
                      r.kappa.derivative(3), r.kappa_t.value()};
  };
}

// --------------------------------------------------------- periodicity curves

/// g(tau) = tau^{1/4} K(tau).
inline double g_function(double tau) { return std::pow(tau, 0.25) * elliptic_K(tau); }

/// Inverse of g on (0,1) by bracketed root finding on [1e-12, 1 - 1e-12].
inline double g_inverse(double y) {
  if (!(y > 0)) throw OutOfRange("g_inverse needs y > 0");
  const double lo = 1e-12, hi = 1 - 1e-12;
  double glo = g_function(lo), ghi = g_function(hi);
  if (y < glo || y > ghi) throw OutOfRange("g_inverse argument outside the bracket range");
  auto f = [y](double tau) { return g_function(tau) - y; };
  // solve in log(tau) so that small tau keeps relative accuracy
  auto fl = [&f](double x) { return f(std::exp(x)); };
  double x = bracketed_root(fl, std::log(lo), std::log(hi), glo - y, ghi - y, 1e-15);
  return std::exp(x);
}

/// Cross-check: the initial-value route to g^{-1}, integrating
/// dtau/dy = 4(tau-1) tau^{3/4} / ((1-tau)K(tau) - 2E(tau)) from y0 = K(1/2)/2^{1/4}.
inline double g_inverse_ode(double y) {
  namespace odeint = boost::numeric::odeint;
  double y0 = elliptic_K(0.5) / std::pow(2.0, 0.25);
  double tau = 0.5;
  auto rhs = [](const double& x, double& dx, double) {
    auto ke = complete_elliptic(x);
    dx = 4 * (x - 1) * std::pow(x, 0.75) / ((1 - x) * ke.K - 2 * ke.E);
  };
  if (y == y0) return tau;
  odeint::integrate_adaptive(
      odeint::make_controlled(1e-14, 1e-13, odeint::runge_kutta_dopri5<double>()), rhs, tau, y0,
      y, (y > y0 ? 1e-4 : -1e-4));
  return tau;
}

/// tau_{m,n}(mu) = g^{-1}((m/n) mu^{1/4} K(mu)).
inline double tau_mn(double mu, int m, int n) {
  check_parameter(mu);
  if (m <= 0 || n <= 0 || std::gcd(m, n) != 1)
    throw DomainError("quantum numbers must be coprime positive integers");
  return g_inverse(static_cast<double>(m) / n * g_function(mu));
}

inline KkshSpec kksh_mn(double mu, int m, int n, double h) {
  KkshSpec sp{mu, tau_mn(mu, m, n), h, std::make_pair(m, n)};
  sp.validate();
  return sp;
}

/// LHS - RHS of the t-periodicity condition D_{p,r}.
inline double time_period_residual(double mu, double tau, int p, int r) {
  double q = std::sqrt(mu / tau);
  double lhs = std::pow(mu / tau, 0.25) * ((1 + tau) * q + 3 * (1 + mu)) * p * elliptic_K(mu);
  double rhs = (1 + mu + 3 * (1 + tau) * q) * r * elliptic_K(tau);
  return lhs - rhs;
}

/// Intersection of D_{p,r} with C_{m,n}: first sign change of the residual along
/// mu -> (mu, tau_{m,n}(mu)) over `subdivisions` cells of the bracket.
inline std::optional<std::pair<double, double>> find_doubly_periodic(
    int m, int n, int p, int r, std::pair<double, double> mu_bracket, int subdivisions = 64) {
  auto f = [&](double mu) { return time_period_residual(mu, tau_mn(mu, m, n), p, r); };
  double a = mu_bracket.first, fa = f(a);
  for (int i = 1; i <= subdivisions; ++i) {
    double b = mu_bracket.first + (mu_bracket.second - mu_bracket.first) * i / subdivisions;
    double fb = f(b);
    if ((fa > 0) != (fb > 0) || fa == 0) {
      double mu = bracketed_root(f, a, b, fa, fb, 1e-15);
      double tau = tau_mn(mu, m, n);
      if (std::abs(mu - tau) < 1e-12) return std::nullopt;
      return std::make_pair(mu, tau);
    }
    a = b;
    fa = fb;
  }
  return std::nullopt;
}

}  // namespace adsnull
