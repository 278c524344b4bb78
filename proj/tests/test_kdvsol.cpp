#include <adsnull/jetalg.hpp>
#include <adsnull/kdvsol.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace adsnull;

namespace {

// fourth-order central first derivative
template <class F>
double d1(F f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

// fourth-order central third derivative
template <class F>
double d3(F f, double x, double h) {
  return (f(x - 3 * h) - 8 * f(x - 2 * h) + 13 * f(x - h) - 13 * f(x + h) + 8 * f(x + 2 * h) -
          f(x + 3 * h)) /
         (8 * h * h * h);
}

const auto kStationary = StationaryBending::make(0.9, 0.9300299177, 2.225980872);

}  // namespace

TEST(Stationary, ValueAtOriginAndExtremes) {
  const auto& b = kStationary;
  double d = b.h_minus - b.h_plus;
  EXPECT_NEAR(stationary_bending(b, 0), -(b.h_minus + b.h_plus) / d, 1e-15);
  double smax = elliptic_K(b.mu) / b.sigma();
  EXPECT_NEAR(stationary_bending(b, smax), (4 * b.mu - b.h_minus - b.h_plus) / d, 1e-13);
  double lo = 1e9, hi = -1e9;
  for (int i = 0; i <= 400; ++i) {
    double k = stationary_bending(b, b.period() * i / 400);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  EXPECT_NEAR(lo, -(b.h_minus + b.h_plus) / d, 1e-12);
  EXPECT_LE(hi, (4 * b.mu - b.h_minus - b.h_plus) / d + 1e-12);
  for (double s : {0.2, 1.7}) EXPECT_NEAR(stationary_bending(b, s), stationary_bending(b, s + b.period()), 1e-12);
  EXPECT_THROW(StationaryBending::make(0.9, 2.0, 1.0), DomainError);
}

TEST(Stationary, ThirdOrderOdeResidual) {
  const auto& b = kStationary;
  for (int i = 0; i <= 200; ++i) EXPECT_LE(std::abs(stationary_ode_residual(b, b.period() * i / 200)), 1e-8);
}

TEST(Stationary, AnalyticDerivativesMatchDifferences) {
  const auto& b = kStationary;
  auto k = [&](double s) { return stationary_bending(b, s); };
  for (double s : {0.15, 0.8, 2.1}) {
    auto j = stationary_jet(b, s);
    EXPECT_NEAR(j.ks, d1(k, s, 1e-3), 1e-8);
    EXPECT_NEAR(j.ksss, d3(k, s, 1e-2), 1e-5);
  }
}

TEST(Stationary, TravelingWaveSolvesKdV) {
  auto f = stationary_field(kStationary);
  for (double s : {0.0, 0.4, 1.3})
    for (double t : {0.0, 0.25, 1.0}) EXPECT_LE(std::abs(f(s, t).kdv_residual()), 1e-6);
  // and the symbolic KdV operator gives -2 ell kappa'
  auto j = stationary_jet(kStationary, 0.7);
  EXPECT_NEAR(evaluate(kdv_rhs(1), {j.k, j.ks, j.kss, j.ksss}), -2 * kStationary.ell * j.ks, 1e-9);
}

class Kksh : public ::testing::Test {
protected:
  KkshSpec sp = kksh_mn(0.6150396634, 1, 6, 2.0);
};

TEST_F(Kksh, PeriodicityIdentityAndPeriod) {
  EXPECT_NEAR(std::pow(sp.mu, 0.25) * elliptic_K(sp.mu), 6 * std::pow(sp.tau, 0.25) * elliptic_K(sp.tau), 1e-10);
  EXPECT_NEAR(sp.s_period(), 2 * elliptic_K(sp.mu), 1e-14);
  EXPECT_NEAR(sp.s_period(), 3.93225, 1e-3);
  for (double s : {0.1, 1.9})
    for (double t : {0.0, 0.3}) EXPECT_NEAR(kksh_kappa(sp, s, t), kksh_kappa(sp, s + sp.s_period(), t), 1e-8);
}

TEST_F(Kksh, MkdvResidualByDifferences) {
  auto u = [&](double s, double t) { return kksh_u(sp, s, t); };
  for (double s : {0.2, 1.0, 2.5})
    for (double t : {0.0, 0.1}) {
      double us = d1([&](double x) { return u(x, t); }, s, 1e-3);
      double usss = d3([&](double x) { return u(x, t); }, s, 2e-3);
      double ut = d1([&](double y) { return u(s, y); }, t, 1e-5);
      double v = u(s, t);
      EXPECT_LE(std::abs(ut - 6 * v * v * us + usss), 1e-5 * std::max(1.0, std::abs(ut))) << s << ',' << t;
      EXPECT_NEAR(mkdv_residual(sp, s, t), 0, 1e-8);
    }
}

TEST_F(Kksh, KdVResidualByTimeDifferences) {
  for (double s : {0.05, 0.9, 3.1})
    for (double t : {0.0, 0.2}) {
      auto j = kksh_kappa_jet(sp, s, t, 3);
      double kt = d1([&](double y) { return kksh_kappa(sp, s, y); }, t, 1e-5);
      double r = kt + j[3] - 6 * j[0] * j[1];
      EXPECT_LE(std::abs(r), 1e-4 * std::max(1.0, std::abs(kt)));
      EXPECT_NEAR(kksh_field(sp)(s, t).kt, kt, 1e-4 * std::max(1.0, std::abs(kt)));
    }
}

TEST_F(Kksh, PhiStaysInsideUnitInterval) {
  double amp = sp.amplitude();
  ASSERT_LT(amp, 1);
  auto r = kksh_series<0>(sp, 0.0, 0.0);
  EXPECT_LE(std::abs(r.phi.value()), amp);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> S(-10, 10);
  for (int i = 0; i < 500; ++i) EXPECT_LE(std::abs(kksh_series<0>(sp, S(rng), S(rng)).phi.value()), amp);
}

TEST_F(Kksh, UAtCommonZero) {
  // at s = t = 0 both sn waves vanish, so u = -2 amp (f+' f- + f+ f-') = 0
  EXPECT_NEAR(kksh_u(sp, 0, 0), 0, 1e-15);
  // with a shift, only the linear terms of arctanh survive when phi = 0
  double s = 2 * elliptic_K(sp.mu) / sp.w_plus();
  double t = 0;
  auto sn = [](double x, double m) { return jacobi_sncndn(x, m); };
  auto a = sn(sp.w_plus() * s, sp.mu);
  auto b = sn(sp.w_minus() * s, sp.tau);
  double phi = sp.amplitude() * a.sn * b.sn;
  double phis = sp.amplitude() * (sp.w_plus() * a.cn * a.dn * b.sn + sp.w_minus() * a.sn * b.cn * b.dn);
  EXPECT_NEAR(kksh_u(sp, s, t), -2 * phis / (1 - phi * phi), 1e-12);
}

TEST(KkshDegenerate, TravelingWaveWhenParametersCoincide) {
  KkshSpec sp{0.5, 0.5, 1.5, std::nullopt, true};
  sp.validate();
  double c = 4 * sp.h * sp.h * (1 + sp.mu);
  for (double s : {0.1, 0.7})
    for (double t : {0.05, 0.3}) EXPECT_NEAR(kksh_kappa(sp, s, t), kksh_kappa(sp, s + c * t, 0), 1e-8);
  KkshSpec bad{0.5, 0.5, 1.5, std::nullopt};
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(GInverse, InverseMonotoneAndCauchyRoute) {
  for (double y : {0.2, 0.9, 1.4, 1.9}) {
    double t = g_inverse(y);
    EXPECT_NEAR(g_function(t), y, 1e-10);
    EXPECT_NEAR(g_inverse_ode(y), t, 1e-7) << y;
  }
  EXPECT_NEAR(g_inverse(elliptic_K(0.5) / std::pow(2.0, 0.25)), 0.5, 1e-10);
  EXPECT_LT(g_inverse(0.5), g_inverse(0.6));
  EXPECT_THROW(g_inverse(0.0), OutOfRange);
  EXPECT_THROW(g_inverse(100.0), OutOfRange);
}

TEST(TauMn, DiagonalAndRange) {
  EXPECT_NEAR(tau_mn(0.37, 1, 1), 0.37, 1e-12);
  EXPECT_THROW(kksh_mn(0.37, 1, 1, 1.0), DomainError);
  EXPECT_THROW(tau_mn(0.37, 3, 3), DomainError);
  double t = tau_mn(0.61500934, 1, 6);
  EXPECT_GT(t, 0);
  EXPECT_LT(t, 1);
  EXPECT_THROW(tau_mn(0.5, 0, 2), DomainError);
  EXPECT_THROW(kksh_mn(0.5, 2, 2, 1.0), DomainError);
}

TEST(TimePeriod, ResidualSymmetry) {
  for (auto [mu, tau] : {std::pair{0.3, 0.05}, {0.8, 0.4}})
    for (auto [p, r] : {std::pair{1, 2}, {3, 5}}) {
      double a = time_period_residual(mu, tau, p, r);
      double b = time_period_residual(tau, mu, r, p);
      EXPECT_TRUE(std::isfinite(a));
      EXPECT_NEAR(b, -std::pow(tau / mu, 0.75) * a, 1e-11 * std::max(1.0, std::abs(a)));
    }
}

TEST(TimePeriod, DoublyPeriodicIntersection) {
  auto x = find_doubly_periodic(1, 6, 2, 5, {0.01, 0.98});
  ASSERT_TRUE(x);
  EXPECT_NE(x->first, x->second);
  EXPECT_NEAR(time_period_residual(x->first, x->second, 2, 5), 0, 1e-8);
  EXPECT_NEAR(x->second, tau_mn(x->first, 1, 6), 1e-12);
  EXPECT_FALSE(find_doubly_periodic(1, 6, 1, 1, {0.01, 0.98}));
}
