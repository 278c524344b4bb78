#include <adsnull/specfun.hpp>
#include <adsnull/taylor.hpp>

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace adsnull;

TEST(Elliptic, CompleteIntegralsMatchBoost) {
  for (double mu : {1e-6, 0.1, 0.4, 0.5, 0.9, 0.999}) {
    auto c = complete_elliptic(mu);
    double k = std::sqrt(mu);
    EXPECT_NEAR(c.K, boost::math::ellint_1(k), 1e-14 * c.K) << mu;
    EXPECT_NEAR(c.E, boost::math::ellint_2(k), 1e-14) << mu;
  }
  EXPECT_NEAR(elliptic_K(0.5), 1.854074677301372, 1e-15);
}

TEST(Elliptic, LegendreRelation) {
  // E K' + E' K - K K' = pi/2
  for (double mu : {0.2, 0.5, 0.7}) {
    auto a = complete_elliptic(mu), b = complete_elliptic(1 - mu);
    EXPECT_NEAR(a.E * b.K + b.E * a.K - a.K * b.K, std::numbers::pi / 2, 1e-14);
  }
}

TEST(Elliptic, ParameterOutsideUnitIntervalThrows) {
  EXPECT_THROW(complete_elliptic(0.0), DomainError);
  EXPECT_THROW(complete_elliptic(1.0), DomainError);
  EXPECT_THROW(jacobi_sncndn(0.3, -0.2), DomainError);
}

TEST(Jacobi, MatchesBoost) {
  for (double mu : {0.05, 0.4, 0.9}) {
    double k = std::sqrt(mu);
    for (double s = -9.0; s <= 9.0; s += 0.37) {
      auto v = jacobi_sncndn(s, mu);
      double cn, dn;
      double sn = boost::math::jacobi_elliptic(k, s, &cn, &dn);
      EXPECT_NEAR(v.sn, sn, 1e-13);
      EXPECT_NEAR(v.cn, cn, 1e-13);
      EXPECT_NEAR(v.dn, dn, 1e-13);
    }
  }
}

TEST(Jacobi, SpecialValues) {
  double mu = 0.5, K = elliptic_K(mu);
  auto v = jacobi_sncndn(K, mu);
  EXPECT_NEAR(v.sn, 1, 1e-15);
  EXPECT_NEAR(v.cn, 0, 1e-15);
  EXPECT_NEAR(v.dn, std::sqrt(1 - mu), 1e-15);
  // sn = -1 at 3K: the zeros and extremes alternate with odd multiples of K
  EXPECT_NEAR(jacobi_sncndn(3 * K, mu).sn, -1, 1e-15);
  EXPECT_NEAR(jacobi_sncndn(2 * K, mu).sn, 0, 1e-15);
}

TEST(Jacobi, PeriodicityHoldsToRounding) {
  double mu = 0.7, K = elliptic_K(mu);
  for (double s : {0.1, 1.3, -2.2}) {
    for (int p : {1, 5, 40}) {
      auto a = jacobi_sncndn(s, mu, K), b = jacobi_sncndn(s + 4 * K * p, mu, K);
      EXPECT_NEAR(a.sn, b.sn, 1e-12);
      EXPECT_NEAR(a.cn, b.cn, 1e-12);
    }
  }
}

TEST(Jacobi, TaylorSeriesDerivatives) {
  double mu = 0.6, K = elliptic_K(mu), x0 = 0.8;
  auto j = jacobi_taylor<6>(x0, 1.0, mu, K);
  auto v = jacobi_sncndn(x0, mu, K);
  EXPECT_NEAR(j.sn.derivative(1), v.cn * v.dn, 1e-14);
  EXPECT_NEAR(j.cn.derivative(1), -v.sn * v.dn, 1e-14);
  EXPECT_NEAR(j.dn.derivative(1), -mu * v.sn * v.cn, 1e-14);
  // sn'' = -(1 + mu) sn + 2 mu sn^3
  EXPECT_NEAR(j.sn.derivative(2), -(1 + mu) * v.sn + 2 * mu * std::pow(v.sn, 3), 1e-13);
  // the truncated series reproduces nearby values
  double d = 0.05;
  double approx = 0, dk = 1;
  for (double c : j.sn.c) {
    approx += c * dk;
    dk *= d;
  }
  EXPECT_NEAR(approx, jacobi_sncndn(x0 + d, mu, K).sn, 1e-10);
}

TEST(Taylor, DivisionInvertsMultiplication) {
  Taylor<5> x = Taylor<5>::variable(0.3), y = 1.0 + x * x;
  auto z = (x * y) / y;
  for (std::size_t k = 0; k <= 5; ++k) EXPECT_NEAR(z.c[k], x.c[k], 1e-15);
}

TEST(Heun, ConstantSolutionWhenAccessoryAndAlphaVanish) {
  HeunParams p{2.5, 0.0, 0.0, 1.3, 0.7, 0.4};
  for (double z : {-0.8, 0.2, 0.6, 0.95}) {
    auto v = heun_local_d(p, z);
    EXPECT_NEAR(v.f, 1, 1e-14);
    EXPECT_NEAR(v.df, 0, 1e-13);
  }
}

TEST(Heun, SatisfiesTheEquation) {
  HeunParams p = heun_params_2(0.4, 0.67);
  double z = 0.55, h = 1e-3;
  auto f = [&](double x) { return heun_local_d(p, x); };
  auto c = f(z);
  auto fd = [&](auto g) { return (-g(z + 2 * h) + 8 * g(z + h) - 8 * g(z - h) + g(z - 2 * h)) / (12 * h); };
  double d2 = fd([&](double x) { return f(x).df; });
  double e = p.epsilon();
  double lhs = d2 + (p.gamma / z + p.delta / (z - 1) + e / (z - p.a)) * c.df +
               (p.alpha * p.beta * z - p.q) / (z * (z - 1) * (z - p.a)) * c.f;
  EXPECT_NEAR(lhs, 0, 1e-9);
  // df is the derivative of f
  EXPECT_NEAR(fd([&](double x) { return f(x).f; }), c.df, 1e-9);
}

TEST(Heun, HypergeometricReduction) {
  // with q = alpha beta a, the Heun equation has the 2F1(alpha, beta; gamma; z)
  // solution when delta = alpha + beta - gamma + 1 - eps and eps = 0
  double al = 0.5, be = 1.5, ga = 1.25;
  HeunParams p{3.0, al * be * 3.0, al, be, ga, al + be - ga + 1};
  ASSERT_NEAR(p.epsilon(), 0, 1e-15);
  for (double z : {0.1, 0.5, 0.8}) {
    double sum = 0, term = 1;
    for (int n = 0; n < 4000; ++n) {
      sum += term;
      term *= (al + n) * (be + n) / ((ga + n) * (n + 1)) * z;
    }
    EXPECT_NEAR(heun_local_d(p, z).f, sum, 1e-11 * sum) << z;
  }
}

TEST(Heun, LimitAtOneAndDomainErrors) {
  auto v = heun_pair(0.4, 0.67, 1.0);
  EXPECT_TRUE(std::isfinite(v.hl1));
  EXPECT_TRUE(std::isfinite(v.hl2));
  // the limit continues the values just below 1
  auto w = heun_pair(0.4, 0.67, 1 - 1e-10);
  EXPECT_NEAR(v.hl1, w.hl1, 1e-4);
  EXPECT_THROW(heun_local(heun_params_1(0.4, 0.67), 1.2), DomainError);
  EXPECT_THROW(heun_pair(0.4, 0.67, -0.1), DomainError);
  EXPECT_THROW(heun_local_d(HeunParams{2, 0, 1, 1, -1, 1}, 0.3), DomainError);
}

TEST(Richardson, ExtrapolatesSqrtExpansion) {
  auto r = richardson_sqrt([](double e) { return 2 + 3 * std::sqrt(e) - e + 0.5 * e * std::sqrt(e); });
  EXPECT_NEAR(r.value, 2, 1e-12);
  EXPECT_LT(r.error, 1e-10);
}
