#pragma once

#include <adsnull/specfun.hpp>

#include <array>
#include <cstddef>

namespace adsnull {

/// Truncated power series c_0 + c_1 d + ... + c_N d^N about a base point.
template <std::size_t N>
struct Taylor {
  std::array<double, N + 1> c{};

  static Taylor constant(double v) {
    Taylor t;
    t.c[0] = v;
    return t;
  }
  /// The variable itself about x0: x0 + d.
  static Taylor variable(double x0) {
    Taylor t;
    t.c[0] = x0;
    if constexpr (N >= 1) t.c[1] = 1;
    return t;
  }

  double value() const { return c[0]; }
  /// k-th derivative at the base point.
  double derivative(std::size_t k) const {
    double f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return f * c[k];
  }

  Taylor& operator+=(const Taylor& o) {
    for (std::size_t i = 0; i <= N; ++i) c[i] += o.c[i];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    for (std::size_t i = 0; i <= N; ++i) c[i] -= o.c[i];
    return *this;
  }
  Taylor& operator*=(double k) {
    for (auto& v : c) v *= k;
    return *this;
  }
};

template <std::size_t N>
Taylor<N> operator+(Taylor<N> x, const Taylor<N>& y) { return x += y; }
template <std::size_t N>
Taylor<N> operator-(Taylor<N> x, const Taylor<N>& y) { return x -= y; }
template <std::size_t N>
Taylor<N> operator-(Taylor<N> x) { return x *= -1.0; }
template <std::size_t N>
Taylor<N> operator*(double k, Taylor<N> x) { return x *= k; }
template <std::size_t N>
Taylor<N> operator*(Taylor<N> x, double k) { return x *= k; }
template <std::size_t N>
Taylor<N> operator+(double k, Taylor<N> x) { x.c[0] += k; return x; }
template <std::size_t N>
Taylor<N> operator+(Taylor<N> x, double k) { x.c[0] += k; return x; }
template <std::size_t N>
Taylor<N> operator-(double k, Taylor<N> x) { x *= -1.0; x.c[0] += k; return x; }
template <std::size_t N>
Taylor<N> operator-(Taylor<N> x, double k) { x.c[0] -= k; return x; }

template <std::size_t N>
Taylor<N> operator*(const Taylor<N>& x, const Taylor<N>& y) {
  Taylor<N> r;
  for (std::size_t i = 0; i <= N; ++i)
    for (std::size_t j = 0; i + j <= N; ++j) r.c[i + j] += x.c[i] * y.c[j];
  return r;
}

template <std::size_t N>
Taylor<N> operator/(const Taylor<N>& x, const Taylor<N>& y) {
  Taylor<N> r;
  for (std::size_t k = 0; k <= N; ++k) {
    double v = x.c[k];
    for (std::size_t j = 1; j <= k; ++j) v -= y.c[j] * r.c[k - j];
    r.c[k] = v / y.c[0];
  }
  return r;
}

/// d/dd of the series; the top coefficient is lost (set to zero).
template <std::size_t N>
Taylor<N> differentiate(const Taylor<N>& x) {
  Taylor<N> r;
  for (std::size_t k = 0; k < N; ++k) r.c[k] = static_cast<double>(k + 1) * x.c[k + 1];
  return r;
}

template <std::size_t N>
struct JacobiTaylor {
  Taylor<N> sn, cn, dn;
};

/// Series of sn, cn, dn at x0 + w*d in powers of d, from
/// sn' = cn dn, cn' = -sn dn, dn' = -mu sn cn.
template <std::size_t N>
JacobiTaylor<N> jacobi_taylor(double x0, double w, double mu, double K) {
  auto v = jacobi_sncndn(x0, mu, K);
  JacobiTaylor<N> j;
  j.sn.c[0] = v.sn;
  j.cn.c[0] = v.cn;
  j.dn.c[0] = v.dn;
  for (std::size_t k = 0; k < N; ++k) {
    double a = 0, b = 0, c = 0;
    for (std::size_t i = 0; i <= k; ++i) {
      a += j.cn.c[i] * j.dn.c[k - i];
      b += j.sn.c[i] * j.dn.c[k - i];
      c += j.sn.c[i] * j.cn.c[k - i];
    }
    double inv = 1.0 / static_cast<double>(k + 1);
    j.sn.c[k + 1] = a * inv;
    j.cn.c[k + 1] = -b * inv;
    j.dn.c[k + 1] = -mu * c * inv;
  }
  double wk = 1;
  for (std::size_t k = 1; k <= N; ++k) {
    wk *= w;
    j.sn.c[k] *= wk;
    j.cn.c[k] *= wk;
    j.dn.c[k] *= wk;
  }
  return j;
}

}  // namespace adsnull
