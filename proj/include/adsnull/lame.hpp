#pragma once

#include <adsnull/config.hpp>
#include <adsnull/errors.hpp>
#include <adsnull/mat2.hpp>
#include <adsnull/ode.hpp>
#include <adsnull/roots.hpp>
#include <adsnull/specfun.hpp>

#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

namespace adsnull {

/// Coefficient matrix of the first order Lame system delta' = delta * A(s).
struct LameCoefficient {
  double mu, h, K;
  Mat2 operator()(double s) const {
    double sn = jacobi_sncndn(s, mu, K).sn;
    return {0, 2 * mu * sn * sn - h, 1, 0};
  }
};

/// delta(2K) for delta' = delta [[0, 2 mu sn^2 - h], [1, 0]], delta(0) = Id.
inline Mat2 lame_monodromy(double mu, double h, const Tolerances& tol = default_tolerances()) {
  check_parameter(mu);
  double K = elliptic_K(mu);
  return transport(LameCoefficient{mu, h, K}, Mat2::identity(), 0.0, 2 * K, tol);
}

inline double tau(double mu, double h, const Tolerances& tol = default_tolerances()) {
  return 0.5 * lame_monodromy(mu, h, tol).trace();
}

/// Smallest n <= order_max with |M^n - Id| <= order_tol (Frobenius), if any.
inline std::optional<long> monodromy_order(const Mat2& M, const Tolerances& tol = default_tolerances()) {
  Mat2 P = M;
  for (long n = 1; n <= tol.order_max; ++n) {
    if (frobenius(P - Mat2::identity()) <= tol.order_tol) return n;
    P = P * M;
  }
  return std::nullopt;
}

struct FloquetRecord {
  double mu;
  long q_num;
  long q_den;
  int index;  // 1-based position in the increasing sequence
  double h;
  Mat2 monodromy;
  std::optional<long> order;

  double tau() const { return 0.5 * monodromy.trace(); }
};

namespace detail {
inline std::vector<double> scan_grid(double lo, double hi, const Tolerances& tol) {
  std::vector<double> g;
  double h = lo;
  while (h < hi) {
    g.push_back(h);
    h += h < tol.scan_switch ? tol.scan_step_low : tol.scan_step_high;
  }
  g.push_back(hi);
  return g;
}
}  // namespace detail

/// First `count` solutions of tau_mu(h) = cos(q pi) in the admissible domain.
/// For q in {0, 1} the roots above 1 + mu are double (one-gap potential), so
/// they are located as sign changes of M12 and filtered by the sign of tau.
inline std::vector<FloquetRecord> floquet_search(double mu, long q_num, long q_den, int count,
                                                 const Tolerances& tol = default_tolerances()) {
  check_parameter(mu);
  if (q_den <= 0 || q_num < 0 || q_num > q_den || std::gcd(q_num, q_den) != 1 || count < 1)
    throw DomainError("floquet_search needs a reduced fraction in [0,1] and count >= 1");
  const double c = std::cos(std::numbers::pi * static_cast<double>(q_num) / q_den);
  const bool edge = q_num == 0 || q_num == q_den;
  std::vector<FloquetRecord> out;

  auto record = [&](double h) {
    Mat2 M = lame_monodromy(mu, h, tol);
    out.push_back({mu, q_num, q_den, static_cast<int>(out.size()) + 1, h, M,
                   monodromy_order(M, tol)});
  };

  auto scan = [&](double lo, double hi, auto&& f, auto&& accept) {
    auto grid = detail::scan_grid(lo, hi, tol);
    double a = grid[0], fa = f(a);
    for (std::size_t i = 1; i < grid.size() && static_cast<int>(out.size()) < count; ++i) {
      double b = grid[i], fb = f(b);
      if ((fa > 0) != (fb > 0)) {
        double h = bracketed_root(f, a, b, fa, fb, tol.floquet_h);
        if (accept(h)) record(h);
      }
      a = b;
      fa = fb;
    }
  };

  if (edge) {
    auto m12 = [&](double h) { return lame_monodromy(mu, h, tol).b; };
    auto same_side = [&](double h) { return (tau(mu, h, tol) > 0) == (c > 0); };
    scan(1 + mu + tol.scan_step_low * 1e-3, tol.scan_ceiling, m12, same_side);
  } else {
    auto f = [&](double h) { return tau(mu, h, tol) - c; };
    auto any = [](double) { return true; };
    scan(mu, 1.0, f, any);
    if (static_cast<int>(out.size()) < count) scan(1 + mu, tol.scan_ceiling, f, any);
  }
  if (static_cast<int>(out.size()) < count)
    throw SearchExhausted("fewer Floquet eigenvalues than requested below the scan ceiling");
  return out;
}

enum class LameMethod { ode, heun };

/// Sampled fundamental solutions cl, sl and derivatives.
struct LameSolutionPath {
  double mu, h;
  std::vector<double> s;
  std::vector<double> cl, dcl, sl, dsl;
  LameMethod method;

  /// delta = [[cl, cl'], [sl, sl']] at sample i.
  Mat2 delta(std::size_t i) const { return {cl[i], dcl[i], sl[i], dsl[i]}; }
};

inline LameSolutionPath make_path(double mu, double h, const std::vector<double>& s,
                                  const std::vector<Mat2>& d, LameMethod m) {
  LameSolutionPath p{mu, h, s, {}, {}, {}, {}, m};
  for (const auto& x : d) {
    p.cl.push_back(x.a);
    p.dcl.push_back(x.b);
    p.sl.push_back(x.c);
    p.dsl.push_back(x.d);
  }
  return p;
}

/// Direct integration of the Lame system from delta(0) = Id.
inline LameSolutionPath fundamental_ode(double mu, double h, const std::vector<double>& s_grid,
                                        const Tolerances& tol = default_tolerances()) {
  check_parameter(mu);
  double K = elliptic_K(mu);
  auto d = transport_grid(LameCoefficient{mu, h, K}, Mat2::identity(), 0.0, s_grid, tol);
  return make_path(mu, h, s_grid, d, LameMethod::ode);
}

/// Fundamental solutions from the two local Heun functions:
///   cl~ = Hl1(sn^2) dn,  sl~ = Hl2(sn^2) dn sn  on (-K, K),
/// Q+- the one-sided limits at +-K, M = Q+ Q-^{-1}, and
/// delta(s) = M^p delta~(s - 2pK) on [(2p-1)K, (2p+1)K].
class LameHeun {
public:
  LameHeun(double mu, double h, const Tolerances& tol = default_tolerances())
      : mu_(mu), h_(h), K_(elliptic_K(mu)), p1_(heun_params_1(mu, h)), p2_(heun_params_2(mu, h)) {
    check_parameter(mu);
    Qplus_ = limit(+1, tol);
    Qminus_ = limit(-1, tol);
    M_ = Qplus_ * Qminus_.inverse();
  }

  const Mat2& q_plus() const { return Qplus_; }
  const Mat2& q_minus() const { return Qminus_; }
  const Mat2& monodromy() const { return M_; }
  double K() const { return K_; }

  /// Raw building blocks at s, continued 2K-periodically (continuous, with a
  /// derivative jump at odd multiples of K).
  Mat2 raw(double s) const {
    double r = s - 2 * K_ * std::round(s / (2 * K_));
    if (r >= K_) return Qplus_;
    if (r <= -K_) return Qminus_;
    auto j = jacobi_sncndn(r, mu_, K_);
    double z = j.sn * j.sn;
    if (z >= 1) return r > 0 ? Qplus_ : Qminus_;
    return blocks(z, j.sn, j.cn, j.dn);
  }

  /// delta(s) = [[cl, cl'], [sl, sl']].
  Mat2 operator()(double s) const {
    long p = std::lround(s / (2 * K_));
    double r = s - 2 * K_ * static_cast<double>(p);
    Mat2 base;
    if (r >= K_) base = Qplus_;
    else if (r <= -K_) base = Qminus_;
    else base = raw(r);
    return p == 0 ? base : power(M_, p) * base;
  }

private:
  Mat2 blocks(double z, double sn, double cn, double dn) const {
    auto H1 = heun_local_d(p1_, z);
    auto H2 = heun_local_d(p2_, z);
    double dn2 = dn * dn;
    return {H1.f * dn, sn * cn * (2 * dn2 * H1.df - mu_ * H1.f), H2.f * dn * sn,
            cn * (2 * sn * sn * dn2 * H2.df + H2.f * (dn2 - mu_ * sn * sn))};
  }

  Mat2 limit(int side, const Tolerances& tol) const {
    std::vector<double> xa, xb, xc, xd;
    for (double eps : limit_epsilons()) {
      double sn = side * std::sqrt(1 - eps), cn = std::sqrt(eps);
      double dn = std::sqrt(1 - mu_ * (1 - eps));
      Mat2 v = blocks(1 - eps, sn, cn, dn);
      xa.push_back(v.a);
      xb.push_back(v.b);
      xc.push_back(v.c);
      xd.push_back(v.d);
    }
    Mat2 out;
    double* dst[4] = {&out.a, &out.b, &out.c, &out.d};
    const std::vector<double>* src[4] = {&xa, &xb, &xc, &xd};
    for (int i = 0; i < 4; ++i) {
      auto r = richardson_sqrt_samples(*src[i]);
      if (!(r.error <= tol.heun_limit_tol * std::max(1.0, std::abs(r.value))))
        throw LimitUnstable("one-sided limit at +-K did not stabilize");
      *dst[i] = r.value;
    }
    return out;
  }

  double mu_, h_, K_;
  HeunParams p1_, p2_;
  Mat2 Qplus_, Qminus_, M_;
};

struct LameValues {
  double cl, sl, dcl, dsl;
};

inline LameValues fundamental_heun(double mu, double h, double s) {
  Mat2 d = LameHeun(mu, h)(s);
  return {d.a, d.c, d.b, d.d};
}

inline LameSolutionPath fundamental_heun_path(double mu, double h, const std::vector<double>& s_grid,
                                              const Tolerances& tol = default_tolerances()) {
  LameHeun L(mu, h, tol);
  std::vector<Mat2> d;
  for (double s : s_grid) d.push_back(L(s));
  return make_path(mu, h, s_grid, d, LameMethod::heun);
}

}  // namespace adsnull
