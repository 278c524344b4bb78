#pragma once

#include <adsnull/config.hpp>
#include <adsnull/errors.hpp>
#include <adsnull/fraction.hpp>
#include <adsnull/kdvsol.hpp>
#include <adsnull/lame.hpp>
#include <adsnull/mat2.hpp>
#include <adsnull/ode.hpp>
#include <adsnull/roots.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adsnull {

// ------------------------------------------------------------ metric of R^{2,2}

/// <X, Y> = (x12 y21 + x21 y12 - x11 y22 - x22 y11)/2, so <X, X> = -det X.
inline double ads_inner(const Spacetime22& X, const Spacetime22& Y) {
  return 0.5 * (X.b * Y.c + X.c * Y.b - X.a * Y.d - X.d * Y.a);
}

inline double ads_q(const Spacetime22& X) { return -X.det(); }

/// The Cartan basis P1..P4.
inline std::array<Spacetime22, 4> cartan_basis() {
  const double r = std::numbers::sqrt2;
  return {Mat2{1, 0, 0, 1}, Mat2{0, r, 0, 0}, Mat2{-1, 0, 0, 1}, Mat2{0, 0, r, 0}};
}

/// The Gram matrix g of the Cartan basis.
inline std::array<std::array<double, 4>, 4> cartan_metric() {
  return {{{-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}}};
}

inline std::array<std::array<double, 4>, 4> gram(const std::array<Spacetime22, 4>& v) {
  std::array<std::array<double, 4>, 4> g{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = ads_inner(v[i], v[j]);
  return g;
}

/// Time orientation of the bivector X^V: sign of <<Id^J, X^V>> with J = [[0,1],[-1,0]].
inline bool future_directed(const Spacetime22& X, const Spacetime22& V) {
  const Mat2 I = Mat2::identity(), J{0, 1, -1, 0};
  // X^V = 0 iff the Gram determinant of (X, V) under a Euclidean product vanishes
  double xx = X.a * X.a + X.b * X.b + X.c * X.c + X.d * X.d;
  double vv = V.a * V.a + V.b * V.b + V.c * V.c + V.d * V.d;
  double xv = X.a * V.a + X.b * V.b + X.c * V.c + X.d * V.d;
  if (xx * vv - xv * xv <= 1e-24 * std::max(1.0, xx * vv))
    throw DegenerateBivector("X and V are parallel");
  double p = ads_inner(I, X) * ads_inner(J, V) - ads_inner(I, V) * ads_inner(J, X);
  return p > 0;
}

// ---------------------------------------------------------------- frame paths

/// Sampled spinor frame field (F+, F-) and bending.
struct SpinorFramePath {
  std::vector<double> s;
  double t = 0;
  std::vector<Unimodular2> Fplus, Fminus;
  std::vector<double> kappa;
};

using BendingSampler = std::function<double(double)>;

/// Coefficient [[0, kappa + lambda], [1, 0]] of the spinor Frenet equations.
struct FrenetCoefficient {
  const BendingSampler* kappa;
  double lambda;
  Mat2 operator()(double s) const { return {0, (*kappa)(s) + lambda, 1, 0}; }
};

/// Solves F+' = F+ [[0, k+1], [1, 0]], F-' = F- [[0, k-1], [1, 0]] with the given
/// values at s_init.
inline SpinorFramePath integrate_spinor_frames(const BendingSampler& kappa,
                                               const std::vector<double>& s_grid,
                                               const Unimodular2& init_plus,
                                               const Unimodular2& init_minus,
                                               double s_init = 0.0,
                                               const Tolerances& tol = default_tolerances()) {
  SpinorFramePath p;
  p.s = s_grid;
  p.Fplus = transport_grid(FrenetCoefficient{&kappa, 1.0}, init_plus, s_init, s_grid, tol);
  p.Fminus = transport_grid(FrenetCoefficient{&kappa, -1.0}, init_minus, s_init, s_grid, tol);
  for (double s : s_grid) p.kappa.push_back(kappa(s));
  return p;
}

using Planar = std::array<double, 2>;

struct CurveAndCousins {
  std::vector<Spacetime22> gamma;
  std::vector<Planar> eta_plus, eta_minus;        // first columns of F+-
  std::vector<Planar> deta_plus, deta_minus;      // second columns (eta')
};

inline CurveAndCousins curve_and_cousins(const SpinorFramePath& p) {
  CurveAndCousins r;
  for (std::size_t i = 0; i < p.s.size(); ++i) {
    const auto &A = p.Fplus[i], &B = p.Fminus[i];
    r.gamma.push_back(A * B.inverse());
    r.eta_plus.push_back({A.a, A.c});
    r.eta_minus.push_back({B.a, B.c});
    r.deta_plus.push_back({A.b, A.d});
    r.deta_minus.push_back({B.b, B.d});
  }
  return r;
}

/// Null curve rebuilt from its pair of cousins and their derivatives.
inline std::vector<Spacetime22> curve_from_cousins(const CurveAndCousins& c) {
  std::vector<Spacetime22> g;
  for (std::size_t i = 0; i < c.eta_plus.size(); ++i) {
    Mat2 A{c.eta_plus[i][0], c.deta_plus[i][0], c.eta_plus[i][1], c.deta_plus[i][1]};
    Mat2 B{c.eta_minus[i][0], c.deta_minus[i][0], c.eta_minus[i][1], c.deta_minus[i][1]};
    g.push_back(A * B.inverse());
  }
  return g;
}

struct CartanFramePath {
  std::vector<double> s;
  std::vector<Spacetime22> gamma, T, N, B;

  std::array<Spacetime22, 4> frame(std::size_t i) const { return {gamma[i], T[i], N[i], B[i]}; }
};

inline CartanFramePath cartan_frame(const SpinorFramePath& p) {
  auto P = cartan_basis();
  CartanFramePath c;
  c.s = p.s;
  for (std::size_t i = 0; i < p.s.size(); ++i) {
    Mat2 Fi = p.Fminus[i].inverse();
    c.gamma.push_back(p.Fplus[i] * P[0] * Fi);
    c.T.push_back(p.Fplus[i] * P[1] * Fi);
    c.N.push_back(p.Fplus[i] * P[2] * Fi);
    c.B.push_back(p.Fplus[i] * P[3] * Fi);
  }
  return c;
}

// -------------------------------------------------------- finite differences

/// Values of a central-difference derivative at indices [first, first + size).
template <class T>
struct Stencil {
  std::size_t first = 0;
  std::vector<T> values;
};

inline double uniform_step(const std::vector<double>& s) {
  if (s.size() < 7) throw GridTooCoarse("need at least 7 samples");
  double h = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
  for (std::size_t i = 1; i < s.size(); ++i)
    if (std::abs((s[i] - s[i - 1]) - h) > 1e-9 * std::abs(h))
      throw GridTooCoarse("grid is not uniform");
  return h;
}

/// Derivative of order 1, 2 (sixth order) or 3 (fourth order) on 7-point stencils.
template <class T>
Stencil<T> central_difference(const std::vector<T>& f, double h, int order) {
  static const double d1[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
  static const double d2[7] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
  static const double d3[7] = {1.0 / 8, -1, 13.0 / 8, 0, -13.0 / 8, 1, -1.0 / 8};
  const double* w = order == 1 ? d1 : order == 2 ? d2 : d3;
  double scale = std::pow(h, -order);
  Stencil<T> r;
  r.first = 3;
  for (std::size_t i = 3; i + 3 < f.size(); ++i) {
    T acc = 0.0 * f[i];
    for (int k = 0; k < 7; ++k) acc = acc + w[k] * f[i + k - 3];
    r.values.push_back(scale * acc);
  }
  return r;
}

/// kappa = -<g''', g'''>/16 from a curve sampled on a uniform grid (validation only).
inline Stencil<double> bending_oracle(const std::vector<double>& s,
                                      const std::vector<Spacetime22>& gamma) {
  double h = uniform_step(s);
  auto d3 = central_difference(gamma, h, 3);
  Stencil<double> k{d3.first, {}};
  for (const auto& x : d3.values) k.values.push_back(-ads_inner(x, x) / 16);
  return k;
}

// ----------------------------------------------------------- constant bending

/// exp(s [[0, k0 + 1], [1, 0]]) and exp(s [[0, k0 - 1], [1, 0]]).
inline std::pair<Unimodular2, Unimodular2> constant_bending_frames(double kappa0, double s) {
  return {exp_offdiag(kappa0 + 1, 1, s), exp_offdiag(kappa0 - 1, 1, s)};
}

/// Sampled closed-form frames of the constant bending kappa0.
inline SpinorFramePath constant_bending_path(double kappa0, const std::vector<double>& s_grid) {
  SpinorFramePath p;
  p.s = s_grid;
  for (double s : s_grid) {
    auto [a, b] = constant_bending_frames(kappa0, s);
    p.Fplus.push_back(a);
    p.Fminus.push_back(b);
    p.kappa.push_back(kappa0);
  }
  return p;
}

/// The five constant-bending cases: 1 (E,E) k<-1, 2 (P,E) k=-1, 3 (H,E) |k|<1,
/// 4 (H,P) k=1, 5 (H,H) k>1.
inline int constant_case(double kappa0) {
  if (kappa0 < -1) return 1;
  if (kappa0 == -1) return 2;
  if (kappa0 < 1) return 3;
  if (kappa0 == 1) return 4;
  return 5;
}

enum class Spin { one, half };

inline std::string to_string(Spin s) { return s == Spin::one ? "1" : "1/2"; }

struct ClosedConstant {
  Fraction kappa;
  Spin spin;
  std::pair<int, int> knot;
  int m, n;

  double omega_plus() const { return std::sqrt(std::abs(kappa.value() + 1)); }
  double omega_minus() const { return std::sqrt(std::abs(kappa.value() - 1)); }
  /// Sampling period pi/(m omega+) = rho+/(2m) used for orbit classification.
  double sampling_period() const { return std::numbers::pi / (m * omega_plus()); }
  /// Least period of the curve.
  double curve_period() const {
    double rp = 2 * std::numbers::pi / omega_plus();
    return spin == Spin::half ? rp * n / 2 : rp * n;
  }
};

/// Closed null curve of constant bending with commensurable periods m : n.
inline ClosedConstant closed_constant(int m, int n) {
  if (!(m > n && n >= 1) || std::gcd(m, n) != 1)
    throw InvalidPair("need coprime m > n >= 1");
  long m2 = static_cast<long>(m) * m, n2 = static_cast<long>(n) * n;
  Fraction k = Fraction::make(-(m2 + n2), m2 - n2);
  if ((m + n) % 2 == 0) return {k, Spin::half, {(n - m) / 2, (n + m) / 2}, m, n};
  return {k, Spin::one, {n - m, n + m}, m, n};
}

// ---------------------------------------------------------- stationary curves

/// Spinor frames F+-(s) = delta_{h+-}(sigma s) diag(1/sqrt(sigma), sqrt(sigma)).
inline SpinorFramePath stationary_curve(double mu, double h_plus, double h_minus,
                                        const std::vector<double>& s_grid,
                                        LameMethod method = LameMethod::ode,
                                        const Tolerances& tol = default_tolerances()) {
  auto b = StationaryBending::make(mu, h_plus, h_minus);
  double sg = b.sigma();
  std::vector<double> x;
  for (double s : s_grid) x.push_back(sg * s);
  auto lame = [&](double h) {
    return method == LameMethod::ode ? fundamental_ode(mu, h, x, tol)
                                     : fundamental_heun_path(mu, h, x, tol);
  };
  auto P = lame(h_plus), M = lame(h_minus);
  Mat2 D{1 / std::sqrt(sg), 0, 0, std::sqrt(sg)};
  SpinorFramePath p;
  p.s = s_grid;
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    p.Fplus.push_back(P.delta(i) * D);
    p.Fminus.push_back(M.delta(i) * D);
    p.kappa.push_back(stationary_bending(b, s_grid[i]));
  }
  return p;
}

struct StationaryEvolution {
  Mat2 m_plus, m_minus;
  Mat2 exp_plus, exp_minus;  // Exp(t m+-)
  double ell;
};

/// Conserved matrices m+- and the factors of
/// gamma^(s, t) = Exp(t m+) gamma(s + 2 ell t) Exp(-t m-).
inline StationaryEvolution stationary_evolution(double mu, double h_plus, double h_minus, double t) {
  auto b = StationaryBending::make(mu, h_plus, h_minus);
  double d32 = std::pow(h_minus - h_plus, 1.5), k = 8 * std::numbers::sqrt2 / d32;
  auto m = [&](double h) { return Mat2{0, k * (h - 1) * (mu - h), k * (h - 1 - mu), 0}; };
  Mat2 mp = m(h_plus), mm = m(h_minus);
  return {mp, mm, exp_offdiag(mp.b, mp.c, t), exp_offdiag(mm.b, mm.c, t), b.ell};
}

// ------------------------------------------------------------------ LIEN flow

/// P_lambda of the Lax pair evaluated on a bending jet.
inline Mat2 lax_P(const BendingJet& j, double lambda) {
  return {-j.ks, -j.kss + 2 * j.k * j.k - 2 * lambda * j.k - 4 * lambda * lambda,
          2 * j.k - 4 * lambda, j.ks};
}

inline double kdv_residual_max(const BendingField& kappa, const std::vector<double>& s_grid,
                               const std::vector<double>& t_grid) {
  double worst = 0;
  for (double t : t_grid)
    for (double s : s_grid) worst = std::max(worst, std::abs(kappa(s, t).kdv_residual()));
  return worst;
}

/// Evolution of null curves under the LIEN flow with prescribed bending:
/// A+-(t) along s = 0 from the P_{+-1} system, then F+-(., t) along s, both at
/// the evolution tolerances.
inline std::vector<SpinorFramePath> lien_evolve(const BendingField& kappa,
                                                const std::vector<double>& s_grid,
                                                const std::vector<double>& t_grid,
                                                const Unimodular2& init_plus = Mat2::identity(),
                                                const Unimodular2& init_minus = Mat2::identity(),
                                                const Tolerances& tol = default_tolerances()) {
  double res = kdv_residual_max(kappa, s_grid, t_grid);
  Tolerances tight = tol;
  tight.ode_rel = tol.evolve_rel;
  tight.ode_abs = tol.evolve_abs;
  if (!(res <= tol.kdv_gate))
    throw KdVResidualTooLarge("KdV residual " + std::to_string(res) + " exceeds the gate");
  auto tcoef = [&](double lambda) {
    return [&kappa, lambda](double t) { return lax_P(kappa(0.0, t), lambda); };
  };
  auto Ap = transport_grid(tcoef(1.0), init_plus, 0.0, t_grid, tight);
  auto Am = transport_grid(tcoef(-1.0), init_minus, 0.0, t_grid, tight);
  std::vector<SpinorFramePath> out(t_grid.size());
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    double t = t_grid[j];
    BendingSampler k = [&kappa, t](double s) { return kappa(s, t).k; };
    out[j] = integrate_spinor_frames(k, s_grid, Ap[j], Am[j], 0.0, tight);
    out[j].t = t;
  }
  return out;
}

// ------------------------------------------------------------- classification

enum class OrbitType { Elliptic, Hyperbolic, Parabolic, CentralFixed };

inline char type_letter(OrbitType t) {
  switch (t) {
    case OrbitType::Elliptic: return 'E';
    case OrbitType::Hyperbolic: return 'H';
    case OrbitType::Parabolic: return 'P';
    default: return 'C';
  }
}

struct OrbitClassification {
  Mat2 M_plus, M_minus;
  double I_plus = 0, I_minus = 0;
  OrbitType type_plus = OrbitType::CentralFixed, type_minus = OrbitType::CentralFixed;
  double theta_plus = 0, theta_minus = 0;  // raw phases in [0, pi]
  std::optional<Fraction> q_plus, q_minus;  // theta / pi
  bool closed = false;
  std::optional<long> closure_count;
  std::optional<double> least_period;
  std::optional<Spin> spin;

  std::string label() const {
    return std::string("(") + type_letter(type_plus) + "," + type_letter(type_minus) + ")";
  }
};

inline OrbitType orbit_type(const Mat2& M, const Tolerances& tol = default_tolerances()) {
  const Mat2 I = Mat2::identity();
  if (max_abs(M - I) <= tol.central_tol || max_abs(M + I) <= tol.central_tol)
    return OrbitType::CentralFixed;
  double d = M.trace() * M.trace() - 4;
  if (d < -tol.discriminant_tol) return OrbitType::Elliptic;
  if (d > tol.discriminant_tol) return OrbitType::Hyperbolic;
  return OrbitType::Parabolic;
}

/// Classification from the two monodromies over one period rho.
inline OrbitClassification classify_monodromies(const Mat2& Mp, const Mat2& Mm, double rho,
                                                const Tolerances& tol = default_tolerances()) {
  OrbitClassification c;
  c.M_plus = Mp;
  c.M_minus = Mm;
  c.I_plus = Mp.trace() * Mp.trace() - 4;
  c.I_minus = Mm.trace() * Mm.trace() - 4;
  c.type_plus = orbit_type(Mp, tol);
  c.type_minus = orbit_type(Mm, tol);
  auto phase = [&](const Mat2& M, OrbitType t, double& theta, std::optional<Fraction>& q) {
    if (t != OrbitType::Elliptic && t != OrbitType::CentralFixed) return;
    theta = std::acos(std::clamp(0.5 * M.trace(), -1.0, 1.0));
    q = rationalize(theta / std::numbers::pi, tol.rational_cap, tol.rational_tol);
  };
  phase(Mp, c.type_plus, c.theta_plus, c.q_plus);
  phase(Mm, c.type_minus, c.theta_minus, c.q_minus);
  c.closed = c.q_plus.has_value() && c.q_minus.has_value();
  if (!c.closed) return c;
  // M^N = (-1)^{N p/q} Id once q | N
  long N = std::lcm(c.q_plus->den, c.q_minus->den);
  auto sign = [N](const Fraction& f) { return ((N / f.den) * f.num) % 2 == 0 ? 1 : -1; };
  if (sign(*c.q_plus) != sign(*c.q_minus)) N *= 2;
  Mat2 Pp = power(Mp, N), Pm = power(Mm, N);
  bool agree = (Pp.a > 0) == (Pm.a > 0);
  if (!agree) {  // numerical disagreement with the rational phases
    c.closed = false;
    return c;
  }
  c.closure_count = N;
  c.least_period = static_cast<double>(N) * rho;
  c.spin = Pp.a > 0 ? Spin::one : Spin::half;
  return c;
}

/// Monodromies M+- = F+-(s0 + rho) F+-(s0)^{-1} from a sampled path.
inline OrbitClassification classify_orbit(const SpinorFramePath& p, double rho,
                                          const Tolerances& tol = default_tolerances()) {
  if (p.s.empty()) throw DomainError("empty path");
  double s0 = p.s.front(), target = s0 + rho;
  std::size_t j = p.s.size();
  for (std::size_t i = 0; i < p.s.size(); ++i)
    if (std::abs(p.s[i] - target) <= 1e-9 * std::max(1.0, std::abs(rho))) j = i;
  if (j == p.s.size()) throw DomainError("path has no sample at s0 + rho");
  double dk = std::abs(p.kappa[j] - p.kappa[0]);
  if (dk > tol.periodic_bending_tol * std::max(1.0, std::abs(p.kappa[0])))
    throw NotPeriodicBending("bending is not rho-periodic along the path");
  return classify_monodromies(p.Fplus[j] * p.Fplus[0].inverse(),
                              p.Fminus[j] * p.Fminus[0].inverse(), rho, tol);
}

// ------------------------------------------------------------------ KKSH

/// Hill monodromies F^+-(rho) of the KKSH bending at t = 0 with F(0) = Id.
inline std::pair<Mat2, Mat2> kksh_monodromies(const KkshSpec& sp,
                                              const Tolerances& tol = default_tolerances()) {
  double rho = sp.s_period();
  BendingSampler k = [&sp](double s) { return kksh_kappa(sp, s, 0.0); };
  Mat2 Mp = transport(FrenetCoefficient{&k, 1.0}, Mat2::identity(), 0.0, rho, tol);
  Mat2 Mm = transport(FrenetCoefficient{&k, -1.0}, Mat2::identity(), 0.0, rho, tol);
  return {Mp, Mm};
}

/// p_q(mu) = Re(tr M + sqrt(I))/2 - cos(pi q) for the minus monodromy.
inline double kksh_phase_function(const KkshSpec& sp, Fraction target,
                                  const Tolerances& tol = default_tolerances()) {
  Mat2 M = kksh_monodromies(sp, tol).second;
  double tr = M.trace(), I = tr * tr - 4;
  double re = I >= 0 ? tr + std::sqrt(I) : tr;
  return 0.5 * re - std::cos(std::numbers::pi * target.value());
}

struct MuStar {
  double mu, tau, rho;
  Mat2 M_plus, M_minus;
};

/// Elliptic parameter along C_{m,n} at which the minus monodromy has phase pi*target.
inline MuStar kksh_mu_star(int m, int n, double h, Fraction target,
                           std::pair<double, double> range = {0.01, 0.98}, int cells = 97,
                           const Tolerances& tol = default_tolerances()) {
  auto f = [&](double mu) { return kksh_phase_function(kksh_mn(mu, m, n, h), target, tol); };
  double a = range.first, fa = f(a);
  for (int i = 1; i <= cells; ++i) {
    double b = range.first + (range.second - range.first) * i / cells, fb = f(b);
    if ((fa > 0) != (fb > 0)) {
      double mu = bracketed_root(f, a, b, fa, fb, 1e-12);
      auto sp = kksh_mn(mu, m, n, h);
      auto [Mp, Mm] = kksh_monodromies(sp, tol);
      return {mu, sp.tau, sp.s_period(), Mp, Mm};
    }
    a = b;
    fa = fb;
  }
  throw NoSignChange("phase function has no sign change on the scan range");
}

// ------------------------------------------------------------ torical chart

/// Solid-torus chart of AdS: longitude atan2(x2, x1), disc point r/sqrt(1+r^2).
inline std::array<double, 3> torical_embed(const Unimodular2& p) {
  double x1 = 0.5 * (p.a + p.d), x2 = 0.5 * (p.b - p.c);
  double x3 = 0.5 * (p.b + p.c), x4 = 0.5 * (p.a - p.d);
  double theta = std::atan2(x2, x1);
  double r = std::hypot(x3, x4);
  double rd = r / std::sqrt(1 + r * r);
  double phi = std::atan2(x4, x3);
  double R = 2 + rd * std::cos(phi);
  return {R * std::cos(theta), R * std::sin(theta), rd * std::sin(phi)};
}

/// Total longitude winding (in turns) of a sampled curve in the torical chart.
inline double longitude_winding(const std::vector<Spacetime22>& gamma) {
  double total = 0, prev = 0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const auto& p = gamma[i];
    double th = std::atan2(0.5 * (p.b - p.c), 0.5 * (p.a + p.d));
    if (i > 0) {
      double d = th - prev;
      d -= 2 * std::numbers::pi * std::round(d / (2 * std::numbers::pi));
      total += d;
    }
    prev = th;
  }
  return total / (2 * std::numbers::pi);
}

}  // namespace adsnull
