#pragma once

#include <adsnull/nullcurve.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace adsnull {

/// Worst-case residuals of the defining identities of a null curve sampled on a
/// uniform grid.  Derivative-based entries cover the stencil interior only.
struct CurveDiagnostics {
  double q_residual = 0;       // |<g, g> + 1|
  double null_tangent = 0;     // |<g', g'>|
  double proper_time = 0;      // |<g'', g''> - 4|
  double gram = 0;             // Cartan Gram matrix vs g
  double det_frames = 0;       // |det F+- - 1|
  double cousin_wronskian = 0; // |det(eta, eta') - 1|
  double cousin_curvature = 0; // |k+- - (kappa +- 1)| from the cousins
  double round_trip = 0;       // frames -> cousins -> curve
  double bending = 0;          // bending oracle vs supplied kappa
  double tangent_frame = 0;    // |T - g'/sqrt2|
  double normal_frame = 0;     // |N - g''/2|
};

inline CurveDiagnostics diagnose_curve(const SpinorFramePath& p) {
  CurveDiagnostics d;
  auto cc = curve_and_cousins(p);
  auto cf = cartan_frame(p);
  const auto g0 = cartan_metric();
  auto rebuilt = curve_from_cousins(cc);
  for (std::size_t i = 0; i < p.s.size(); ++i) {
    d.q_residual = std::max(d.q_residual, std::abs(ads_inner(cc.gamma[i], cc.gamma[i]) + 1));
    auto G = gram(cf.frame(i));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) d.gram = std::max(d.gram, std::abs(G[a][b] - g0[a][b]));
    d.det_frames = std::max({d.det_frames, std::abs(p.Fplus[i].det() - 1), std::abs(p.Fminus[i].det() - 1)});
    for (const auto* side : {&cc.eta_plus, &cc.eta_minus}) {
      const auto& e = (*side)[i];
      const auto& de = (side == &cc.eta_plus ? cc.deta_plus : cc.deta_minus)[i];
      d.cousin_wronskian = std::max(d.cousin_wronskian, std::abs(e[0] * de[1] - e[1] * de[0] - 1));
    }
    d.round_trip = std::max(d.round_trip, max_abs(rebuilt[i] - cc.gamma[i]));
  }
  double h = uniform_step(p.s);
  auto d1 = central_difference(cc.gamma, h, 1);
  auto d2 = central_difference(cc.gamma, h, 2);
  auto d3 = central_difference(cc.gamma, h, 3);
  auto planar_derivative = [h](const std::vector<Planar>& v) {
    std::vector<double> x, y;
    for (const auto& p : v) {
      x.push_back(p[0]);
      y.push_back(p[1]);
    }
    auto dx = central_difference(x, h, 1), dy = central_difference(y, h, 1);
    std::vector<Planar> out;
    for (std::size_t k = 0; k < dx.values.size(); ++k) out.push_back({dx.values[k], dy.values[k]});
    return out;
  };
  auto deta_p = planar_derivative(cc.deta_plus), deta_m = planar_derivative(cc.deta_minus);
  for (std::size_t k = 0; k < d1.values.size(); ++k) {
    std::size_t i = k + d1.first;
    d.null_tangent = std::max(d.null_tangent, std::abs(ads_inner(d1.values[k], d1.values[k])));
    d.proper_time = std::max(d.proper_time, std::abs(ads_inner(d2.values[k], d2.values[k]) - 4));
    d.bending = std::max(d.bending, std::abs(-ads_inner(d3.values[k], d3.values[k]) / 16 - p.kappa[i]));
    d.tangent_frame = std::max(d.tangent_frame, max_abs(cf.T[i] - (1 / std::numbers::sqrt2) * d1.values[k]));
    d.normal_frame = std::max(d.normal_frame, max_abs(cf.N[i] - 0.5 * d2.values[k]));
    // central affine curvature: eta'' = k eta with det(eta, eta') = 1, so
    // k = det(eta'', eta')
    auto ck = [](const Planar& de, const Planar& dde) { return dde[0] * de[1] - dde[1] * de[0]; };
    d.cousin_curvature = std::max({d.cousin_curvature,
                                   std::abs(ck(cc.deta_plus[i], deta_p[k]) - (p.kappa[i] + 1)),
                                   std::abs(ck(cc.deta_minus[i], deta_m[k]) - (p.kappa[i] - 1))});
  }
  return d;
}

/// Uniform grid of n + 1 points on [a, b].
inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = a + (b - a) * i / n;
  return g;
}

/// Monodromy M+- = F(s_end) F(s_begin)^{-1} of each slice of an evolved family,
/// and the worst drift from the first slice.
struct MonodromyDrift {
  std::vector<Mat2> plus, minus;
  double drift_plus = 0, drift_minus = 0;
};

inline MonodromyDrift monodromy_drift(const std::vector<SpinorFramePath>& family) {
  MonodromyDrift r;
  for (const auto& p : family) {
    r.plus.push_back(p.Fplus.back() * p.Fplus.front().inverse());
    r.minus.push_back(p.Fminus.back() * p.Fminus.front().inverse());
    r.drift_plus = std::max(r.drift_plus, max_abs(r.plus.back() - r.plus.front()));
    r.drift_minus = std::max(r.drift_minus, max_abs(r.minus.back() - r.minus.front()));
  }
  return r;
}

/// Integral of a jet density over [0, period) by the periodic trapezoid rule.
inline double periodic_integral(const std::function<double(double)>& f, double period, int n) {
  double acc = 0;
  for (int i = 0; i < n; ++i) acc += f(period * i / n);
  return acc * period / n;
}

}  // namespace adsnull
