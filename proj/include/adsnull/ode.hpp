#pragma once

#include <adsnull/config.hpp>
#include <adsnull/errors.hpp>
#include <adsnull/mat2.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace adsnull {

namespace detail {
using State4 = std::array<double, 4>;
inline Mat2 to_mat(const State4& x) { return {x[0], x[1], x[2], x[3]}; }
inline State4 to_state(const Mat2& m) { return {m.a, m.b, m.c, m.d}; }
}  // namespace detail

/// Integrates the right-invariant linear system F' = F * A(s) from s0 to s1.
/// When `renormalize` is set the state is projected back to det = 1 after
/// every accepted step, as long as det can be formed without heavy cancellation.
template <class Coef>
Mat2 transport(Coef&& A, const Mat2& F0, double s0, double s1,
               const Tolerances& tol = default_tolerances(),
               bool renormalize = true) {
  namespace odeint = boost::numeric::odeint;
  using detail::State4;
  if (s0 == s1) return F0;
  auto rhs = [&A](const State4& x, State4& dx, double s) {
    Mat2 m = A(s);
    dx[0] = x[0] * m.a + x[1] * m.c;
    dx[1] = x[0] * m.b + x[1] * m.d;
    dx[2] = x[2] * m.a + x[3] * m.c;
    dx[3] = x[2] * m.b + x[3] * m.d;
  };
  auto stepper = odeint::make_controlled(tol.ode_abs, tol.ode_rel,
                                         odeint::runge_kutta_fehlberg78<State4>());
  State4 x = detail::to_state(F0);
  double s = s0;
  double dir = s1 > s0 ? 1.0 : -1.0;
  double dt = dir * std::min(0.05, std::abs(s1 - s0));
  std::size_t steps = 0;
  while (dir * (s1 - s) > 0) {
    if (dir * (s + dt - s1) > 0) dt = s1 - s;
    if (stepper.try_step(rhs, x, s, dt) == odeint::success) {
      if (renormalize) {
        // skip when ad - bc cancels so badly that det is known to fewer than
        // ~10 digits; rescaling by a noisy det would inject error
        double det = x[0] * x[3] - x[1] * x[2];
        double mag = std::abs(x[0] * x[3]) + std::abs(x[1] * x[2]);
        if (mag <= 1e6) {
          if (!(det > 0)) throw IntegratorFailure("determinant lost positivity", s);
          double k = 1.0 / std::sqrt(det);
          for (double& v : x) v *= k;
        }
      }
      if (++steps > tol.ode_max_steps) throw IntegratorFailure("step budget exhausted", s);
    } else if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(s))) {
      throw IntegratorFailure("step size underflow", s);
    }
    if (!std::isfinite(x[0] + x[1] + x[2] + x[3])) throw IntegratorFailure("non-finite state", s);
    // snap to the endpoint once within rounding
    if (std::abs(s1 - s) <= 1e-15 * std::max(1.0, std::abs(s1))) s = s1;
  }
  return detail::to_mat(x);
}

/// Transport from (s0, F0) to every point of `grid` (any order, any side of s0).
template <class Coef>
std::vector<Mat2> transport_grid(Coef&& A, const Mat2& F0, double s0,
                                 const std::vector<double>& grid,
                                 const Tolerances& tol = default_tolerances(),
                                 bool renormalize = true) {
  std::vector<std::size_t> idx(grid.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<Mat2> out(grid.size());
  std::vector<std::size_t> up, down;
  for (auto i : idx) (grid[i] >= s0 ? up : down).push_back(i);
  std::sort(up.begin(), up.end(), [&](auto i, auto j) { return grid[i] < grid[j]; });
  std::sort(down.begin(), down.end(), [&](auto i, auto j) { return grid[i] > grid[j]; });
  for (const auto* side : {&up, &down}) {
    Mat2 F = F0;
    double s = s0;
    for (auto i : *side) {
      F = transport(A, F, s, grid[i], tol, renormalize);
      s = grid[i];
      out[i] = F;
    }
  }
  return out;
}

}  // namespace adsnull
