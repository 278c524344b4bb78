#pragma once

#include <cstddef>

namespace adsnull {

/// Numerical tolerances and search parameters shared by all modules.
struct Tolerances {
  double ode_rel = 1e-12;
  double ode_abs = 1e-13;
  std::size_t ode_max_steps = 2000000;
  // LIEN evolution: the t-direction transport grows exponentially and the
  // monodromy is recovered by conjugation, so it runs tighter
  double evolve_rel = 1e-14;
  double evolve_abs = 1e-15;

  double floquet_h = 1e-10;
  double scan_step_low = 0.01;
  double scan_step_high = 0.5;
  double scan_switch = 5.0;
  double scan_ceiling = 500.0;

  long order_max = 10000;
  double order_tol = 1e-6;

  long rational_cap = 64;
  double rational_tol = 1e-6;

  // |I| below this and not central -> parabolic
  double discriminant_tol = 1e-9;
  double central_tol = 1e-8;
  double periodic_bending_tol = 1e-8;

  double kdv_gate = 1e-6;
  double heun_limit_tol = 1e-7;
  double root_x_tol = 1e-13;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace adsnull
