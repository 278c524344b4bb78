#pragma once

#include <adsnull/errors.hpp>

#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

namespace adsnull {

/// Root of f in [lo, hi] given opposite-signed end values, to absolute width xtol.
template <class F>
double bracketed_root(F&& f, double lo, double hi, double flo, double fhi, double xtol) {
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) throw NoSignChange("bracket does not change sign");
  std::uintmax_t iters = 200;
  auto stop = [xtol](double a, double b) { return std::abs(b - a) <= xtol; };
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace adsnull
