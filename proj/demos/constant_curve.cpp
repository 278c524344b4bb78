// Builds the closed constant-bending curve (m, n) = (7, 3), classifies its
// monodromies and prints a few points of the torical embedding.

#include <adsnull/nullcurve.hpp>

#include <iostream>

int main() {
  using namespace adsnull;
  auto curve = closed_constant(7, 3);
  double kappa = curve.kappa.value();
  std::cout << "kappa = " << curve.kappa.str() << ", spin " << to_string(curve.spin) << ", knot ("
            << curve.knot.first << ", " << curve.knot.second << ")\n";

  double rho = curve.sampling_period();
  auto [Mp, Mm] = constant_bending_frames(kappa, rho);
  auto c = classify_monodromies(Mp, Mm, rho);
  std::cout << "type " << c.label() << ", q+ = " << c.q_plus->str() << ", q- = " << c.q_minus->str()
            << ", least period " << *c.least_period << "\n";

  for (int i = 0; i <= 4; ++i) {
    double s = curve.curve_period() * i / 4;
    auto [Fp, Fm] = constant_bending_frames(kappa, s);
    auto p = torical_embed(Fp * Fm.inverse());
    std::cout << "s = " << s << ": (" << p[0] << ", " << p[1] << ", " << p[2] << ")\n";
  }
}
