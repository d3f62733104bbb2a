// Exchange-model spectrum two ways: direct diagonalization on the
// one-particle-per-position sector, and energies read off Casimir eigenvalues.
#include <cstdio>

#include "gentile/gentile.hpp"

int main() {
  using namespace gentile;
  for (int nu : {2, 3, 4}) {
    const GentileOrder order(1);
    const auto r = make_spectrum_report(nu, 2, order, true);
    std::printf("nu=%d m=2 n=1, sector dimension %zu\n  ED:", nu, r.sector_dimension);
    for (const auto& c : r.ed) std::printf("  %+.6g (x%zu)", c.value, c.multiplicity);
    std::printf("\n");
    for (const auto& c : r.casimir) {
      if (c.route.form != LimitForm::bose) continue;
      std::printf("  %-20s", c.route.label().c_str());
      for (const auto& l : c.levels) {
        std::printf("  %s -> %+.6g (dim %lld)", l.partition.str().c_str(), l.eigenvalue,
                    static_cast<long long>(l.weyl_dimension));
      }
      std::printf("\n");
    }
    for (const auto& mt : r.matches) {
      if (mt.route.form != LimitForm::bose) continue;
      std::printf("  %-20s deviation %.3g, sign-flipped %.3g, scale %.6g\n", mt.route.label().c_str(),
                  mt.max_deviation, mt.sign_flipped_deviation, mt.scale.value_or(0.0));
    }
  }
}
