// level_crossing_map.cpp — Locate the ground-state crossing boundary alpha_c(beta)
// with both the transformed-spectrum gap and exact diagonalization, and show the
// QFI jump across it.

#include <cstdio>

#include "qwrabi/qwrabi.hpp"

using namespace qwrabi;

int main() {
    const MaterialSpec material = anchored_material();
    const double B = 0.01;

    std::printf("# beta [m/s]   alpha_c approx   alpha_c oracle   F(below)   F(above)\n");
    for (const double beta : {0.0, 20.0, 40.0, 60.0, 80.0, 100.0}) {
        const sweep::CrossingPoint approx = sweep::find_crossing(
            material, B, beta, 300.0, 900.0, qfi::GroundSource::Approx, 1e-3);
        const sweep::CrossingPoint oracle = sweep::find_crossing(
            material, B, beta, 300.0, 900.0, qfi::GroundSource::Oracle, 1e-2);

        double f_below = 0.0, f_above = 0.0;
        if (beta > 0.0) {
            f_below = qfi::qfi_ground(material, SocStrengths{approx.alpha_c - 5.0, beta},
                                      B, 0.0, qfi::GroundSource::Approx)
                          .qfi.value;
        }
        f_above = qfi::qfi_ground(material, SocStrengths{approx.alpha_c + 5.0, beta}, B,
                                  0.0, qfi::GroundSource::Approx)
                      .qfi.value;
        std::printf("%8.1f %16.3f %16.3f %10.4f %10.4f\n", beta, approx.alpha_c,
                    oracle.alpha_c, f_below, f_above);
    }
    return 0;
}
