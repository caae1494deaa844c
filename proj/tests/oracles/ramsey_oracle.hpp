#pragma once

// Ramsey-style measurement of the phonon-coupled sigma_z (double-dressed)
// shift: one ion, gate off, dressing on (xy_residual only).  The spin starts
// in an equal superposition of the S_x eigenstates; the slope of the relative
// phase gives the precession rate for a given Fock number.

#include "dgate/propagation.hpp"

#include <cmath>

namespace oracle {

inline double precession_rate(const dgate::PhysicalParams& p, int fock, double window, int cutoff = 8)
{
    using namespace dgate;
    const SpaceShape s(1, cutoff);
    const HamiltonianModel m = dressed_frame_hamiltonian(p, s, {"xy_residual"});
    // |u> = (|+x> + |-x>)/sqrt2 in the dressed basis.
    const StateVector psi0 = basis_state(s, "u", fock);
    IntegratorConfig cfg;
    cfg.output_points = 201;
    const Trajectory tr = evolve(m, psi0, window, cfg);

    const double r = 1.0 / std::sqrt(2.0);
    Vector plus(2), minus(2);
    plus << r, r;
    minus << r, -r;
    // least-squares slope of the unwrapped phase of <+x|rho|-x>
    double prev = 0.0, offset = 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(tr.times.size());
    for (int i = 0; i < n; ++i) {
        const Matrix rho = tr.states[i].spin_density();
        double ph = std::arg(plus.dot(rho * minus));
        if (i > 0) {
            while (ph + offset - prev > kPi) offset -= kTwoPi;
            while (ph + offset - prev < -kPi) offset += kTwoPi;
        }
        ph += offset;
        prev = ph;
        const double t = tr.times[i];
        sx += t;
        sy += ph;
        sxx += t * t;
        sxy += t * ph;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Per-phonon shift of the sigma_z coefficient: half the change in the
// relative precession rate when one phonon is added.
inline double phonon_coupled_shift(const dgate::PhysicalParams& p, double window = 2e-3)
{
    return 0.5 * (precession_rate(p, 1, window) - precession_rate(p, 0, window));
}

} // namespace oracle
