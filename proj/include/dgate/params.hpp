#pragma once

// Physical parameters.  All frequencies are angular (rad/s).

#include <string>
#include <vector>

namespace dgate {

namespace constants {
inline constexpr double amu = 1.66053906660e-27;          // kg
inline constexpr double bohr_magneton = 9.2740100783e-24; // J/T
inline constexpr double elementary_charge = 1.602176634e-19;
inline constexpr double vacuum_permittivity = 8.8541878128e-12;
inline constexpr double hbar = 1.054571817e-34;
} // namespace constants

constexpr double khz_2pi(double f) { return 2.0 * 3.14159265358979323846 * 1e3 * f; }
constexpr double mhz_2pi(double f) { return 2.0 * 3.14159265358979323846 * 1e6 * f; }

struct PhysicalParams {
    double nu = khz_2pi(500);          // secular mode
    double eta = 0.01;                 // effective Lamb-Dicke parameter
    double omega_drive = khz_2pi(495); // resonant microwave Rabi frequency
    double omega_r = khz_2pi(99);      // RF Rabi frequency (merged Omega_2 / 2)
    double delta_omega0 = mhz_2pi(5);  // addressing splitting between neighbouring ions
    double omega_E = 0.0;              // electric coupling
    int K = 1;                         // phase-space loops
    double ion_mass = 173.0 * constants::amu;
    double b_gradient = 65.0;          // T/m
    double g_factor = 2.0;
    double omega0 = mhz_2pi(12600);    // nominal qubit splitting, lab frame only
    double eta_laser = 0.01;           // laser Lamb-Dicke parameter

    double epsilon() const { return nu - omega_drive; }

    // Reference parameters with omega_drive fixed by the closure condition.
    static PhysicalParams reference();
    // Same, with omega_drive = nu - eta*nu*sqrt(K).
    PhysicalParams with_closure() const;
};

struct HierarchyLink {
    std::string name;   // e.g. "eps/4 << Omega_r/4"
    double ratio;       // larger side over smaller side
    bool matched;       // a "~" link, reported but never warned
    bool pass;
};

// eps/4 << Omega_r/4 << nu ~ Omega << 4 omega0
std::vector<HierarchyLink> hierarchy_chain(const PhysicalParams& p, double slack = 4.0);
// Warning lines for failing links; also written to std::clog when log is set.
std::vector<std::string> hierarchy_warnings(const PhysicalParams& p, double slack = 4.0,
                                            bool log = true);

// Axial distance between two ions.
double ion_spacing(const PhysicalParams& p);
// g mu_B dB/dz dZ / hbar.  Consistency check only.
double addressing_splitting(const PhysicalParams& p);

} // namespace dgate
