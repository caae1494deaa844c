#pragma once

#include "dgate/core.hpp"
#include "dgate/experiment.hpp"
#include "dgate/params.hpp"

#include <set>
#include <string>
#include <vector>

namespace dgate {

// <Psi+|rho_spin|Psi+>, Psi+ = (|dd> + i|uu>)/sqrt2.  Two ions only.
double bell_fidelity(const StateVector& state);
double mean_phonons(const StateVector& state);
// Tr(rho_spin^2) for the normalized state.
double spin_purity(const StateVector& state);

// S_BB(Omega) = S_BB(20 kHz) (20 kHz / f)^2 with f = omega_drive / 2 pi.  Hz.
double magnetic_noise_residual(double s_at_20khz, double omega_drive);

struct NoiseInputs {
    double s_bb_20khz = 1.0;        // Hz
    double rabi_fraction = 0.01;    // S_{Omega,Omega}(0) = fraction * Omega
    double rabi_r_fraction = 0.01;  // S_{Omega_r,Omega_r}(0) = fraction * Omega_r
    bool echo = true;               // phase flip refocuses the quasi-static Rabi terms
};

struct NoiseBudget {
    double s_bb_dressed = 0.0;         // Hz
    double s_rabi_second_order = 0.0;  // Hz, S(0)^2 / Omega_r, echo-refocused
    double s_rabi_r = 0.0;             // Hz, echo-refocused
    bool rabi_terms_refocused = true;
    double total_infidelity = 0.0;     // rate x gate_time over unrefocused rates
};

NoiseBudget noise_budget(const PhysicalParams& p, double gate_time, const NoiseInputs& in = {});

// Worst-case infidelity of exp(-i J t O) for a coupling O with eigenvalue
// spread 2 (the XY and ZZ forms): sin^2(J t).
double coupling_infidelity(double coupling, double gate_time);

struct TermRun {
    std::set<std::string> terms;
    double infidelity = 0.0;
};

struct DecompositionRow {
    std::string label;  // removed term(s), "residual" for the interaction row
    double infidelity = 0.0;
};

// Attribution against the run with the largest term set; every other run
// must use a subset of it.
std::vector<DecompositionRow> infidelity_decomposition(const std::vector<TermRun>& runs);
std::vector<DecompositionRow> infidelity_decomposition(const std::vector<ScenarioSummary>& runs);

} // namespace dgate
