#pragma once

#include "dgate/model.hpp"
#include "dgate/propagation.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dgate {

struct GateConditions {
    double epsilon = 0.0;
    double gate_time = 0.0;
    double omega_drive = 0.0;
};

// eps = eta nu sqrt(K), tau = 2 pi sqrt(K) / (eta nu), Omega = nu - eps.
GateConditions gate_conditions(double eta, double nu, int K);

// Events at i * gate_time / (n_flips + 1).  Even n_flips > 0 adds a warning.
PulseSchedule build_schedule(int n_flips, double gate_time, int K,
                             FlipConvention convention = FlipConvention::negate);

struct GatePlan {
    std::string name = "custom";
    PhysicalParams params = PhysicalParams::reference();
    int n_ions = 2;
    int phonon_cutoff = 16;
    int n_phase_flips = 1;
    std::set<std::string> enabled_terms{"gate"};
    std::string initial_spins = "dd";
    int initial_phonons = 0;
    FlipConvention convention = FlipConvention::negate;
    std::optional<Axis> pi_pulse;  // single pi pulse at gate_time / 2
    bool laser = false;            // laser variant, coupling eta_laser * Omega / 4
    bool electric_rwa = true;

    int K() const { return params.K; }
    double epsilon() const { return params.epsilon(); }
    double gate_time() const { return kTwoPi * params.K / params.epsilon(); }
    SpaceShape shape() const { return SpaceShape(n_ions, phonon_cutoff); }

    // Re-derive omega_drive from the closure condition for the current
    // eta (or eta_laser), nu and K.
    void close_loop();
    // Throws ArgumentError when the plan's invariants do not hold.
    void validate() const;
    PulseSchedule schedule() const;
};

HamiltonianModel build_model(const GatePlan& plan);
StateVector initial_state(const GatePlan& plan);

struct ScenarioSummary {
    std::string name;
    double final_fidelity = 0.0;
    double infidelity = 0.0;
    double peak_mean_phonons = 0.0;
    double final_mean_phonons = 0.0;
    double spin_purity = 0.0;
    double max_norm_drift = 0.0;
    double gate_time = 0.0;
    double epsilon = 0.0;
    int K = 1;
    int n_phase_flips = 0;
    long steps = 0;
    std::set<std::string> enabled_terms;
};

struct ScenarioResult {
    Trajectory trajectory;
    ScenarioSummary summary;
};

ScenarioResult run_scenario(const GatePlan& plan, const PulseSchedule& schedule,
                            const IntegratorConfig& cfg);
inline ScenarioResult run_scenario(const GatePlan& plan, const IntegratorConfig& cfg)
{
    return run_scenario(plan, plan.schedule(), cfg);
}

const std::vector<std::string>& scenario_names();
GatePlan named_scenario(const std::string& name);

struct Closeout {
    double t_add = 0.0;
    long n = 0;
};

// Smallest t_add >= 0 with (Omega/2) tau + (omega_new/2) t_add = 2 pi n.
Closeout closeout_phase(const PhysicalParams& p, double gate_time, double omega_new);

} // namespace dgate
