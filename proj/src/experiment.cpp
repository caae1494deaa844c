#include "dgate/experiment.hpp"
#include "dgate/errors.hpp"

#include <cmath>
#include <iostream>

namespace dgate {

GateConditions gate_conditions(double eta, double nu, int K)
{
    if (K < 1) throw ArgumentError("K must be >= 1");
    if (eta * nu == 0.0) throw SingularityError("gate_conditions: eta*nu = 0");
    const double rk = std::sqrt(static_cast<double>(K));
    GateConditions g;
    g.epsilon = eta * nu * rk;
    g.gate_time = kTwoPi * rk / (eta * nu);
    g.omega_drive = nu - g.epsilon;
    return g;
}

PulseSchedule build_schedule(int n_flips, double gate_time, int /*K*/, FlipConvention convention)
{
    if (n_flips < 0) throw ArgumentError("n_flips must be >= 0");
    PulseSchedule s;
    s.convention = convention;
    for (int i = 1; i <= n_flips; ++i)
        s.events.push_back({i * gate_time / (n_flips + 1), EventKind::rf_phase_flip, Axis::z});
    if (n_flips > 0 && n_flips % 2 == 0) {
        s.warnings.push_back("even number of phase flips (" + std::to_string(n_flips) +
                             "): refocusing of odd-in-Omega_r terms is incomplete");
        std::clog << "warning: " << s.warnings.back() << '\n';
    }
    return s;
}

void GatePlan::close_loop()
{
    const double rk = std::sqrt(static_cast<double>(params.K));
    if (laser) {
        // eps = eta_L Omega sqrt(K) with Omega = nu - eps
        const double e = params.eta_laser * rk;
        params.omega_drive = params.nu / (1.0 + e);
    } else {
        params.omega_drive = gate_conditions(params.eta, params.nu, params.K).omega_drive;
    }
}

void GatePlan::validate() const
{
    if (params.K < 1) throw ArgumentError("K must be >= 1");
    if (n_phase_flips < 0) throw ArgumentError("n_phase_flips must be >= 0");
    if (static_cast<int>(initial_spins.size()) != n_ions)
        throw ArgumentError("initial_spins must have one label per ion");
    const double rk = std::sqrt(static_cast<double>(params.K));
    const double want = laser ? params.eta_laser * params.omega_drive * rk : params.eta * params.nu * rk;
    if (std::abs(params.epsilon() - want) > 1e-9 * std::abs(want))
        throw ArgumentError("plan violates the closure condition eps = coupling * sqrt(K)");
    if (pi_pulse) {
        if (params.K % 2 != 0) throw ArgumentError("a mid-gate pi pulse requires even K");
        if (n_phase_flips != 0) throw ArgumentError("pi_pulse and phase flips are exclusive");
    }
    for (const auto& l : enabled_terms)
        if (!(laser ? laser_labels() : microwave_labels()).count(l))
            throw ArgumentError("unknown term label '" + l + "'");
}

PulseSchedule GatePlan::schedule() const
{
    PulseSchedule s = build_schedule(n_phase_flips, gate_time(), params.K, convention);
    if (pi_pulse) s.events.push_back({0.5 * gate_time(), EventKind::pi_pulse, *pi_pulse});
    return s;
}

HamiltonianModel build_model(const GatePlan& plan)
{
    if (plan.laser) return laser_dressed_frame_hamiltonian(plan.params, plan.shape(), plan.enabled_terms);
    MicrowaveOptions opt;
    opt.electric_rwa = plan.electric_rwa;
    return dressed_frame_hamiltonian(plan.params, plan.shape(), plan.enabled_terms, opt);
}

StateVector initial_state(const GatePlan& plan)
{
    return basis_state(plan.shape(), plan.initial_spins, plan.initial_phonons);
}

ScenarioResult run_scenario(const GatePlan& plan, const PulseSchedule& schedule,
                            const IntegratorConfig& cfg)
{
    plan.validate();
    const HamiltonianModel model = build_model(plan);
    Trajectory tr = evolve(model, initial_state(plan), plan.gate_time(), cfg, schedule);

    ScenarioSummary s;
    s.name = plan.name;
    s.final_fidelity = tr.obs.fidelity.back();
    s.infidelity = 1.0 - s.final_fidelity;
    s.final_mean_phonons = tr.obs.mean_phonons.back();
    for (double n : tr.obs.mean_phonons) s.peak_mean_phonons = std::max(s.peak_mean_phonons, n);
    const Matrix rho = tr.final_state.spin_density();
    s.spin_purity = (rho * rho).trace().real() / std::pow(tr.final_state.norm(), 4);
    s.max_norm_drift = tr.max_norm_drift;
    s.gate_time = plan.gate_time();
    s.epsilon = plan.epsilon();
    s.K = plan.params.K;
    s.n_phase_flips = schedule.flip_count();
    s.steps = tr.steps;
    s.enabled_terms = plan.enabled_terms;
    return {std::move(tr), std::move(s)};
}

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names{
        "fig4-baseline", "fig5-1flip",     "fig5-19flip",  "fig5-99flip-no-crosstalk",
        "crosstalk-only", "electric-field", "laser-variant"};
    return names;
}

GatePlan named_scenario(const std::string& name)
{
    const std::set<std::string> all{"gate", "crosstalk", "fast_rf", "xy_residual", "zz_residual"};
    GatePlan p;
    p.name = name;
    if (name == "fig4-baseline") {
        p.enabled_terms = {"gate"};
    } else if (name == "fig5-1flip") {
        p.enabled_terms = all;
    } else if (name == "fig5-19flip") {
        p.enabled_terms = all;
        p.n_phase_flips = 19;
    } else if (name == "fig5-99flip-no-crosstalk") {
        p.enabled_terms = {"gate", "fast_rf", "xy_residual", "zz_residual"};
        p.n_phase_flips = 99;
    } else if (name == "crosstalk-only") {
        p.enabled_terms = {"gate", "crosstalk"};
    } else if (name == "electric-field") {
        p.enabled_terms = all;
        p.enabled_terms.insert("electric");
        p.params.omega_E = p.params.omega_r / 30.0;
        p.phonon_cutoff = 30;
    } else if (name == "laser-variant") {
        p.laser = true;
        p.enabled_terms = {"gate"};
        p.close_loop();
    } else {
        throw ArgumentError("unknown scenario '" + name + "'");
    }
    return p;
}

Closeout closeout_phase(const PhysicalParams& p, double gate_time, double omega_new)
{
    const double acc = 0.5 * p.omega_drive * gate_time;
    const double turns = acc / kTwoPi;
    const double nearest = std::round(turns);
    if (std::abs(turns - nearest) < 1e-9 * std::max(1.0, std::abs(turns)))
        return {0.0, static_cast<long>(nearest)};
    if (omega_new == 0.0)
        throw ArgumentError("closeout_phase: omega_new = 0 cannot cancel a residual phase");
    const double n = omega_new > 0 ? std::ceil(turns) : std::floor(turns);
    return {(kTwoPi * n - acc) / (0.5 * omega_new), static_cast<long>(n)};
}

} // namespace dgate
