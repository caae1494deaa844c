#pragma once

#include "dgate/core.hpp"
#include "dgate/model.hpp"

#include <string>
#include <vector>

namespace dgate {

enum class EventKind { pi_pulse, rf_phase_flip };

struct ScheduleEvent {
    double time = 0.0;
    EventKind kind = EventKind::rf_phase_flip;
    Axis axis = Axis::z;  // pi_pulse only, dressed-basis axis
};

// How an RF phase flip enters the double-dressed frame angle phi.
//   negate:     phi = omega_r * s * t      (sign of omega_r negated everywhere)
//   continuous: phi = omega_r * int_0^t s  (frame angle keeps running, reversed)
enum class FlipConvention { negate, continuous };
std::string convention_name(FlipConvention c);
FlipConvention parse_convention(const std::string& s);

struct PulseSchedule {
    std::vector<ScheduleEvent> events;
    FlipConvention convention = FlipConvention::negate;
    std::vector<std::string> warnings;

    // Times strictly increasing and inside [0, t_final].
    void validate(double t_final) const;
    int flip_count() const;
};

enum class Method { stepwise_exponential, rk4 };
std::string method_name(Method m);
Method parse_method(const std::string& s);

struct IntegratorConfig {
    Method method = Method::stepwise_exponential;
    int order = 4;                 // stepwise_exponential: 2 (midpoint) or 4 (commutator-free)
    double steps_per_period = 100; // used when max_step == 0
    double max_step = 0.0;         // seconds; 0 = derive from f_max
    double tolerance = 1e-8;       // allowed norm drift per run
    int output_points = 500;
    bool keep_states = true;

    // Step actually used for a model with the given largest frequency (rad/s).
    double step_for(double max_angular_frequency, double t_final) const;
};

struct Observables {
    std::vector<double> fidelity;  // against (|d..d> + i|u..u>)/sqrt2
    std::vector<double> p_dd, p_uu, re_dd_uu, im_dd_uu;
    std::vector<double> mean_phonons;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    Observables obs;
    StateVector final_state;
    double max_norm_drift = 0.0;
    long steps = 0;

    explicit Trajectory(StateVector psi0) : final_state(std::move(psi0)) {}
};

// Spin-only unitary exp(-i pi/2 sum_j sigma_axis^j).
Matrix pi_pulse_unitary(Axis axis, int n_ions);

Trajectory evolve(const HamiltonianModel& model, const StateVector& psi0, double t_final,
                  const IntegratorConfig& cfg, const PulseSchedule& schedule = {});

// exp(-iA) exp(-iF x) exp(-iG p) with x = (b+b^dag)/sqrt2, p = i(b^dag - b)/sqrt2.
Operator analytic_propagator(const PhysicalParams& p, SpaceShape shape, double t,
                             bool electric_on = false);

struct MagnusTerms {
    Operator first_order;
    Operator second_order;
    // Largest relative norm of [H(t1),[H(t2),H(t3)]] over sample times, restricted
    // to Fock levels below cutoff-2 where the truncated [x,p] is exact.
    double third_order_residual = 0.0;
};

MagnusTerms magnus_terms(const PhysicalParams& p, SpaceShape shape, double t);

} // namespace dgate
