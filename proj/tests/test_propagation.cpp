#include <doctest.h>

#include "dgate/errors.hpp"
#include "dgate/experiment.hpp"
#include "dgate/propagation.hpp"

#include <cmath>

using namespace dgate;

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double overlap2(const Vector& a, const Vector& b) { return std::norm(a.dot(b)); }

// Product state with every ion in the +1 eigenstate of S_x, so sum S_x = n.
StateVector sx_eigenstate(SpaceShape s)
{
    Vector one(2);
    one << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    Vector spin = one;
    for (int j = 1; j < s.n_ions; ++j) {
        Vector next(spin.size() * 2);
        for (Eigen::Index a = 0; a < spin.size(); ++a) next.segment(2 * a, 2) = spin(a) * one;
        spin = next;
    }
    Vector phon = Vector::Zero(s.phonon_cutoff);
    phon(0) = 1.0;
    Vector v(s.total_dim());
    for (Eigen::Index a = 0; a < spin.size(); ++a) v.segment(a * s.phonon_cutoff, s.phonon_cutoff) = spin(a) * phon;
    return StateVector(s, v);
}

IntegratorConfig quick(int points = 50)
{
    IntegratorConfig c;
    c.output_points = points;
    c.keep_states = true;
    return c;
}

} // namespace

TEST_CASE("zero Hamiltonian leaves the state unchanged")
{
    const SpaceShape s(2, 4);
    const auto m = dressed_frame_hamiltonian(PhysicalParams::reference(), s, {});
    const StateVector psi = basis_state(s, "ud", 1);
    IntegratorConfig cfg = quick(5);
    cfg.max_step = 1e-6;
    const Trajectory tr = evolve(m, psi, 1e-4, cfg);
    CHECK(max_abs(tr.final_state.amplitudes() - psi.amplitudes()) == 0.0);
    CHECK(tr.times.size() == 5);
    CHECK(tr.times.back() == 1e-4);
}

TEST_CASE("time-independent Hamiltonian matches the matrix exponential")
{
    PhysicalParams p = PhysicalParams::reference();
    const SpaceShape s(1, 6);
    const auto m = laser_hamiltonian(p, s, LaserOrder::lamb_dicke_2);
    const StateVector psi = basis_state(s, "d", 0);
    const double t = 3e-6;
    const Vector want = expm_hermitian(m.at(0.0).matrix(), t) * psi.amplitudes();
    for (int order : {2, 4}) {
        IntegratorConfig cfg = quick(3);
        cfg.order = order;
        cfg.max_step = 1e-8;
        const Trajectory tr = evolve(m, psi, t, cfg);
        CHECK(overlap2(want, tr.final_state.amplitudes()) > 1 - 1e-12);
    }
}

TEST_CASE("gate-only evolution follows the analytic propagator")
{
    const GatePlan plan = named_scenario("fig4-baseline");
    const PhysicalParams& p = plan.params;
    const SpaceShape s = plan.shape();
    const auto m = build_model(plan);
    const StateVector psi0 = initial_state(plan);
    const double tau = plan.gate_time();
    const Trajectory tr = evolve(m, psi0, tau, quick(21));
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        const Vector want = analytic_propagator(p, s, tr.times[k]).matrix() * psi0.amplitudes();
        CHECK(overlap2(want, tr.states[k].amplitudes()) > 1 - 1e-8);
    }
    CHECK(tr.max_norm_drift < 1e-8);
}

TEST_CASE("analytic propagator identities")
{
    const PhysicalParams p = PhysicalParams::reference();
    const SpaceShape s(2, 16);
    const double tau = kTwoPi * p.K / p.epsilon();
    const Operator u = analytic_propagator(p, s, tau);
    CHECK(u.is_unitary());
    SUBCASE("loop closes on a pure spin phase")
    {
        Matrix z = Matrix::Zero(4, 4);
        for (int j = 0; j < 2; ++j) z -= spin_pauli(Axis::x, j, 2);
        const Matrix want = Operator::kron(s, expm_hermitian(z * z, -kPi / 8.0), Matrix::Identity(16, 16)).matrix();
        CHECK(max_abs(u.matrix() - want) < 1e-10);
    }
    SUBCASE("half loop displaces a Z = -2 sector to <N> = 1/K")
    {
        const StateVector psi = sx_eigenstate(s);
        const StateVector half = apply(analytic_propagator(p, s, 0.5 * tau), psi);
        const Eigen::VectorXd pops = half.phonon_populations();
        double n = 0;
        for (int k = 0; k < 16; ++k) n += k * pops(k);
        CHECK(n == doctest::Approx(1.0 / p.K).epsilon(1e-8));
    }
    SUBCASE("epsilon = 0")
    {
        PhysicalParams q = p;
        q.omega_drive = q.nu;
        CHECK_THROWS_AS(analytic_propagator(q, s, 1e-5), SingularityError);
        CHECK_THROWS_AS(magnus_terms(q, s, 1e-5), SingularityError);
    }
}

TEST_CASE("Magnus expansion")
{
    const PhysicalParams p = PhysicalParams::reference();
    const SpaceShape s(2, 12);
    const double tau = kTwoPi * p.K / p.epsilon();
    const MagnusTerms mt = magnus_terms(p, s, tau);
    CHECK(max_abs(mt.first_order.matrix()) < 1e-12);
    Matrix z = Matrix::Zero(4, 4);
    for (int j = 0; j < 2; ++j) z -= spin_pauli(Axis::x, j, 2);
    const Matrix want = Operator::kron(s, (I1 * kPi / 8.0) * (z * z), Matrix::Identity(12, 12)).matrix();
    CHECK(max_abs(mt.second_order.matrix() - want) < 1e-12);
    CHECK(mt.third_order_residual < 1e-12);

    SUBCASE("first order grows and returns")
    {
        const MagnusTerms mid = magnus_terms(p, s, 0.5 * tau);
        CHECK(mid.first_order.norm() > 0.1);
    }
}

TEST_CASE("step size guard")
{
    IntegratorConfig cfg;
    const double w = kTwoPi * 1e6;
    CHECK(cfg.step_for(w, 1.0) == doctest::Approx(1.0 / (100 * 1e6)));
    cfg.max_step = 1.0 / (40 * 1e6);
    CHECK_THROWS_AS(cfg.step_for(w, 1.0), ConfigError);
    cfg.max_step = 1.0 / (50 * 1e6);
    CHECK_NOTHROW(cfg.step_for(w, 1.0));
    cfg.max_step = 0.0;
    CHECK(cfg.step_for(0.0, 2.5) == 2.5);
}

TEST_CASE("evolution stays unitary with all terms and flips")
{
    GatePlan plan = named_scenario("fig5-1flip");
    plan.phonon_cutoff = 6;
    const auto m = build_model(plan);
    const double t = 0.1 * plan.gate_time();
    PulseSchedule sched = build_schedule(3, t, plan.K());
    for (auto conv : {FlipConvention::negate, FlipConvention::continuous}) {
        sched.convention = conv;
        const Trajectory tr = evolve(m, initial_state(plan), t, quick(10), sched);
        CHECK(tr.max_norm_drift < 1e-10);
        CHECK(std::abs(tr.final_state.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("rk4 and second-order paths converge to the default")
{
    const GatePlan plan = named_scenario("fig4-baseline");
    const auto m = build_model(plan);
    const double t = 0.3 * plan.gate_time();
    const Trajectory ref = evolve(m, initial_state(plan), t, quick(2));
    IntegratorConfig c2 = quick(2);
    c2.order = 2;
    c2.steps_per_period = 1000;
    CHECK(overlap2(ref.final_state.amplitudes(), evolve(m, initial_state(plan), t, c2).final_state.amplitudes()) >
          1 - 1e-8);
    IntegratorConfig c4 = quick(2);
    c4.method = Method::rk4;
    c4.steps_per_period = 400;
    CHECK(overlap2(ref.final_state.amplitudes(), evolve(m, initial_state(plan), t, c4).final_state.amplitudes()) >
          1 - 1e-8);
    IntegratorConfig bad = quick(2);
    bad.order = 3;
    CHECK_THROWS_AS(evolve(m, initial_state(plan), t, bad), ConfigError);
}

TEST_CASE("norm drift beyond tolerance raises")
{
    GatePlan plan = named_scenario("fig5-1flip");
    plan.phonon_cutoff = 4;
    const auto m = build_model(plan);
    IntegratorConfig cfg = quick(4);
    cfg.method = Method::rk4;
    cfg.steps_per_period = 50;
    cfg.tolerance = 1e-15;
    CHECK_THROWS_AS(evolve(m, initial_state(plan), 0.2 * plan.gate_time(), cfg), NormDriftError);
}

TEST_CASE("schedule validation and pi pulses")
{
    PulseSchedule s;
    s.events = {{2e-5, EventKind::rf_phase_flip, Axis::z}, {1e-5, EventKind::rf_phase_flip, Axis::z}};
    CHECK_THROWS_AS(s.validate(1e-4), ArgumentError);
    s.events = {{2e-4, EventKind::rf_phase_flip, Axis::z}};
    CHECK_THROWS_AS(s.validate(1e-4), ArgumentError);

    const Matrix u = pi_pulse_unitary(Axis::z, 2);
    CHECK(max_abs(u * u.adjoint() - Matrix::Identity(4, 4)) < 1e-15);
    // two ions: (-i)^2 sigma_z sigma_z
    CHECK(max_abs(u + spin_pauli(Axis::z, 0, 2) * spin_pauli(Axis::z, 1, 2)) < 1e-15);
}

TEST_CASE("events are applied before the record at the same time")
{
    const SpaceShape s(1, 2);
    const auto m = dressed_frame_hamiltonian(PhysicalParams::reference(), s, {});
    PulseSchedule sched;
    sched.events = {{0.5e-5, EventKind::pi_pulse, Axis::x}};
    IntegratorConfig cfg = quick(3);
    cfg.max_step = 1e-6;
    const Trajectory tr = evolve(m, basis_state(s, "d", 0), 1e-5, cfg, sched);
    // pi pulse about x swaps d and u
    CHECK(std::abs(tr.states[1].amplitudes()(0)) == doctest::Approx(1.0));
    CHECK(std::abs(tr.states[0].amplitudes()(2)) == doctest::Approx(1.0));
}
