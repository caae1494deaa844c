#include <doctest.h>

#include "dgate/analysis.hpp"
#include "dgate/errors.hpp"
#include "dgate/experiment.hpp"

#include <cmath>

using namespace dgate;

TEST_CASE("gate conditions")
{
    const double nu = khz_2pi(500);
    const GateConditions g = gate_conditions(0.01, nu, 1);
    CHECK(g.epsilon / kTwoPi == doctest::Approx(5e3));
    CHECK(g.gate_time == doctest::Approx(2e-4));
    CHECK(g.omega_drive / kTwoPi == doctest::Approx(495e3));

    const GateConditions g4 = gate_conditions(0.01, nu, 4);
    CHECK(g4.gate_time == doctest::Approx(4e-4));

    SUBCASE("eps * tau = 2 pi K for every K")
    {
        for (int k = 1; k <= 9; ++k)
            for (double eta : {0.003, 0.01, 0.05}) {
                const GateConditions c = gate_conditions(eta, nu, k);
                CHECK(c.epsilon * c.gate_time == doctest::Approx(kTwoPi * k).epsilon(1e-12));
                CHECK(nu - c.omega_drive == doctest::Approx(c.epsilon));
            }
    }
    CHECK_THROWS_AS(gate_conditions(0.01, nu, 0), ArgumentError);
    CHECK_THROWS_AS(gate_conditions(0.0, nu, 1), SingularityError);
}

TEST_CASE("phase flip schedule")
{
    const double tau = 2e-4;
    CHECK(build_schedule(0, tau, 1).events.empty());
    const PulseSchedule one = build_schedule(1, tau, 1);
    REQUIRE(one.events.size() == 1);
    CHECK(one.events[0].time == doctest::Approx(1e-4));
    const PulseSchedule many = build_schedule(19, tau, 1);
    REQUIRE(many.events.size() == 19);
    for (int i = 0; i < 19; ++i) CHECK(many.events[i].time == doctest::Approx((i + 1) * 1e-5));
    CHECK(many.warnings.empty());
    CHECK_NOTHROW(many.validate(tau));
    CHECK(build_schedule(2, tau, 1).warnings.size() == 1);
    CHECK_THROWS_AS(build_schedule(-1, tau, 1), ArgumentError);
    CHECK(build_schedule(3, tau, 1, FlipConvention::continuous).convention == FlipConvention::continuous);
}

TEST_CASE("gate plan invariants")
{
    GatePlan p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.gate_time() == doctest::Approx(2e-4));

    SUBCASE("changing K without closing the loop is rejected")
    {
        p.params.K = 4;
        CHECK_THROWS_AS(p.validate(), ArgumentError);
        p.close_loop();
        CHECK_NOTHROW(p.validate());
        CHECK(p.epsilon() / kTwoPi == doctest::Approx(10e3));
    }
    SUBCASE("pi pulse needs even K and no flips")
    {
        p.pi_pulse = Axis::z;
        CHECK_THROWS_AS(p.validate(), ArgumentError);
        p.n_phase_flips = 0;
        CHECK_THROWS_AS(p.validate(), ArgumentError);
        p.params.K = 2;
        p.close_loop();
        CHECK_NOTHROW(p.validate());
        const PulseSchedule s = p.schedule();
        REQUIRE(s.events.size() == 1);
        CHECK(s.events[0].kind == EventKind::pi_pulse);
        CHECK(s.events[0].time == doctest::Approx(0.5 * p.gate_time()));
    }
    SUBCASE("labels and spins")
    {
        p.enabled_terms.insert("dephasing");
        CHECK_THROWS_AS(p.validate(), ArgumentError);
        p.enabled_terms = {"gate"};
        p.initial_spins = "ddd";
        CHECK_THROWS_AS(p.validate(), ArgumentError);
    }
    SUBCASE("laser closure")
    {
        GatePlan l = named_scenario("laser-variant");
        CHECK_NOTHROW(l.validate());
        CHECK(l.epsilon() == doctest::Approx(l.params.eta_laser * l.params.omega_drive));
    }
}

TEST_CASE("named scenarios")
{
    for (const auto& n : scenario_names()) {
        const GatePlan p = named_scenario(n);
        CHECK(p.name == n);
        CHECK_NOTHROW(p.validate());
    }
    CHECK(named_scenario("fig5-19flip").n_phase_flips == 19);
    CHECK(named_scenario("fig5-99flip-no-crosstalk").enabled_terms.count("crosstalk") == 0);
    CHECK(named_scenario("electric-field").params.omega_E == doctest::Approx(khz_2pi(99) / 30));
    CHECK_THROWS_AS(named_scenario("fig6"), ArgumentError);
}

TEST_CASE("closeout phase")
{
    PhysicalParams p = PhysicalParams::reference();
    SUBCASE("already a whole number of turns")
    {
        // Omega/2 * tau = 2 pi * 49.5 for the defaults; choose tau for whole turns
        const double tau = kTwoPi * 50 / (0.5 * p.omega_drive);
        const Closeout c = closeout_phase(p, tau, p.omega_drive);
        CHECK(c.t_add == 0.0);
        CHECK(c.n == 50);
    }
    SUBCASE("residual phase is closed")
    {
        const double tau = 2e-4;
        const double w_new = khz_2pi(200);
        const Closeout c = closeout_phase(p, tau, w_new);
        CHECK(c.t_add >= 0.0);
        const double total = 0.5 * p.omega_drive * tau + 0.5 * w_new * c.t_add;
        CHECK(total == doctest::Approx(kTwoPi * c.n).epsilon(1e-12));
        CHECK(0.5 * w_new * c.t_add < kTwoPi);
        CHECK_THROWS_AS(closeout_phase(p, tau, 0.0), ArgumentError);
    }
}

TEST_CASE("gate-only scenario closes the loop")
{
    IntegratorConfig cfg;
    cfg.output_points = 101;
    const ScenarioResult r = run_scenario(named_scenario("fig4-baseline"), cfg);
    CHECK(r.summary.final_fidelity > 1 - 1e-8);
    CHECK(r.summary.spin_purity > 1 - 1e-8);
    CHECK(r.summary.final_mean_phonons < 1e-8);
    // |dd> holds Z = +-2 sectors with weight 1/2, so the peak is 1/(2K)
    CHECK(r.summary.peak_mean_phonons == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(r.summary.n_phase_flips == 1);

    SUBCASE("K = 2 with a mid-gate pi pulse keeps the ideal gate")
    {
        GatePlan p = named_scenario("fig4-baseline");
        p.params.K = 2;
        p.close_loop();
        p.n_phase_flips = 0;
        p.pi_pulse = Axis::z;
        const ScenarioResult r2 = run_scenario(p, cfg);
        CHECK(r2.summary.final_fidelity > 1 - 1e-8);
        CHECK(r2.summary.peak_mean_phonons == doctest::Approx(0.25).epsilon(1e-3));
    }
}

TEST_CASE("phase flips refocus the static RF frame error")
{
    // A static detuning of the dressing is cancelled by an odd number of flips.
    GatePlan p = named_scenario("fig4-baseline");
    p.enabled_terms = {"gate", "fast_rf"};
    p.phonon_cutoff = 8;
    IntegratorConfig cfg;
    cfg.output_points = 2;
    cfg.keep_states = false;
    p.n_phase_flips = 0;
    const double if0 = run_scenario(p, cfg).summary.infidelity;
    p.n_phase_flips = 1;
    const double if1 = run_scenario(p, cfg).summary.infidelity;
    MESSAGE("fast_rf infidelity, 0 flips: " << if0 << ", 1 flip: " << if1);
    CHECK(if1 < if0);
}

TEST_CASE("scenario runs are deterministic")
{
    GatePlan p = named_scenario("crosstalk-only");
    p.phonon_cutoff = 6;
    IntegratorConfig cfg;
    cfg.output_points = 20;
    const ScenarioResult a = run_scenario(p, cfg);
    const ScenarioResult b = run_scenario(p, cfg);
    CHECK(a.summary.final_fidelity == b.summary.final_fidelity);
    CHECK(a.trajectory.obs.fidelity == b.trajectory.obs.fidelity);
    CHECK(a.summary.steps == b.summary.steps);
}
