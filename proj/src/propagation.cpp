#include "dgate/propagation.hpp"
#include "dgate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dgate {

std::string convention_name(FlipConvention c)
{
    return c == FlipConvention::negate ? "negate" : "continuous";
}

FlipConvention parse_convention(const std::string& s)
{
    if (s == "negate") return FlipConvention::negate;
    if (s == "continuous") return FlipConvention::continuous;
    throw ArgumentError("unknown flip convention '" + s + "'");
}

std::string method_name(Method m)
{
    return m == Method::rk4 ? "rk4" : "stepwise_exponential";
}

Method parse_method(const std::string& s)
{
    if (s == "rk4") return Method::rk4;
    if (s == "stepwise_exponential") return Method::stepwise_exponential;
    throw ArgumentError("unknown integrator method '" + s + "'");
}

void PulseSchedule::validate(double t_final) const
{
    double last = -1.0;
    for (const auto& e : events) {
        if (e.time < 0.0 || e.time > t_final)
            throw ArgumentError("schedule event outside [0, t_final]");
        if (e.time <= last) throw ArgumentError("schedule event times must strictly increase");
        last = e.time;
    }
}

int PulseSchedule::flip_count() const
{
    return static_cast<int>(std::count_if(events.begin(), events.end(), [](const auto& e) {
        return e.kind == EventKind::rf_phase_flip;
    }));
}

double IntegratorConfig::step_for(double max_angular_frequency, double t_final) const
{
    const double f_max = max_angular_frequency / kTwoPi;
    double h = max_step;
    if (h <= 0.0) h = f_max > 0.0 ? 1.0 / (steps_per_period * f_max) : t_final;
    if (f_max > 0.0 && h > (1.0 + 1e-12) / (50.0 * f_max)) {
        std::ostringstream os;
        os << "max_step " << h << " s exceeds 1/(50 f_max) with f_max = " << f_max << " Hz";
        throw ConfigError(os.str());
    }
    if (!(h > 0.0)) throw ConfigError("integrator step must be positive");
    return h;
}

Matrix pi_pulse_unitary(Axis axis, int n_ions)
{
    // exp(-i pi/2 sigma) = -i sigma on each ion
    Matrix u = Matrix::Identity(1 << n_ions, 1 << n_ions);
    for (int j = 0; j < n_ions; ++j) u = (-I1 * spin_pauli(axis, j, n_ions)) * u;
    return u;
}

namespace {

struct Stepper {
    const HamiltonianModel& model;
    const IntegratorConfig& cfg;
    SpinBlocks b1, b2, comb;
    Vector work, term, tmp;

    Stepper(const HamiltonianModel& m, const IntegratorConfig& c)
        : model(m), cfg(c), b1(m.zero_blocks()), b2(m.zero_blocks()), comb(m.zero_blocks())
    {
    }

    // psi <- exp(-i h H) psi for H given by blocks
    void expmv(const SpinBlocks& blocks, double h, Vector& psi)
    {
        const double scale = h * model.norm_bound(blocks);
        const int sub = std::max(1, static_cast<int>(std::ceil(scale / 0.5)));
        const double hs = h / sub;
        for (int s = 0; s < sub; ++s) {
            term = psi;
            int k = 1;
            for (; k <= 40; ++k) {
                model.apply(blocks, term, tmp);
                term = (-I1 * hs / double(k)) * tmp;
                psi += term;
                if (term.norm() <= 1e-17 * psi.norm()) break;
            }
            if (k > 40) throw IntegrationError("Taylor series for the step exponential did not converge");
        }
    }

    void step(const std::function<DriveClock(double)>& clock, double t, double h, Vector& psi)
    {
        if (cfg.method == Method::rk4) {
            rk4(clock, t, h, psi);
            return;
        }
        if (cfg.order == 2) {
            model.accumulate(clock(t + 0.5 * h), b1);
            expmv(b1, h, psi);
            return;
        }
        static const double s3 = std::sqrt(3.0);
        const double c1 = 0.5 - s3 / 6.0, c2 = 0.5 + s3 / 6.0;
        const double a1 = (3.0 - 2.0 * s3) / 12.0, a2 = (3.0 + 2.0 * s3) / 12.0;
        model.accumulate(clock(t + c1 * h), b1);
        model.accumulate(clock(t + c2 * h), b2);
        for (std::size_t p = 0; p < comb.size(); ++p) comb[p] = a2 * b1[p] + a1 * b2[p];
        expmv(comb, h, psi);
        for (std::size_t p = 0; p < comb.size(); ++p) comb[p] = a1 * b1[p] + a2 * b2[p];
        expmv(comb, h, psi);
    }

    void rk4(const std::function<DriveClock(double)>& clock, double t, double h, Vector& psi)
    {
        auto f = [&](double tt, const Vector& x, Vector& out) {
            model.accumulate(clock(tt), b1);
            model.apply(b1, x, out);
            out *= -I1;
        };
        Vector k1, k2, k3, k4;
        f(t, psi, k1);
        f(t + 0.5 * h, psi + 0.5 * h * k1, k2);
        f(t + 0.5 * h, psi + 0.5 * h * k2, k3);
        f(t + h, psi + h * k3, k4);
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
};

void record(Trajectory& tr, double t, const StateVector& psi, bool keep)
{
    const SpaceShape& s = psi.shape();
    const Matrix rho = psi.spin_density();
    const int dd = s.spin_dim() - 1, uu = 0;
    const cplx cdu = rho(dd, uu);
    // <Psi|rho|Psi> with Psi = (|dd> + i|uu>)/sqrt2
    const double fid = 0.5 * (rho(dd, dd).real() + rho(uu, uu).real()) + (I1 * rho(dd, uu)).real();
    tr.times.push_back(t);
    tr.obs.fidelity.push_back(fid);
    tr.obs.p_dd.push_back(rho(dd, dd).real());
    tr.obs.p_uu.push_back(rho(uu, uu).real());
    tr.obs.re_dd_uu.push_back(cdu.real());
    tr.obs.im_dd_uu.push_back(cdu.imag());
    const Eigen::VectorXd pops = psi.phonon_populations();
    double n = 0.0;
    for (Eigen::Index k = 0; k < pops.size(); ++k) n += k * pops(k);
    tr.obs.mean_phonons.push_back(n);
    if (keep) tr.states.push_back(psi);
}

} // namespace

Trajectory evolve(const HamiltonianModel& model, const StateVector& psi0, double t_final,
                  const IntegratorConfig& cfg, const PulseSchedule& schedule)
{
    if (!(psi0.shape() == model.shape())) throw ArgumentError("state and model shapes differ");
    if (std::abs(psi0.norm() - 1.0) > 1e-10) throw ArgumentError("initial state is not normalized");
    if (t_final < 0.0) throw ArgumentError("t_final must be >= 0");
    if (cfg.output_points < 2) throw ConfigError("output_points must be >= 2");
    if (cfg.method == Method::stepwise_exponential && cfg.order != 2 && cfg.order != 4)
        throw ConfigError("stepwise_exponential order must be 2 or 4");
    schedule.validate(t_final);
    const double h_max = cfg.step_for(model.max_frequency(), t_final);

    // Stops: output grid and event times, merged.
    struct Stop {
        double t;
        bool output;
        int event;  // index or -1
    };
    std::vector<Stop> stops;
    const int m = cfg.output_points;
    for (int k = 0; k < m; ++k)
        stops.push_back({k == m - 1 ? t_final : t_final * k / (m - 1), true, -1});
    for (std::size_t e = 0; e < schedule.events.size(); ++e)
        stops.push_back({schedule.events[e].time, false, static_cast<int>(e)});
    std::stable_sort(stops.begin(), stops.end(),
                     [](const Stop& a, const Stop& b) { return a.t < b.t; });

    Trajectory tr(psi0);
    Vector psi = psi0.amplitudes();
    Stepper stepper(model, cfg);
    const SpaceShape shape = model.shape();

    double sign = 1.0, seg_t0 = 0.0, seg_theta0 = 0.0;
    const bool continuous = schedule.convention == FlipConvention::continuous;
    auto clock = [&](double t) {
        DriveClock c;
        c.t = t;
        c.rf_sign = sign;
        c.rf_time = continuous ? seg_theta0 + sign * (t - seg_t0) : sign * t;
        return c;
    };

    double t = 0.0;
    std::size_t i = 0;
    while (i < stops.size()) {
        const double target = stops[i].t;
        if (target > t) {
            const double span = target - t;
            const long n = std::max(1L, static_cast<long>(std::ceil(span / h_max * (1 - 1e-12))));
            const double h = span / n;
            for (long k = 0; k < n; ++k) stepper.step(clock, t + k * h, h, psi);
            tr.steps += n;
            t = target;
        }
        // Events at this time first, then the record.
        std::size_t j = i;
        bool out = false;
        for (; j < stops.size() && stops[j].t == target; ++j) {
            if (stops[j].output) out = true;
            if (stops[j].event < 0) continue;
            const ScheduleEvent& ev = schedule.events[stops[j].event];
            if (ev.kind == EventKind::rf_phase_flip) {
                seg_theta0 = seg_theta0 + sign * (t - seg_t0);
                seg_t0 = t;
                sign = -sign;
            } else {
                const Matrix u = pi_pulse_unitary(ev.axis, shape.n_ions);
                Eigen::Map<Matrix> X(psi.data(), shape.phonon_cutoff, shape.spin_dim());
                X = (X * u.transpose()).eval();
            }
        }
        if (out) {
            const double drift = std::abs(psi.norm() - 1.0);
            tr.max_norm_drift = std::max(tr.max_norm_drift, drift);
            if (drift > cfg.tolerance) {
                std::ostringstream os;
                os << "norm drift " << drift << " at t = " << t << " s exceeds tolerance "
                   << cfg.tolerance;
                throw NormDriftError(os.str());
            }
            record(tr, t, StateVector(shape, psi), cfg.keep_states);
        }
        i = j;
    }
    tr.final_state = StateVector(shape, psi);
    return tr;
}

namespace {

Matrix sigma_z_dd_sum(int n_ions)
{
    // double-dressed sigma_z = -S_x
    Matrix z = Matrix::Zero(1 << n_ions, 1 << n_ions);
    for (int j = 0; j < n_ions; ++j) z -= spin_pauli(Axis::x, j, n_ions);
    return z;
}

struct Quadratures {
    Matrix x, p;
};

Quadratures quadratures(int cutoff)
{
    const Matrix b = lowering_matrix(cutoff);
    const double r = 1.0 / std::sqrt(2.0);
    return {r * (b + b.adjoint()), I1 * r * (b.adjoint() - b)};
}

} // namespace

Operator analytic_propagator(const PhysicalParams& p, SpaceShape shape, double t, bool electric_on)
{
    const double eps = p.epsilon();
    if (eps == 0.0) throw SingularityError("analytic_propagator: epsilon = 0, the loop never closes");
    const int sd = shape.spin_dim(), nc = shape.phonon_cutoff;
    Matrix z = sigma_z_dd_sum(shape.n_ions);
    if (electric_on) {
        if (p.eta * p.nu == 0.0) throw SingularityError("electric shift needs eta*nu != 0");
        z += (2.0 * p.omega_E / (p.eta * p.nu)) * Matrix::Identity(sd, sd);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(z);
    const Quadratures q = quadratures(nc);
    const double a = p.eta * p.nu / eps / std::sqrt(8.0);
    const double chirp = t - std::sin(2 * eps * t) / (2 * eps);

    Matrix blocks = Matrix::Zero(sd * nc, sd * nc);
    for (int k = 0; k < sd; ++k) {
        const double zk = es.eigenvalues()(k);
        const double f = a * zk * std::sin(eps * t), g = a * zk * (1 - std::cos(eps * t));
        const double phase = -(p.eta * p.eta * p.nu * p.nu / (16 * eps)) * zk * zk * chirp;
        const Matrix u = std::exp(-I1 * phase) * expm_hermitian(q.x, f) * expm_hermitian(q.p, g);
        blocks.block(k * nc, k * nc, nc, nc) = u;
    }
    const Matrix v = Operator::kron(shape, es.eigenvectors(), Matrix::Identity(nc, nc)).matrix();
    return Operator(shape, v * blocks * v.adjoint());
}

MagnusTerms magnus_terms(const PhysicalParams& p, SpaceShape shape, double t)
{
    const double eps = p.epsilon();
    if (eps == 0.0) throw SingularityError("magnus_terms: epsilon = 0");
    const int nc = shape.phonon_cutoff;
    const Matrix z = sigma_z_dd_sum(shape.n_ions);
    const Quadratures q = quadratures(nc);
    const double a = p.eta * p.nu / eps / std::sqrt(8.0);
    const double f = a * std::sin(eps * t), g = a * (1 - std::cos(eps * t));

    Operator first = Operator::kron(shape, z, -I1 * (f * q.x + g * q.p));
    const double c2 = p.eta * p.eta * p.nu * p.nu / 8.0;
    const double s2 = c2 / (2 * eps) * (t - std::sin(eps * t) / eps);
    Operator second = Operator::kron(shape, I1 * s2 * (z * z), Matrix::Identity(nc, nc));

    // Nested commutators of the gate Hamiltonian at a few sample times.
    auto h = [&](double tt) {
        const double c = p.eta * p.nu / (2 * std::sqrt(2.0));
        return Operator::kron(shape, z,
                              c * (std::cos(eps * tt) * q.x + std::sin(eps * tt) * q.p));
    };
    const int keep = std::max(0, nc - 2);
    Eigen::VectorXd mask = Eigen::VectorXd::Zero(shape.total_dim());
    for (int s = 0; s < shape.spin_dim(); ++s)
        for (int n = 0; n < keep; ++n) mask(s * nc + n) = 1.0;
    double worst = 0.0;
    const double samples[] = {0.13, 0.37, 0.71, 0.94};
    for (double u1 : samples)
        for (double u2 : samples)
            for (double u3 : samples) {
                const double period = kTwoPi / std::abs(eps);
                const Operator h1 = h(u1 * period), h2 = h(u2 * period), h3 = h(u3 * period);
                const Matrix c = commutator(h1, commutator(h2, h3)).matrix();
                const Matrix cr = mask.asDiagonal() * c * mask.asDiagonal();
                const double scale = h1.matrix().norm() * h2.matrix().norm() * h3.matrix().norm();
                worst = std::max(worst, cr.norm() / scale);
            }
    return {std::move(first), std::move(second), worst};
}

} // namespace dgate
