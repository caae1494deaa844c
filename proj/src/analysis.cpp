#include "dgate/analysis.hpp"
#include "dgate/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dgate {

double bell_fidelity(const StateVector& state)
{
    if (state.shape().n_ions != 2) throw ArgumentError("bell_fidelity needs exactly 2 ions");
    const Matrix rho = state.spin_density() / state.amplitudes().squaredNorm();
    const int dd = 3, uu = 0;
    const double f = 0.5 * (rho(dd, dd).real() + rho(uu, uu).real()) + (I1 * rho(dd, uu)).real();
    return std::clamp(f, 0.0, 1.0);
}

double mean_phonons(const StateVector& state)
{
    const Eigen::VectorXd pops = state.phonon_populations();
    double n = 0.0;
    for (Eigen::Index k = 0; k < pops.size(); ++k) n += k * pops(k);
    return n / state.amplitudes().squaredNorm();
}

double spin_purity(const StateVector& state)
{
    const Matrix rho = state.spin_density() / state.amplitudes().squaredNorm();
    return (rho * rho).trace().real();
}

double magnetic_noise_residual(double s_at_20khz, double omega_drive)
{
    if (omega_drive <= 0) throw ArgumentError("omega_drive must be > 0");
    const double r = 20e3 / (omega_drive / kTwoPi);
    return s_at_20khz * r * r;
}

NoiseBudget noise_budget(const PhysicalParams& p, double gate_time, const NoiseInputs& in)
{
    if (in.s_bb_20khz < 0 || in.rabi_fraction < 0 || in.rabi_r_fraction < 0)
        throw ArgumentError("noise inputs must be nonnegative");
    NoiseBudget b;
    b.s_bb_dressed = magnetic_noise_residual(in.s_bb_20khz, p.omega_drive);
    const double f = p.omega_drive / kTwoPi, fr = std::abs(p.omega_r) / kTwoPi;
    const double s0 = in.rabi_fraction * f;
    b.s_rabi_second_order = fr > 0 ? s0 * s0 / fr : 0.0;
    b.s_rabi_r = in.rabi_r_fraction * fr;
    b.rabi_terms_refocused = in.echo;
    double rate = b.s_bb_dressed;
    if (!in.echo) rate += b.s_rabi_second_order + b.s_rabi_r;
    b.total_infidelity = rate * gate_time;
    return b;
}

double coupling_infidelity(double coupling, double gate_time)
{
    const double s = std::sin(coupling * gate_time);
    return s * s;
}

static std::string join(const std::vector<std::string>& v)
{
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : "+") + s;
    return out.empty() ? "(none)" : out;
}

std::vector<DecompositionRow> infidelity_decomposition(const std::vector<TermRun>& runs)
{
    if (runs.empty()) return {};
    const auto full = std::max_element(runs.begin(), runs.end(), [](const auto& a, const auto& b) {
        return a.terms.size() < b.terms.size();
    });
    std::vector<DecompositionRow> rows;
    std::vector<std::vector<std::string>> missing_sets;
    for (const auto& r : runs) {
        if (&r == &*full) continue;
        if (!std::includes(full->terms.begin(), full->terms.end(), r.terms.begin(), r.terms.end()))
            throw ArgumentError("infidelity_decomposition: term sets are not nested");
        std::vector<std::string> missing;
        std::set_difference(full->terms.begin(), full->terms.end(), r.terms.begin(), r.terms.end(),
                            std::back_inserter(missing));
        rows.push_back({join(missing), full->infidelity - r.infidelity});
        missing_sets.push_back(missing);
    }
    // Interaction residual against the smallest run, when its removed terms
    // are each covered by a single-term row.
    std::size_t base = 0;
    for (std::size_t i = 0; i < missing_sets.size(); ++i)
        if (missing_sets[i].size() > missing_sets[base].size()) base = i;
    if (!missing_sets.empty() && missing_sets[base].size() >= 2) {
        double singles = 0.0;
        std::size_t covered = 0;
        for (const auto& lab : missing_sets[base])
            for (std::size_t i = 0; i < missing_sets.size(); ++i)
                if (missing_sets[i].size() == 1 && missing_sets[i][0] == lab) {
                    singles += rows[i].infidelity;
                    ++covered;
                    break;
                }
        if (covered == missing_sets[base].size())
            rows.push_back({"residual", rows[base].infidelity - singles});
    }
    return rows;
}

std::vector<DecompositionRow> infidelity_decomposition(const std::vector<ScenarioSummary>& runs)
{
    std::vector<TermRun> t;
    for (const auto& s : runs) t.push_back({s.enabled_terms, s.infidelity});
    return infidelity_decomposition(t);
}

} // namespace dgate
