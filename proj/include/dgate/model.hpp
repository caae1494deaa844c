#pragma once

#include "dgate/core.hpp"
#include "dgate/params.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace dgate {

enum class Frame { lab, bare_rotating, dressed, double_dressed };
std::string frame_name(Frame f);

// Time argument handed to every term.  rf_sign is the current sign of
// Omega_r (flipped by phase-flip events); rf_time is the clock that drives the
// double-dressed frame angle phi = omega_r * rf_time.
struct DriveClock {
    double t = 0.0;
    double rf_sign = 1.0;
    double rf_time = 0.0;

    static DriveClock plain(double t) { return {t, 1.0, t}; }
};

// Fixed phonon-space factor of a Kronecker term.
struct PhononFactor {
    enum class Kind { identity, lower, raise, number, dense };
    Kind kind = Kind::identity;
    Matrix dense;  // only for Kind::dense

    Matrix matrix(int cutoff) const;
};

// Standard factor slots present in every model.
inline constexpr int kIdentity = 0;
inline constexpr int kLower = 1;
inline constexpr int kRaise = 2;
inline constexpr int kNumber = 3;

// Spin blocks, one per phonon factor: H = sum_p spin[p] (x) factor[p].
using SpinBlocks = std::vector<Matrix>;

// Per-ion Pauli matrices on the spin register.
struct SpinAlgebra {
    int n_ions = 0;
    std::vector<std::array<Matrix, 3>> sigma;  // sigma[j][axis]
    Matrix identity;

    explicit SpinAlgebra(int n);
    const Matrix& op(int ion, Axis a) const { return sigma[ion][static_cast<int>(a)]; }
    Matrix sum(Axis a) const;
    // sum_a c_a sigma_a^j
    Matrix bloch(int ion, const Eigen::Vector3cd& c) const;
};

using TermFn = std::function<void(const DriveClock&, SpinBlocks&)>;

struct Term {
    std::string label;
    double max_frequency = 0.0;  // rad/s, largest frequency the term oscillates with
    TermFn add;
};

class HamiltonianModel {
public:
    HamiltonianModel(SpaceShape shape, Frame frame);

    const SpaceShape& shape() const { return shape_; }
    Frame frame() const { return frame_; }
    const std::vector<Term>& terms() const { return terms_; }
    const std::vector<PhononFactor>& factors() const { return factors_; }
    const SpinAlgebra& spins() const { return spins_; }

    int add_factor(Matrix dense);
    void add_term(Term term);
    std::vector<std::string> labels() const;
    bool has(const std::string& label) const;
    double max_frequency() const;

    SpinBlocks zero_blocks() const;
    // Fills blocks with the sum of all terms at the given clock.
    void accumulate(const DriveClock& c, SpinBlocks& blocks) const;
    // y = H x for H given by blocks (x, y of length total_dim, y overwritten).
    void apply(const SpinBlocks& blocks, const Vector& x, Vector& y) const;
    // Cheap upper bound on the spectral norm of H given by blocks.
    double norm_bound(const SpinBlocks& blocks) const;

    Operator dense(const SpinBlocks& blocks) const;
    Operator at(const DriveClock& c) const;
    Operator at(double t) const { return at(DriveClock::plain(t)); }
    Operator term_at(const std::string& label, const DriveClock& c) const;

private:
    SpaceShape shape_;
    Frame frame_;
    SpinAlgebra spins_;
    std::vector<PhononFactor> factors_;
    std::vector<Term> terms_;
};

// Active rotation matrix about a coordinate axis.
Eigen::Matrix3d rotation(Axis a, double angle);
// Bloch coefficient map of dressed_map: c_dressed = D c_bare.
Eigen::Matrix3d dressing_bloch();
// Bloch image of a dressed-basis single-spin operator in the double-dressed
// interaction frame at drive angle omega*t and RF angle phi.
Eigen::Matrix3d frame3_bloch(double omega_t, double phi);

inline const std::set<std::string>& microwave_labels()
{
    static const std::set<std::string> s{"gate",        "crosstalk",   "fast_rf",
                                         "xy_residual", "zz_residual", "electric"};
    return s;
}

struct MicrowaveOptions {
    bool electric_rwa = true;  // false: keep the e^{i(nu+Omega)t} piece as well
};

// Gradient gate Hamiltonian plus the RF and electric drives, in the lab frame.  Every ion feels
// every microwave drive; ion j has splitting omega0 - j*delta_omega0.
HamiltonianModel lab_hamiltonian(const PhysicalParams& p, SpaceShape shape);

// Terms in the frame after the qubit, dressed, and double-dressed
// interaction pictures.
HamiltonianModel dressed_frame_hamiltonian(const PhysicalParams& p, SpaceShape shape,
                                           const std::set<std::string>& include,
                                           MicrowaveOptions opt = {});

// The electric drive term, for the model of the given shape.
Term electric_drive(const PhysicalParams& p, SpaceShape shape, bool rwa = true);

struct StarkBudget {
    double single_ion_shift = 0.0;      // coefficient of sum sigma_z (double-dressed)
    double phonon_coupled_shift = 0.0;  // per phonon
    double xy_coupling = 0.0;
    double zz_coupling = 0.0;
    double single_ion_shift_alt = 0.0;  // with Delta = delta_omega0 - omega_drive
};

StarkBudget stark_budget(const PhysicalParams& p);

enum class LaserOrder { full_exponential, lamb_dicke_2 };

// Laser Hamiltonian in the bare rotating frame (time independent).
HamiltonianModel laser_hamiltonian(const PhysicalParams& p, SpaceShape shape, LaserOrder order);

inline const std::set<std::string>& laser_labels()
{
    static const std::set<std::string> s{"gate", "sideband_residual", "dephasing", "fast_rf"};
    return s;
}

// Order-2 laser terms carried into the double-dressed frame; "gate" is the
// resonant part of the first sideband, coefficient eta_L * Omega / 4.
HamiltonianModel laser_dressed_frame_hamiltonian(const PhysicalParams& p, SpaceShape shape,
                                                 const std::set<std::string>& include);

} // namespace dgate
