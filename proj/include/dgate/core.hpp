#pragma once

// Hilbert space of n qubits and one truncated phonon mode.
//
// Basis ordering: qubit factors first with ion 0 the slowest index, phonon
// factor last, so the flat index is spin_index * cutoff + n.  Per qubit,
// index 0 is |1> in the bare basis (|u> in the dressed basis) and index 1 is
// |0> (|d>).  With this choice sigma_z = diag(+1, -1) on each qubit.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <string_view>

namespace dgate {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr cplx I1{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class Axis { x, y, z };

Axis parse_axis(std::string_view s);
char axis_name(Axis a);

struct SpaceShape {
    int n_ions = 2;
    int phonon_cutoff = 16;

    SpaceShape() = default;
    SpaceShape(int ions, int cutoff);

    int spin_dim() const { return 1 << n_ions; }
    int total_dim() const { return spin_dim() * phonon_cutoff; }
    bool operator==(const SpaceShape&) const = default;
};

class Operator {
public:
    explicit Operator(SpaceShape shape);  // zero operator
    Operator(SpaceShape shape, Matrix m);

    static Operator identity(SpaceShape shape);
    static Operator zero(SpaceShape shape) { return Operator(shape); }
    // spin (2^n x 2^n) tensor phonon (cutoff x cutoff)
    static Operator kron(SpaceShape shape, const Matrix& spin, const Matrix& phonon);

    const SpaceShape& shape() const { return shape_; }
    const Matrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    Operator adjoint() const;
    double norm() const;  // spectral norm
    bool is_hermitian(double rel_tol = 1e-12) const;
    bool is_unitary(double tol = 1e-10) const;

    Operator& operator+=(const Operator& o);
    Operator& operator-=(const Operator& o);
    Operator& operator*=(cplx s);

    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(Operator a, cplx s) { return a *= s; }
    friend Operator operator*(cplx s, Operator a) { return a *= s; }
    friend Operator operator*(const Operator& a, const Operator& b);

private:
    SpaceShape shape_;
    Matrix m_;
};

Operator commutator(const Operator& a, const Operator& b);

class StateVector {
public:
    StateVector(SpaceShape shape, Vector amplitudes);

    const SpaceShape& shape() const { return shape_; }
    const Vector& amplitudes() const { return v_; }
    Vector& amplitudes() { return v_; }

    double norm() const { return v_.norm(); }
    cplx inner(const StateVector& other) const;  // <this|other>
    StateVector normalized() const;

    // Reduced spin density matrix (2^n x 2^n), phonon traced out.
    Matrix spin_density() const;
    // Phonon number distribution.
    Eigen::VectorXd phonon_populations() const;

private:
    SpaceShape shape_;
    Vector v_;
};

StateVector apply(const Operator& op, const StateVector& psi);

// 2x2 Pauli matrix in the per-qubit basis (|1>, |0>).
Matrix pauli2(Axis a);
// Pauli on one qubit of the spin register only (2^n x 2^n).
Matrix spin_pauli(Axis a, int ion, int n_ions);

Operator pauli(Axis a, int ion, SpaceShape shape);

// Truncated phonon matrices (cutoff x cutoff).
Matrix lowering_matrix(int cutoff);
Matrix number_matrix(int cutoff);

// Returns (b, b^dagger) on the full space.
std::pair<Operator, Operator> ladder(SpaceShape shape);
Operator number_operator(SpaceShape shape);

// Per-qubit rotation W with columns |u> = (|1>+|0>)/sqrt2, |d> = (-|1>+|0>)/sqrt2.
// dressed_map(op) = W^dag op W realizes sigma_x -> S_z, sigma_y -> S_y,
// sigma_z -> -S_x.  undressed_map is its inverse.
Matrix dressing_rotation(int n_ions);
Operator dressed_map(const Operator& op);
Operator undressed_map(const Operator& op);

// Basis product state: labels is a string of 'u'/'d' (or '1'/'0'), one per
// ion; phonon Fock number n.
StateVector basis_state(SpaceShape shape, std::string_view labels, int n = 0);
int spin_index(std::string_view labels);

// Truncated, renormalized coherent state of the phonon with the spins in the
// given basis configuration (default all 'd').
StateVector coherent_state(cplx alpha, SpaceShape shape, std::string_view labels = {});
Vector coherent_amplitudes(cplx alpha, int cutoff);

// exp(-i s H) for Hermitian H via eigendecomposition.
Matrix expm_hermitian(const Matrix& h, double s = 1.0);

} // namespace dgate
