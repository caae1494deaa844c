#include "dgate/core.hpp"
#include "dgate/errors.hpp"

#include <cmath>
#include <string>

namespace dgate {

Axis parse_axis(std::string_view s)
{
    if (s == "x") return Axis::x;
    if (s == "y") return Axis::y;
    if (s == "z") return Axis::z;
    throw ArgumentError("unknown axis '" + std::string(s) + "'");
}

char axis_name(Axis a)
{
    switch (a) {
    case Axis::x: return 'x';
    case Axis::y: return 'y';
    default: return 'z';
    }
}

SpaceShape::SpaceShape(int ions, int cutoff) : n_ions(ions), phonon_cutoff(cutoff)
{
    if (ions < 1 || ions > 10)
        throw ArgumentError("n_ions must be in 1..10, got " + std::to_string(ions));
    if (cutoff < 2)
        throw ArgumentError("phonon_cutoff must be >= 2, got " + std::to_string(cutoff));
}

Operator::Operator(SpaceShape shape)
    : shape_(shape), m_(Matrix::Zero(shape.total_dim(), shape.total_dim()))
{
}

Operator::Operator(SpaceShape shape, Matrix m) : shape_(shape), m_(std::move(m))
{
    if (m_.rows() != shape_.total_dim() || m_.cols() != shape_.total_dim())
        throw ArgumentError("matrix dimension does not match shape");
}

Operator Operator::identity(SpaceShape shape)
{
    return Operator(shape, Matrix::Identity(shape.total_dim(), shape.total_dim()));
}

Operator Operator::kron(SpaceShape shape, const Matrix& spin, const Matrix& phonon)
{
    const int s = shape.spin_dim(), n = shape.phonon_cutoff;
    if (spin.rows() != s || spin.cols() != s || phonon.rows() != n || phonon.cols() != n)
        throw ArgumentError("kron factor dimensions do not match shape");
    Matrix m(s * n, s * n);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            m.block(i * n, j * n, n, n) = spin(i, j) * phonon;
    return Operator(shape, std::move(m));
}

Operator Operator::adjoint() const { return Operator(shape_, m_.adjoint()); }

double Operator::norm() const
{
    if (m_.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m_);
    return svd.singularValues()(0);
}

bool Operator::is_hermitian(double rel_tol) const
{
    const double scale = std::max(m_.norm(), 1e-300);
    return (m_ - m_.adjoint()).norm() <= rel_tol * scale;
}

bool Operator::is_unitary(double tol) const
{
    const Matrix d = m_.adjoint() * m_ - Matrix::Identity(dim(), dim());
    return d.cwiseAbs().maxCoeff() < tol;
}

static void check_same(const SpaceShape& a, const SpaceShape& b)
{
    if (!(a == b)) throw ArgumentError("operator shape mismatch");
}

Operator& Operator::operator+=(const Operator& o)
{
    check_same(shape_, o.shape_);
    m_ += o.m_;
    return *this;
}

Operator& Operator::operator-=(const Operator& o)
{
    check_same(shape_, o.shape_);
    m_ -= o.m_;
    return *this;
}

Operator& Operator::operator*=(cplx s)
{
    m_ *= s;
    return *this;
}

Operator operator*(const Operator& a, const Operator& b)
{
    check_same(a.shape(), b.shape());
    return Operator(a.shape(), a.matrix() * b.matrix());
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

StateVector::StateVector(SpaceShape shape, Vector amplitudes)
    : shape_(shape), v_(std::move(amplitudes))
{
    if (v_.size() != shape_.total_dim())
        throw ArgumentError("state length does not match shape");
}

cplx StateVector::inner(const StateVector& other) const
{
    check_same(shape_, other.shape_);
    return v_.dot(other.v_);
}

StateVector StateVector::normalized() const
{
    const double n = v_.norm();
    if (n == 0.0) throw ArgumentError("cannot normalize the zero vector");
    return StateVector(shape_, v_ / n);
}

Matrix StateVector::spin_density() const
{
    const int s = shape_.spin_dim(), n = shape_.phonon_cutoff;
    // Column-major reshape: psi(n, spin) as an n x s matrix.
    Eigen::Map<const Matrix> psi(v_.data(), n, s);
    return (psi.adjoint() * psi).transpose();
}

Eigen::VectorXd StateVector::phonon_populations() const
{
    const int s = shape_.spin_dim(), n = shape_.phonon_cutoff;
    Eigen::Map<const Matrix> psi(v_.data(), n, s);
    return psi.cwiseAbs2().rowwise().sum();
}

StateVector apply(const Operator& op, const StateVector& psi)
{
    check_same(op.shape(), psi.shape());
    return StateVector(psi.shape(), op.matrix() * psi.amplitudes());
}

Matrix pauli2(Axis a)
{
    Matrix m(2, 2);
    switch (a) {
    case Axis::x: m << 0, 1, 1, 0; break;
    case Axis::y: m << 0, -I1, I1, 0; break;
    case Axis::z: m << 1, 0, 0, -1; break;
    }
    return m;
}

static Matrix kron2(const Matrix& a, const Matrix& b)
{
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return m;
}

Matrix spin_pauli(Axis a, int ion, int n_ions)
{
    if (ion < 0 || ion >= n_ions)
        throw ArgumentError("ion index " + std::to_string(ion) + " out of range");
    Matrix m = Matrix::Identity(1, 1);
    for (int j = 0; j < n_ions; ++j)
        m = kron2(m, j == ion ? pauli2(a) : Matrix::Identity(2, 2));
    return m;
}

Operator pauli(Axis a, int ion, SpaceShape shape)
{
    return Operator::kron(shape, spin_pauli(a, ion, shape.n_ions),
                          Matrix::Identity(shape.phonon_cutoff, shape.phonon_cutoff));
}

Matrix lowering_matrix(int cutoff)
{
    Matrix b = Matrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}

Matrix number_matrix(int cutoff)
{
    Matrix m = Matrix::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n) m(n, n) = n;
    return m;
}

std::pair<Operator, Operator> ladder(SpaceShape shape)
{
    const Matrix id = Matrix::Identity(shape.spin_dim(), shape.spin_dim());
    const Matrix b = lowering_matrix(shape.phonon_cutoff);
    return {Operator::kron(shape, id, b), Operator::kron(shape, id, b.adjoint())};
}

Operator number_operator(SpaceShape shape)
{
    return Operator::kron(shape, Matrix::Identity(shape.spin_dim(), shape.spin_dim()),
                          number_matrix(shape.phonon_cutoff));
}

Matrix dressing_rotation(int n_ions)
{
    const double r = 1.0 / std::sqrt(2.0);
    Matrix w(2, 2);
    w << r, -r, r, r;
    Matrix m = Matrix::Identity(1, 1);
    for (int j = 0; j < n_ions; ++j) m = kron2(m, w);
    return m;
}

static Operator conjugate_spin(const Operator& op, const Matrix& w)
{
    const SpaceShape& s = op.shape();
    const Operator full = Operator::kron(
        s, w, Matrix::Identity(s.phonon_cutoff, s.phonon_cutoff));
    return Operator(s, full.matrix().adjoint() * op.matrix() * full.matrix());
}

Operator dressed_map(const Operator& op)
{
    return conjugate_spin(op, dressing_rotation(op.shape().n_ions));
}

Operator undressed_map(const Operator& op)
{
    return conjugate_spin(op, dressing_rotation(op.shape().n_ions).adjoint());
}

int spin_index(std::string_view labels)
{
    int idx = 0;
    for (char c : labels) {
        idx <<= 1;
        if (c == 'd' || c == '0') idx |= 1;
        else if (c != 'u' && c != '1')
            throw ArgumentError("spin label must be u/d/1/0, got '" + std::string(1, c) + "'");
    }
    return idx;
}

StateVector basis_state(SpaceShape shape, std::string_view labels, int n)
{
    if (static_cast<int>(labels.size()) != shape.n_ions)
        throw ArgumentError("spin label length must equal n_ions");
    if (n < 0 || n >= shape.phonon_cutoff)
        throw TruncationError("Fock number " + std::to_string(n) + " exceeds phonon cutoff");
    Vector v = Vector::Zero(shape.total_dim());
    v(spin_index(labels) * shape.phonon_cutoff + n) = 1.0;
    return StateVector(shape, std::move(v));
}

Vector coherent_amplitudes(cplx alpha, int cutoff)
{
    if (std::norm(alpha) > cutoff / 4.0)
        throw TruncationError("coherent amplitude |alpha|^2 = " + std::to_string(std::norm(alpha)) +
                              " exceeds cutoff/4; increase phonon_cutoff to at least " +
                              std::to_string(static_cast<int>(std::ceil(4.0 * std::norm(alpha)))));
    Vector c(cutoff);
    cplx term = 1.0;
    for (int n = 0; n < cutoff; ++n) {
        if (n > 0) term *= alpha / std::sqrt(static_cast<double>(n));
        c(n) = term;
    }
    return c / c.norm();
}

StateVector coherent_state(cplx alpha, SpaceShape shape, std::string_view labels)
{
    const std::string lab = labels.empty() ? std::string(shape.n_ions, 'd') : std::string(labels);
    if (static_cast<int>(lab.size()) != shape.n_ions)
        throw ArgumentError("spin label length must equal n_ions");
    Vector v = Vector::Zero(shape.total_dim());
    v.segment(spin_index(lab) * shape.phonon_cutoff, shape.phonon_cutoff) =
        coherent_amplitudes(alpha, shape.phonon_cutoff);
    return StateVector(shape, std::move(v));
}

Matrix expm_hermitian(const Matrix& h, double s)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Eigen::VectorXd& ev = es.eigenvalues();
    Vector phases(ev.size());
    for (Eigen::Index k = 0; k < ev.size(); ++k) phases(k) = std::exp(-I1 * s * ev(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace dgate
