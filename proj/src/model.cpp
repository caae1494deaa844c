#include "dgate/model.hpp"
#include "dgate/errors.hpp"

#include <cmath>

namespace dgate {

std::string frame_name(Frame f)
{
    switch (f) {
    case Frame::lab: return "lab";
    case Frame::bare_rotating: return "bare_rotating";
    case Frame::dressed: return "dressed";
    default: return "double_dressed";
    }
}

Matrix PhononFactor::matrix(int cutoff) const
{
    switch (kind) {
    case Kind::identity: return Matrix::Identity(cutoff, cutoff);
    case Kind::lower: return lowering_matrix(cutoff);
    case Kind::raise: return lowering_matrix(cutoff).adjoint();
    case Kind::number: return number_matrix(cutoff);
    default: return dense;
    }
}

SpinAlgebra::SpinAlgebra(int n) : n_ions(n), identity(Matrix::Identity(1 << n, 1 << n))
{
    for (int j = 0; j < n; ++j)
        sigma.push_back({spin_pauli(Axis::x, j, n), spin_pauli(Axis::y, j, n),
                         spin_pauli(Axis::z, j, n)});
}

Matrix SpinAlgebra::sum(Axis a) const
{
    Matrix m = Matrix::Zero(identity.rows(), identity.cols());
    for (int j = 0; j < n_ions; ++j) m += op(j, a);
    return m;
}

Matrix SpinAlgebra::bloch(int ion, const Eigen::Vector3cd& c) const
{
    return c(0) * sigma[ion][0] + c(1) * sigma[ion][1] + c(2) * sigma[ion][2];
}

HamiltonianModel::HamiltonianModel(SpaceShape shape, Frame frame)
    : shape_(shape), frame_(frame), spins_(shape.n_ions)
{
    using K = PhononFactor::Kind;
    factors_ = {{K::identity, {}}, {K::lower, {}}, {K::raise, {}}, {K::number, {}}};
}

int HamiltonianModel::add_factor(Matrix dense)
{
    if (dense.rows() != shape_.phonon_cutoff || dense.cols() != shape_.phonon_cutoff)
        throw ArgumentError("phonon factor dimension does not match cutoff");
    factors_.push_back({PhononFactor::Kind::dense, std::move(dense)});
    return static_cast<int>(factors_.size()) - 1;
}

void HamiltonianModel::add_term(Term term)
{
    if (has(term.label)) throw ArgumentError("duplicate term label '" + term.label + "'");
    terms_.push_back(std::move(term));
}

std::vector<std::string> HamiltonianModel::labels() const
{
    std::vector<std::string> out;
    for (const auto& t : terms_) out.push_back(t.label);
    return out;
}

bool HamiltonianModel::has(const std::string& label) const
{
    for (const auto& t : terms_)
        if (t.label == label) return true;
    return false;
}

double HamiltonianModel::max_frequency() const
{
    double f = 0.0;
    for (const auto& t : terms_) f = std::max(f, std::abs(t.max_frequency));
    return f;
}

SpinBlocks HamiltonianModel::zero_blocks() const
{
    const int s = shape_.spin_dim();
    return SpinBlocks(factors_.size(), Matrix::Zero(s, s));
}

void HamiltonianModel::accumulate(const DriveClock& c, SpinBlocks& blocks) const
{
    if (blocks.size() != factors_.size()) blocks = zero_blocks();
    for (auto& b : blocks) b.setZero();
    for (const auto& t : terms_) t.add(c, blocks);
}

void HamiltonianModel::apply(const SpinBlocks& blocks, const Vector& x, Vector& y) const
{
    const int n = shape_.phonon_cutoff, s = shape_.spin_dim();
    y.setZero(x.size());
    Eigen::Map<const Matrix> X(x.data(), n, s);
    Eigen::Map<Matrix> Y(y.data(), n, s);
    Matrix tmp(n, s);
    for (std::size_t p = 0; p < factors_.size(); ++p) {
        const Matrix& a = blocks[p];
        if (a.isZero(0.0)) continue;
        tmp.noalias() = X * a.transpose();
        switch (factors_[p].kind) {
        case PhononFactor::Kind::identity: Y += tmp; break;
        case PhononFactor::Kind::lower:
            for (int k = 1; k < n; ++k) Y.row(k - 1) += std::sqrt(double(k)) * tmp.row(k);
            break;
        case PhononFactor::Kind::raise:
            for (int k = 0; k + 1 < n; ++k) Y.row(k + 1) += std::sqrt(double(k + 1)) * tmp.row(k);
            break;
        case PhononFactor::Kind::number:
            for (int k = 1; k < n; ++k) Y.row(k) += double(k) * tmp.row(k);
            break;
        case PhononFactor::Kind::dense: Y.noalias() += factors_[p].dense * tmp; break;
        }
    }
}

double HamiltonianModel::norm_bound(const SpinBlocks& blocks) const
{
    const int n = shape_.phonon_cutoff;
    double bound = 0.0;
    for (std::size_t p = 0; p < factors_.size(); ++p) {
        const double a = blocks[p].norm();
        if (a == 0.0) continue;
        double f = 1.0;
        switch (factors_[p].kind) {
        case PhononFactor::Kind::identity: f = 1.0; break;
        case PhononFactor::Kind::lower:
        case PhononFactor::Kind::raise: f = std::sqrt(double(n - 1)); break;
        case PhononFactor::Kind::number: f = n - 1; break;
        case PhononFactor::Kind::dense: f = factors_[p].dense.norm(); break;
        }
        bound += a * f;
    }
    return bound;
}

Operator HamiltonianModel::dense(const SpinBlocks& blocks) const
{
    Operator h(shape_);
    for (std::size_t p = 0; p < factors_.size(); ++p) {
        if (blocks[p].isZero(0.0)) continue;
        h += Operator::kron(shape_, blocks[p], factors_[p].matrix(shape_.phonon_cutoff));
    }
    return h;
}

Operator HamiltonianModel::at(const DriveClock& c) const
{
    SpinBlocks b = zero_blocks();
    accumulate(c, b);
    return dense(b);
}

Operator HamiltonianModel::term_at(const std::string& label, const DriveClock& c) const
{
    for (const auto& t : terms_) {
        if (t.label != label) continue;
        SpinBlocks b = zero_blocks();
        t.add(c, b);
        return dense(b);
    }
    throw ArgumentError("model has no term '" + label + "'");
}

Eigen::Matrix3d rotation(Axis a, double angle)
{
    const double c = std::cos(angle), s = std::sin(angle);
    Eigen::Matrix3d r;
    switch (a) {
    case Axis::x: r << 1, 0, 0, 0, c, -s, 0, s, c; break;
    case Axis::y: r << c, 0, s, 0, 1, 0, -s, 0, c; break;
    case Axis::z: r << c, -s, 0, s, c, 0, 0, 0, 1; break;
    }
    return r;
}

Eigen::Matrix3d dressing_bloch()
{
    Eigen::Matrix3d d;
    d << 0, 0, -1, 0, 1, 0, 1, 0, 0;
    return d;
}

Eigen::Matrix3d frame3_bloch(double omega_t, double phi)
{
    return rotation(Axis::x, phi) * rotation(Axis::z, -omega_t);
}

namespace {

// blocks[raise] += c M, blocks[lower] += conj(c) M^dag
void add_sideband(SpinBlocks& b, const Matrix& m, cplx c)
{
    b[kRaise] += c * m;
    b[kLower] += std::conj(c) * m.adjoint();
}

void check_labels(const std::set<std::string>& include, const std::set<std::string>& known)
{
    for (const auto& l : include)
        if (!known.count(l)) throw ArgumentError("unknown term label '" + l + "'");
}

} // namespace

HamiltonianModel lab_hamiltonian(const PhysicalParams& p, SpaceShape shape)
{
    HamiltonianModel m(shape, Frame::lab);
    const SpinAlgebra& sp = m.spins();
    const int n = shape.n_ions;
    auto w0 = [p](int j) { return p.omega0 - j * p.delta_omega0; };

    m.add_term({"mode", 0.0, [p](const DriveClock&, SpinBlocks& b) {
                    b[kNumber] += p.nu * Matrix::Identity(b[kNumber].rows(), b[kNumber].cols());
                }});
    Matrix qubit = Matrix::Zero(sp.identity.rows(), sp.identity.cols());
    for (int j = 0; j < n; ++j) qubit += 0.5 * w0(j) * sp.op(j, Axis::z);
    m.add_term({"qubit", 0.0, [qubit](const DriveClock&, SpinBlocks& b) { b[kIdentity] += qubit; }});

    const Matrix zsum = sp.sum(Axis::z);
    m.add_term({"gradient", 0.0, [p, zsum](const DriveClock&, SpinBlocks& b) {
                    add_sideband(b, zsum, 0.5 * p.nu * p.eta);
                }});

    const Matrix xsum = sp.sum(Axis::x);
    m.add_term({"microwave", w0(0) + p.omega_drive, [p, xsum, n, w0](const DriveClock& c, SpinBlocks& b) {
                    double drive = 0.0;
                    for (int k = 0; k < n; ++k) drive += std::cos(w0(k) * c.t);
                    b[kIdentity] += p.omega_drive * drive * xsum;
                }});
    m.add_term({"rf", p.omega_drive, [p, zsum](const DriveClock& c, SpinBlocks& b) {
                    b[kIdentity] += c.rf_sign * p.omega_r * std::cos(p.omega_drive * c.t) * zsum;
                }});
    m.add_term({"electric", p.omega_drive, [p](const DriveClock& c, SpinBlocks& b) {
                    const Matrix id = Matrix::Identity(b[kIdentity].rows(), b[kIdentity].cols());
                    add_sideband(b, id, c.rf_sign * p.omega_E * std::cos(p.omega_drive * c.t));
                }});
    return m;
}

Term electric_drive(const PhysicalParams& p, SpaceShape shape, bool rwa)
{
    if (p.omega_E < 0) throw ArgumentError("omega_E must be >= 0");
    const Matrix id = Matrix::Identity(shape.spin_dim(), shape.spin_dim());
    const double eps = p.epsilon();
    if (rwa)
        return {"electric", std::abs(eps), [p, id, eps](const DriveClock& c, SpinBlocks& b) {
                    add_sideband(b, id, 0.5 * c.rf_sign * p.omega_E * std::exp(I1 * eps * c.t));
                }};
    return {"electric", p.nu + p.omega_drive, [p, id](const DriveClock& c, SpinBlocks& b) {
                // Omega_E (b^dag e^{i nu t} + h.c.) cos(Omega t)
                const double cw = std::cos(p.omega_drive * c.t);
                add_sideband(b, id, c.rf_sign * p.omega_E * cw * std::exp(I1 * p.nu * c.t));
            }};
}

HamiltonianModel dressed_frame_hamiltonian(const PhysicalParams& p, SpaceShape shape,
                                           const std::set<std::string>& include,
                                           MicrowaveOptions opt)
{
    check_labels(include, microwave_labels());
    HamiltonianModel m(shape, Frame::double_dressed);
    const SpinAlgebra sp = m.spins();
    const int n = shape.n_ions;
    const double g4 = p.nu * p.eta / 4.0;  // (nu eta / 4)
    const double eps = p.epsilon();
    const double w = p.omega_drive;
    const double wr = p.omega_r;
    const Matrix xsum = sp.sum(Axis::x);

    // sigma_z (double dressed) = -S_x
    if (include.count("gate"))
        m.add_term({"gate", std::abs(eps), [xsum, g4, eps](const DriveClock& c, SpinBlocks& b) {
                        add_sideband(b, xsum, -g4 * std::exp(I1 * eps * c.t));
                    }});

    if (include.count("zz_residual"))
        m.add_term({"zz_residual", p.nu + w, [xsum, g4, p](const DriveClock& c, SpinBlocks& b) {
                        add_sideband(b, xsum, -g4 * std::exp(I1 * (p.nu + p.omega_drive) * c.t));
                    }});

    if (include.count("xy_residual"))
        m.add_term({"xy_residual", p.nu + w + std::abs(wr),
                    [sp, n, g4, p](const DriveClock& c, SpinBlocks& b) {
                        // red sideband -(nu eta/2) (b^dag e^{i nu t} + h.c.) S_x(t) minus its
                        // S_x component
                        const double phi = p.omega_r * c.rf_time;
                        const double sw = std::sin(p.omega_drive * c.t);
                        const double cy = -sw * std::cos(phi), cz = -sw * std::sin(phi);
                        Matrix spin = Matrix::Zero(sp.identity.rows(), sp.identity.cols());
                        for (int j = 0; j < n; ++j)
                            spin += cy * sp.op(j, Axis::y) + cz * sp.op(j, Axis::z);
                        add_sideband(b, spin, -2.0 * g4 * std::exp(I1 * p.nu * c.t));
                    }});

    if (include.count("fast_rf"))
        m.add_term({"fast_rf", 2 * w + std::abs(wr), [sp, n, p](const DriveClock& c, SpinBlocks& b) {
                        const double phi = p.omega_r * c.rf_time;
                        const double a = 2 * p.omega_drive * c.t;
                        Eigen::Vector3d v(std::cos(a), -std::sin(a), 0.0);
                        v = rotation(Axis::x, phi) * v * (-0.5 * c.rf_sign * p.omega_r);
                        for (int j = 0; j < n; ++j) b[kIdentity] += sp.bloch(j, v.cast<cplx>());
                    }});

    if (include.count("crosstalk") && n > 1)
        m.add_term({"crosstalk", (n - 1) * std::abs(p.delta_omega0) + w + std::abs(wr),
                    [sp, n, p](const DriveClock& c, SpinBlocks& b) {
                        const Eigen::Matrix3d r =
                            frame3_bloch(p.omega_drive * c.t, p.omega_r * c.rf_time) *
                            dressing_bloch();
                        for (int j = 0; j < n; ++j) {
                            Eigen::Vector3cd acc = Eigen::Vector3cd::Zero();
                            for (int k = 0; k < n; ++k) {
                                if (k == j) continue;
                                // drive k seen by ion j: (Omega/2) sigma_+ e^{i(w0_j - w0_k)t}
                                const double det = (k - j) * p.delta_omega0;
                                const cplx a = 0.25 * p.omega_drive * std::exp(I1 * det * c.t);
                                acc += a * Eigen::Vector3cd(1.0, I1, 0.0);
                            }
                            // A + A^dag = 2 Re(c) . sigma
                            const Eigen::Vector3d v = 2.0 * (r * acc.real());
                            b[kIdentity] += sp.bloch(j, v.cast<cplx>());
                        }
                    }});

    if (include.count("electric")) m.add_term(electric_drive(p, shape, opt.electric_rwa));
    return m;
}

StarkBudget stark_budget(const PhysicalParams& p)
{
    if (p.omega_r == 0.0)
        throw SingularityError("stark_budget: dressing field omega_r vanishes");
    if (p.delta_omega0 <= 0.0) throw ArgumentError("stark_budget needs delta_omega0 > 0");
    const double w = p.omega_drive, wr = p.omega_r;
    const double g4 = p.nu * p.eta / 4.0;
    auto single = [&](double delta) {
        const double a = w / (4 * delta), b = wr / (4 * w);
        return -wr * (3 * a * a + 0.5 * b * b);
    };
    StarkBudget s;
    s.single_ion_shift = single(p.delta_omega0);
    s.single_ion_shift_alt = single(p.delta_omega0 - w);
    s.phonon_coupled_shift = 2.0 / wr * g4 * g4;
    s.xy_coupling = 2 * g4 * g4 * (p.epsilon() / (wr * wr) - 1.0 / (p.nu + w));
    s.zz_coupling = -2 * g4 * g4 / (p.nu + w);
    return s;
}

HamiltonianModel laser_hamiltonian(const PhysicalParams& p, SpaceShape shape, LaserOrder order)
{
    HamiltonianModel m(shape, Frame::bare_rotating);
    const SpinAlgebra& sp = m.spins();
    const int n = shape.n_ions, nc = shape.phonon_cutoff;
    const double eta = p.eta_laser, w = p.omega_drive;
    const Matrix b = lowering_matrix(nc);
    const Matrix x = b + b.adjoint();

    m.add_term({"mode", 0.0, [p](const DriveClock&, SpinBlocks& bl) {
                    bl[kNumber] += p.nu * Matrix::Identity(bl[kNumber].rows(), bl[kNumber].cols());
                }});

    if (order == LaserOrder::full_exponential) {
        // e^{i eta x} from the eigendecomposition of x
        const Matrix disp = expm_hermitian(x, -eta);
        const int f = m.add_factor(disp);
        const int fd = m.add_factor(disp.adjoint());
        Matrix splus = Matrix::Zero(sp.identity.rows(), sp.identity.cols());
        for (int j = 0; j < n; ++j) splus += 0.5 * (sp.op(j, Axis::x) + I1 * sp.op(j, Axis::y));
        m.add_term({"laser", 0.0, [splus, f, fd, w](const DriveClock&, SpinBlocks& bl) {
                        bl[f] += 0.5 * w * splus;
                        bl[fd] += 0.5 * w * splus.adjoint();
                    }});
        return m;
    }

    if (eta * std::sqrt(double(nc)) >= 1.0)
        throw TruncationError("Lamb-Dicke expansion needs eta_L*sqrt(cutoff) << 1");
    const Matrix xsum = sp.sum(Axis::x), ysum = sp.sum(Axis::y);
    m.add_term({"carrier", 0.0, [xsum, w](const DriveClock&, SpinBlocks& bl) {
                    bl[kIdentity] += 0.5 * w * xsum;
                }});
    // sigma_+ e^{i eta x} + h.c. = sigma_x - eta sigma_y x - (eta^2/2) sigma_x x^2 + O(eta^3)
    m.add_term({"sideband", 0.0, [ysum, w, eta](const DriveClock&, SpinBlocks& bl) {
                    add_sideband(bl, ysum, -0.5 * w * eta);
                }});
    const int fx2 = m.add_factor(x * x);
    m.add_term({"dephasing", 0.0, [xsum, w, eta, fx2](const DriveClock&, SpinBlocks& bl) {
                    bl[fx2] += -0.25 * w * eta * eta * xsum;
                }});
    return m;
}

HamiltonianModel laser_dressed_frame_hamiltonian(const PhysicalParams& p, SpaceShape shape,
                                                 const std::set<std::string>& include)
{
    check_labels(include, laser_labels());
    HamiltonianModel m(shape, Frame::double_dressed);
    const SpinAlgebra sp = m.spins();
    const int n = shape.n_ions, nc = shape.phonon_cutoff;
    const double eta = p.eta_laser, w = p.omega_drive, eps = p.epsilon();
    const double gl = eta * w / 4.0;
    const Matrix xsum = sp.sum(Axis::x);

    // Sideband -(Omega eta/2) sigma_y x(t); its S_x part sin(Omega t) S_x holds the
    // resonant gate -i (eta Omega/4) S_x b^dag e^{i eps t} + h.c.
    if (include.count("gate"))
        m.add_term({"gate", std::abs(eps), [xsum, gl, eps](const DriveClock& c, SpinBlocks& b) {
                        add_sideband(b, xsum, -I1 * gl * std::exp(I1 * eps * c.t));
                    }});

    if (include.count("sideband_residual"))
        m.add_term({"sideband_residual", p.nu + w + std::abs(p.omega_r),
                    [sp, n, p, gl, xsum](const DriveClock& c, SpinBlocks& b) {
                        const double a = p.omega_drive * c.t, phi = p.omega_r * c.rf_time;
                        const Eigen::Vector3d v(std::sin(a), std::cos(a) * std::cos(phi),
                                                std::cos(a) * std::sin(phi));
                        Matrix spin = Matrix::Zero(sp.identity.rows(), sp.identity.cols());
                        for (int j = 0; j < n; ++j) spin += sp.bloch(j, v.cast<cplx>());
                        add_sideband(b, spin, -2.0 * gl * std::exp(I1 * p.nu * c.t));
                        // remove the resonant gate part
                        add_sideband(b, xsum, I1 * gl * std::exp(I1 * p.epsilon() * c.t));
                    }});

    if (include.count("dephasing")) {
        const Matrix bl = lowering_matrix(nc);
        const int f2 = m.add_factor(bl * bl);
        const int f2d = m.add_factor(bl.adjoint() * bl.adjoint());
        m.add_term({"dephasing", 2 * p.nu + std::abs(p.omega_r),
                    [sp, n, p, eta, f2, f2d](const DriveClock& c, SpinBlocks& b) {
                        // -(Omega eta^2/4) S_z(t) x(t)^2 with S_z(t) = -sin(phi) S_y + cos(phi) S_z
                        const double phi = p.omega_r * c.rf_time;
                        const Eigen::Vector3d v(0.0, -std::sin(phi), std::cos(phi));
                        Matrix spin = Matrix::Zero(sp.identity.rows(), sp.identity.cols());
                        for (int j = 0; j < n; ++j) spin += sp.bloch(j, v.cast<cplx>());
                        spin *= -0.25 * p.omega_drive * eta * eta;
                        const cplx e2 = std::exp(2.0 * I1 * p.nu * c.t);
                        b[f2d] += e2 * spin;
                        b[f2] += std::conj(e2) * spin;
                        b[kNumber] += 2.0 * spin;
                        b[kIdentity] += spin;
                    }});
    }

    if (include.count("fast_rf")) {
        PhysicalParams q = p;
        auto micro = dressed_frame_hamiltonian(q, shape, {"fast_rf"});
        m.add_term(micro.terms().front());
    }
    return m;
}

} // namespace dgate
