#include "dgate/params.hpp"
#include "dgate/core.hpp"
#include "dgate/errors.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace dgate {

PhysicalParams PhysicalParams::reference() { return PhysicalParams{}.with_closure(); }

PhysicalParams PhysicalParams::with_closure() const
{
    if (K < 1) throw ArgumentError("K must be >= 1");
    PhysicalParams q = *this;
    q.omega_drive = nu - eta * nu * std::sqrt(static_cast<double>(K));
    return q;
}

std::vector<HierarchyLink> hierarchy_chain(const PhysicalParams& p, double slack)
{
    auto ratio = [](double big, double small) {
        return small == 0.0 ? INFINITY : std::abs(big) / std::abs(small);
    };
    std::vector<HierarchyLink> links;
    const double r1 = ratio(p.omega_r / 4, p.epsilon() / 4);
    links.push_back({"eps/4 << Omega_r/4", r1, false, r1 >= slack});
    const double r2 = ratio(p.nu, p.omega_r / 4);
    links.push_back({"Omega_r/4 << nu", r2, false, r2 >= slack});
    const double r3 = ratio(p.nu, p.omega_drive);
    links.push_back({"nu ~ Omega", r3, true, r3 < slack && r3 > 1.0 / slack});
    const double r4 = ratio(4 * p.omega0, p.omega_drive);
    links.push_back({"Omega << 4 omega0", r4, false, r4 >= slack});
    return links;
}

std::vector<std::string> hierarchy_warnings(const PhysicalParams& p, double slack, bool log)
{
    std::vector<std::string> out;
    for (const auto& l : hierarchy_chain(p, slack)) {
        if (l.pass) continue;
        std::ostringstream os;
        os << "hierarchy link '" << l.name << "' has ratio " << l.ratio << " (slack " << slack
           << ")";
        out.push_back(os.str());
        if (log) std::clog << "warning: " << out.back() << '\n';
    }
    return out;
}

double ion_spacing(const PhysicalParams& p)
{
    using namespace constants;
    if (p.nu <= 0) throw ArgumentError("ion_spacing needs nu > 0");
    const double e2 = elementary_charge * elementary_charge;
    return std::cbrt(2.0 * e2 / (4.0 * kPi * vacuum_permittivity * p.ion_mass * p.nu * p.nu));
}

double addressing_splitting(const PhysicalParams& p)
{
    using namespace constants;
    return p.g_factor * bohr_magneton * p.b_gradient * ion_spacing(p) / hbar;
}

} // namespace dgate
