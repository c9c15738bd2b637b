#include "fwm/five_level.hpp"

#include <algorithm>
#include <cmath>

namespace fwm {

FiveLevelMatrix build_five_level(const FieldState& f, const PhysicalParams& p) {
    p.validate();
    const complex i(0.0, 1.0);
    const complex o1 = f.omega1, o2 = f.omega2, e1 = f.e1, e2 = f.e2;
    FiveLevelMatrix m;
    m.bracket.setZero();
    auto& b = m.bracket;
    b(0, 2) = std::conj(o2);
    b(0, 3) = std::conj(o2);
    b(0, 4) = std::conj(e1);
    b(1, 2) = std::conj(e2);
    b(1, 3) = -std::conj(e2);
    b(1, 4) = std::conj(o1);
    b(2, 0) = o2;
    b(2, 1) = e2;
    b(2, 2) = -p.delta - i * p.gamma2;
    b(3, 0) = o2;
    b(3, 1) = -e2;
    b(3, 3) = p.delta - i * p.gamma2;
    b(4, 0) = e1;
    b(4, 1) = o1;
    b(4, 4) = -i * p.gamma1;
    return m;
}

double hermiticity_defect(const FiveLevelMatrix& m) {
    const Eigen::Matrix<complex, 5, 5> d = m.bracket - m.bracket.adjoint();
    Eigen::JacobiSVD<Eigen::Matrix<complex, 5, 5>> svd(d);
    return svd.singularValues()(0);
}

complex adiabatic_branch(const FiveLevelMatrix& m) {
    Eigen::ComplexEigenSolver<Eigen::Matrix<complex, 5, 5>> es(m.bracket, true);
    if (es.info() != Eigen::Success) throw SolverError("five-level eigensolve failed");

    // Rank candidates by |<1|v>| descending; ties (within 1e-12) by |lambda|.
    std::array<int, 5> idx{0, 1, 2, 3, 4};
    std::array<double, 5> ov{};
    for (int k = 0; k < 5; ++k) {
        const auto v = es.eigenvectors().col(k);
        ov[k] = std::abs(v(0)) / v.norm();
    }
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (std::abs(ov[a] - ov[b]) > 1e-12)
            return ov[a] > ov[b];
        return std::abs(es.eigenvalues()(a)) < std::abs(es.eigenvalues()(b));
    });
    // Indistinguishable overlaps are only an error when the two candidates
    // would report different eigenvalues; a degenerate eigenvalue subspace is
    // well-defined regardless of how the eigensolver splits it.
    const complex la = es.eigenvalues()(idx[0]);
    const complex lb = es.eigenvalues()(idx[1]);
    if (ov[idx[0]] - ov[idx[1]] < 1e-9 &&
        std::abs(la - lb) > 1e-12 * (1.0 + std::abs(la) + std::abs(lb)))
        throw SolverError("degenerate adiabatic branch: top overlap candidates "
                          "indistinguishable");
    // Bracket eigenvalue mu; the stored matrix omits the -hbar prefactor, so
    // the physical eigenvalue is -mu.
    return -es.eigenvalues()(idx[0]);
}

double lambda0(const FieldState& f, const PhysicalParams& p) {
    p.validate();
    const double denom = std::norm(f.omega1) + std::norm(f.e1);
    if (denom == 0.0)
        throw std::invalid_argument("lambda0 undefined: |Omega1|^2 + |E1|^2 = 0");
    const complex num = std::conj(f.omega1) * std::conj(f.omega2) * f.e1 * f.e2 +
                        f.omega1 * f.omega2 * std::conj(f.e1) * std::conj(f.e2);
    if (std::abs(num.imag()) > 1e-12 * (1.0 + std::abs(num.real())))
        throw SolverError("lambda0 numerator unexpectedly complex");
    return 2.0 * num.real() / (p.delta * denom);
}

}  // namespace fwm
