#pragma once

#include <Eigen/Dense>

#include "fwm/core.hpp"

namespace fwm {

// Bracketed five-level interaction matrix in the basis (|1> .. |5>), stored
// without the overall -hbar prefactor; the prefactor (-1 in our units) is
// applied when eigenvalues are reported.
struct FiveLevelMatrix {
    Eigen::Matrix<complex, 5, 5> bracket;
};

FiveLevelMatrix build_five_level(const FieldState& f, const PhysicalParams& p);

// 2-norm of M - M^dagger; equals 2*max(gamma1, gamma2) by construction.
double hermiticity_defect(const FiveLevelMatrix& m);

// Eigenvalue (prefactor applied) of the branch whose eigenvector has maximal
// overlap magnitude with |1>; ties by smallest |eigenvalue|. Throws
// SolverError if the top two overlap magnitudes differ by less than 1e-9.
complex adiabatic_branch(const FiveLevelMatrix& m);

// Closed-form lowest-order branch eigenvalue:
//   (2/Delta) * Re(Omega1 Omega2 E1* E2*) * 2 / (|Omega1|^2 + |E1|^2)
// i.e. (2/Delta) [O1* O2* E1 E2 + c.c.] / (|O1|^2+|E1|^2), real by
// construction. Requires a nonzero denominator.
double lambda0(const FieldState& f, const PhysicalParams& p);

}  // namespace fwm
