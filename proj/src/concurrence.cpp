#include "entdyn/concurrence.hpp"

#include <algorithm>
#include <cmath>

namespace entdyn {

namespace {

using Eigen::Matrix4cd;

// sigma_y x sigma_y is real in the product basis.
Matrix4cd spin_flip_operator() {
    Matrix4cd f = Matrix4cd::Zero();
    f(0, 3) = -1.0;
    f(1, 2) = 1.0;
    f(2, 1) = 1.0;
    f(3, 0) = -1.0;
    return f;
}

}  // namespace

DensityMatrix4 spin_flip(const DensityMatrix4& rho) {
    static const Matrix4cd f = spin_flip_operator();
    return f * rho.conjugate() * f;
}

double wootters_concurrence(const DensityMatrix4& rho) {
    if (hermiticity_defect(rho) > 1e-10 || trace_defect(rho) > 1e-10) {
        throw DomainError("input is not a unit-trace Hermitian matrix");
    }

    const Matrix4cd r = rho * spin_flip(rho);
    Eigen::ComplexEigenSolver<Matrix4cd> solver(r, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw DomainError("eigenvalue computation failed");
    }

    double roots[4];
    for (int i = 0; i < 4; ++i) {
        const std::complex<double> lambda = solver.eigenvalues()(i);
        if (std::abs(lambda.imag()) > 1e-6 || lambda.real() < -1e-6) {
            throw DomainError("spectrum of rho*spin_flip(rho) is not real nonnegative");
        }
        roots[i] = std::sqrt(std::max(lambda.real(), 0.0));
    }
    std::sort(roots, roots + 4, std::greater<>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

ConcurrenceBreakdown x_state_weights(const XState& x) {
    require_valid_xstate(x);
    ConcurrenceBreakdown b;
    b.c1 = 2.0 * std::abs(x.rho_eg) - (x.rho_ss + x.rho_aa);
    b.c2 = std::abs(x.rho_ss - x.rho_aa) -
           2.0 * std::sqrt(std::max(x.rho_gg * x.rho_ee, 0.0));
    b.c = std::max({0.0, b.c1, b.c2});
    if (b.c1 <= 0.0 && b.c2 <= 0.0) {
        b.dominant = EntanglementClass::none;
    } else if (b.c1 >= b.c2) {
        b.dominant = EntanglementClass::two_photon;
    } else {
        b.dominant = EntanglementClass::one_photon;
    }
    return b;
}

double x_state_concurrence(const XState& x) {
    return x_state_weights(x).c;
}

}  // namespace entdyn
