#include "entdyn/dynamics.hpp"

#include <cmath>

#include "entdyn/concurrence.hpp"

namespace entdyn {

namespace {

using Eigen::Matrix4cd;
using std::complex;

constexpr complex<double> kI{0.0, 1.0};

// Product-basis lowering operators, first tensor factor = atom 1.
Matrix4cd lowering_operator(int atom) {
    Matrix4cd s = Matrix4cd::Zero();
    if (atom == 0) {
        s(2, 0) = 1.0;  // |e1e2> -> |g1e2>
        s(3, 1) = 1.0;  // |e1g2> -> |g1g2>
    } else {
        s(1, 0) = 1.0;  // |e1e2> -> |e1g2>
        s(3, 2) = 1.0;  // |g1e2> -> |g1g2>
    }
    return s;
}

struct AtomOperators {
    Matrix4cd sm[2];
    Matrix4cd sp[2];
    Matrix4cd sp_sm[2][2];   // S_i^+ S_j^-
    Matrix4cd exchange;      // S_1^+ S_2^- + S_2^+ S_1^-

    AtomOperators() {
        for (int i = 0; i < 2; ++i) {
            sm[i] = lowering_operator(i);
            sp[i] = sm[i].adjoint();
        }
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                sp_sm[i][j] = sp[i] * sm[j];
            }
        }
        exchange = sp_sm[0][1] + sp_sm[1][0];
    }
};

const AtomOperators& ops() {
    static const AtomOperators instance;
    return instance;
}

// Columns: collective states |e>, |g>, |s>, |a> in product coordinates.
Matrix4cd collective_basis() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix4cd u = Matrix4cd::Zero();
    u(0, 0) = 1.0;
    u(3, 1) = 1.0;
    u(1, 2) = inv_sqrt2;
    u(2, 2) = inv_sqrt2;
    u(1, 3) = -inv_sqrt2;
    u(2, 3) = inv_sqrt2;
    return u;
}

const Matrix4cd& basis_transform() {
    static const Matrix4cd u = collective_basis();
    return u;
}

void require_probability(double p) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw DomainError("p must lie in [0, 1]");
    }
}

void require_rates(double gamma, double gamma12) {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw DomainError("gamma must be positive and finite");
    }
    if (!std::isfinite(gamma12) || std::abs(gamma12) >= gamma) {
        throw DomainError("|gamma12| must be below gamma");
    }
}

TrajectorySample make_sample(const XState& x) {
    const ConcurrenceBreakdown b = x_state_weights(x);
    return {x, b.c, b.c1, b.c2};
}

long grid_steps(double t_end, double dt) {
    if (!std::isfinite(t_end) || t_end <= 0.0) {
        throw ConfigError("t_end must be positive");
    }
    if (!std::isfinite(dt) || dt <= 0.0) {
        throw ConfigError("dt must be positive");
    }
    const long n = std::lround(t_end / dt);
    if (n < 1) {
        throw ConfigError("grid must contain at least one step");
    }
    return n;
}

}  // namespace

double trace_defect(const DensityMatrix4& rho) {
    return std::abs(rho.trace() - complex<double>(1.0, 0.0));
}

double hermiticity_defect(const DensityMatrix4& rho) {
    return (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const DensityMatrix4& rho) {
    const Matrix4cd herm = 0.5 * (rho + rho.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix4cd> solver(herm);
    return solver.eigenvalues().minCoeff();
}

void require_valid_density(const DensityMatrix4& rho) {
    if (hermiticity_defect(rho) > 1e-10) {
        throw DomainError("density matrix is not Hermitian");
    }
    if (trace_defect(rho) > 1e-10) {
        throw DomainError("density matrix trace differs from 1");
    }
    if (min_eigenvalue(rho) < -1e-8) {
        throw DomainError("density matrix has a negative eigenvalue");
    }
}

void require_valid_xstate(const XState& x) {
    const double pops[4] = {x.rho_ee, x.rho_gg, x.rho_ss, x.rho_aa};
    double sum = 0.0;
    for (double v : pops) {
        if (!std::isfinite(v) || v < -1e-12) {
            throw DomainError("population out of range");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw DomainError("populations do not sum to 1");
    }
    if (std::norm(x.rho_eg) > x.rho_ee * x.rho_gg + 1e-10) {
        throw DomainError("two-photon coherence violates positivity");
    }
}

XState initial_state_matrix(double p) {
    require_probability(p);
    XState x;
    x.rho_ee = p;
    x.rho_gg = 1.0 - p;
    x.rho_eg = std::sqrt(p * (1.0 - p));
    return x;
}

XState analytic_elements(double p, double gamma, double gamma12, double t) {
    require_probability(p);
    require_rates(gamma, gamma12);
    if (!std::isfinite(t) || t < 0.0) {
        throw DomainError("t must be nonnegative");
    }
    const double decay2 = std::exp(-2.0 * gamma * t);
    XState x;
    x.rho_ee = p * decay2;
    x.rho_eg = std::sqrt(p * (1.0 - p)) * std::exp(-gamma * t);
    x.rho_ss = p * decay2 * (gamma + gamma12) / (gamma - gamma12) *
               std::expm1((gamma - gamma12) * t);
    x.rho_aa = p * decay2 * (gamma - gamma12) / (gamma + gamma12) *
               std::expm1((gamma + gamma12) * t);
    x.rho_gg = 1.0 - x.rho_ee - x.rho_ss - x.rho_aa;
    return x;
}

DensityMatrix4 liouvillian_apply(const DensityMatrix4& rho,
                                 const CollectiveCoupling& coupling) {
    const AtomOperators& op = ops();
    const double rates[2][2] = {{coupling.gamma, coupling.gamma12},
                                {coupling.gamma12, coupling.gamma}};

    Matrix4cd d = Matrix4cd::Zero();
    if (coupling.omega12 != 0.0) {
        d = -kI * coupling.omega12 * (op.exchange * rho - rho * op.exchange);
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Matrix4cd& a = op.sp_sm[i][j];
            d -= 0.5 * rates[i][j] *
                 (rho * a + a * rho - 2.0 * (op.sm[j] * rho * op.sp[i]));
        }
    }
    return d;
}

Eigen::Matrix4cd product_to_collective(const DensityMatrix4& rho) {
    const Matrix4cd& u = basis_transform();
    return u.adjoint() * rho * u;
}

DensityMatrix4 collective_to_product(const Eigen::Matrix4cd& rho_collective) {
    const Matrix4cd& u = basis_transform();
    return u * rho_collective * u.adjoint();
}

XState extract_xstate(const Eigen::Matrix4cd& rho_collective,
                      double leak_tolerance) {
    const int one_photon[][2] = {{0, 2}, {0, 3}, {2, 1}, {3, 1}, {3, 2}};
    for (const auto& idx : one_photon) {
        if (std::abs(rho_collective(idx[0], idx[1])) > leak_tolerance) {
            throw StructureError("one-photon coherence above threshold");
        }
    }
    XState x;
    x.rho_ee = rho_collective(0, 0).real();
    x.rho_gg = rho_collective(1, 1).real();
    x.rho_ss = rho_collective(2, 2).real();
    x.rho_aa = rho_collective(3, 3).real();
    x.rho_eg = rho_collective(0, 1);
    return x;
}

Eigen::Matrix4cd collective_matrix(const XState& x) {
    Matrix4cd m = Matrix4cd::Zero();
    m(0, 0) = x.rho_ee;
    m(1, 1) = x.rho_gg;
    m(2, 2) = x.rho_ss;
    m(3, 3) = x.rho_aa;
    m(0, 1) = x.rho_eg;
    m(1, 0) = std::conj(x.rho_eg);
    return m;
}

DensityMatrix4 product_matrix(const XState& x) {
    return collective_to_product(collective_matrix(x));
}

double default_step(const CollectiveCoupling& coupling) {
    double dt = 1e-3 / coupling.gamma;
    if (coupling.omega12 != 0.0) {
        dt = std::min(dt, 0.1 / std::abs(coupling.omega12));
    }
    return dt;
}

Trajectory integrate(const DensityMatrix4& rho0,
                     const CollectiveCoupling& coupling, double t_end,
                     double dt, const StepObserver& observe) {
    require_valid_density(rho0);
    require_rates(coupling.gamma, coupling.gamma12);
    const long n = grid_steps(t_end, dt);
    const double fastest = std::max(coupling.gamma, std::abs(coupling.omega12));
    if (dt > 0.1 / fastest) {
        throw ConfigError("dt must resolve the fastest rate: dt <= 0.1/max(gamma, |omega12|)");
    }

    Trajectory traj;
    traj.gamma = coupling.gamma;
    traj.gamma12 = coupling.gamma12;
    traj.times.reserve(n + 1);
    traj.samples.reserve(n + 1);

    Matrix4cd rho = rho0;
    const auto store = [&](long i, const Matrix4cd& r) {
        const double t = static_cast<double>(i) * dt;
        if (trace_defect(r) > 1e-6) {
            throw IntegrationError("trace drift beyond 1e-6");
        }
        traj.times.push_back(coupling.gamma * t);
        traj.samples.push_back(make_sample(extract_xstate(product_to_collective(r))));
        if (observe) {
            observe(t, r);
        }
    };

    store(0, rho);
    for (long i = 1; i <= n; ++i) {
        const Matrix4cd k1 = liouvillian_apply(rho, coupling);
        const Matrix4cd k2 = liouvillian_apply(rho + (0.5 * dt) * k1, coupling);
        const Matrix4cd k3 = liouvillian_apply(rho + (0.5 * dt) * k2, coupling);
        const Matrix4cd k4 = liouvillian_apply(rho + dt * k3, coupling);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        store(i, rho);
    }
    return traj;
}

Trajectory integrate_initial(double p, const CollectiveCoupling& coupling,
                             double t_end, double dt,
                             const StepObserver& observe) {
    Trajectory traj =
        integrate(product_matrix(initial_state_matrix(p)), coupling, t_end, dt, observe);
    traj.p = p;
    return traj;
}

namespace {

Trajectory closed_form_impl(double p, const CollectiveCoupling& coupling,
                            double t_end, double dt, bool parallel) {
    require_probability(p);
    require_rates(coupling.gamma, coupling.gamma12);
    const long n = grid_steps(t_end, dt);

    Trajectory traj;
    traj.p = p;
    traj.gamma = coupling.gamma;
    traj.gamma12 = coupling.gamma12;
    traj.times.resize(n + 1);
    traj.samples.resize(n + 1);

    double* times = traj.times.data();
    TrajectorySample* samples = traj.samples.data();
    const double gamma = coupling.gamma;
    const double gamma12 = coupling.gamma12;

#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) * dt;
        times[i] = gamma * t;
        samples[i] = make_sample(analytic_elements(p, gamma, gamma12, t));
    }
    return traj;
}

}  // namespace

Trajectory closed_form_trajectory(double p, const CollectiveCoupling& coupling,
                                  double t_end, double dt) {
    return closed_form_impl(p, coupling, t_end, dt, true);
}

Trajectory closed_form_trajectory_serial(double p,
                                         const CollectiveCoupling& coupling,
                                         double t_end, double dt) {
    return closed_form_impl(p, coupling, t_end, dt, false);
}

}  // namespace entdyn
