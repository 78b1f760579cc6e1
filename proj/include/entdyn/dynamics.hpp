#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "entdyn/collective_params.hpp"
#include "entdyn/errors.hpp"

namespace entdyn {

// 4x4 density matrix in the product basis |e1e2>, |e1g2>, |g1e2>, |g1g2>.
using DensityMatrix4 = Eigen::Matrix4cd;

double trace_defect(const DensityMatrix4& rho);       // |tr(rho) - 1|
double hermiticity_defect(const DensityMatrix4& rho); // max |rho - rho^dag|
double min_eigenvalue(const DensityMatrix4& rho);     // of the Hermitian part

// Throws DomainError unless rho is Hermitian (1e-10), unit trace (1e-10)
// and has smallest eigenvalue >= -1e-8.
void require_valid_density(const DensityMatrix4& rho);

// The five independent entries of the block-diagonal collective-basis state:
// populations of |e>, |g>, |s>, |a> and the two-photon coherence <e|rho|g>.
struct XState {
    double rho_ee = 0.0;
    double rho_gg = 0.0;
    double rho_ss = 0.0;
    double rho_aa = 0.0;
    std::complex<double> rho_eg;
};

// Populations >= -1e-12, trace 1 within 1e-10, |rho_eg|^2 <= rho_ee*rho_gg
// + 1e-10. Throws DomainError on violation.
void require_valid_xstate(const XState& x);

struct TrajectorySample {
    XState state;
    double c = 0.0;   // concurrence
    double c1 = 0.0;  // two-photon-coherence weight
    double c2 = 0.0;  // symmetric/antisymmetric population weight
};

// Time series of the collective-basis state with its concurrence breakdown.
// times hold gamma*t; p is set when the trajectory descends from the
// sqrt(p)|e> + sqrt(1-p)|g> family (event refinement needs it).
struct Trajectory {
    std::optional<double> p;
    double gamma = 1.0;
    double gamma12 = 0.0;
    std::vector<double> times;
    std::vector<TrajectorySample> samples;
};

// State prepared as sqrt(p)|e> + sqrt(1-p)|g>.
XState initial_state_matrix(double p);

// Closed-form matrix elements at time t for that initial state. Valid
// uniformly in gamma12 up to (but excluding) gamma12 = gamma; the
// gamma12 -> gamma limit is approached smoothly via expm1.
XState analytic_elements(double p, double gamma, double gamma12, double t);

// d(rho)/dt in the frame rotating at the atomic transition frequency:
// dipole-dipole commutator plus the full collective dissipator.
DensityMatrix4 liouvillian_apply(const DensityMatrix4& rho,
                                 const CollectiveCoupling& coupling);

// Unitary congruence between the product basis and the collective basis
// (|e>, |g>, |s>, |a>), with |a> = (|g1 e2> - |e1 g2>)/sqrt(2).
Eigen::Matrix4cd product_to_collective(const DensityMatrix4& rho);
DensityMatrix4 collective_to_product(const Eigen::Matrix4cd& rho_collective);

// Read the five X entries off a collective-basis matrix. Throws
// StructureError if any one-photon coherence (es, ea, sg, ag, as) exceeds
// leak_tolerance in magnitude.
XState extract_xstate(const Eigen::Matrix4cd& rho_collective,
                      double leak_tolerance = 1e-6);

// Embed an XState back into matrix form.
Eigen::Matrix4cd collective_matrix(const XState& x);
DensityMatrix4 product_matrix(const XState& x);

// 1e-3/gamma, tightened to 0.1/|omega12| at small separations.
double default_step(const CollectiveCoupling& coupling);

using StepObserver = std::function<void(double t, const DensityMatrix4& rho)>;

// Fixed-step classical 4th-order integration of the master equation.
// Samples are stored every step: times[i] = gamma*i*dt up to t_end.
// Requires dt <= 0.1/max(gamma, |omega12|) (ConfigError otherwise); throws
// IntegrationError if the trace drifts beyond 1e-6.
Trajectory integrate(const DensityMatrix4& rho0,
                     const CollectiveCoupling& coupling, double t_end,
                     double dt, const StepObserver& observe = {});

// Same, starting from initial_state_matrix(p); tags the trajectory with p.
Trajectory integrate_initial(double p, const CollectiveCoupling& coupling,
                             double t_end, double dt,
                             const StepObserver& observe = {});

// Closed-form trajectory on the grid t_i = i*dt, i = 0..round(t_end/dt).
// Samples are independent, so the loop is OpenMP-parallel; the serial
// variant is the reference the tests compare against (outputs are
// bit-identical by construction).
Trajectory closed_form_trajectory(double p, const CollectiveCoupling& coupling,
                                  double t_end, double dt);
Trajectory closed_form_trajectory_serial(double p,
                                         const CollectiveCoupling& coupling,
                                         double t_end, double dt);

}  // namespace entdyn
