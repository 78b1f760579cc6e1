#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "entdyn/concurrence.hpp"
#include "entdyn/dynamics.hpp"
#include "test_helpers.hpp"

using namespace entdyn;
namespace ref = testutil::ref;

namespace {

const CollectiveCoupling kLambda20 = coupling_from_separation(0.05);
const CollectiveCoupling kIndependent = CollectiveCoupling::independent();

DensityMatrix4 basis_projector(int index) {
    DensityMatrix4 rho = DensityMatrix4::Zero();
    rho(index, index) = 1.0;
    return rho;
}

}  // namespace

TEST_CASE("initial state") {
    const XState ground = initial_state_matrix(0.0);
    CHECK(ground.rho_gg == 1.0);
    CHECK(ground.rho_ee == 0.0);
    CHECK(std::abs(ground.rho_eg) == 0.0);

    const XState x = initial_state_matrix(0.9);
    CHECK(x.rho_ee == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(x.rho_gg == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(x.rho_eg.real() == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(x.rho_ss == 0.0);
    CHECK(x.rho_aa == 0.0);

    const XState half = initial_state_matrix(0.5);
    CHECK(half.rho_eg.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(x_state_concurrence(half) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(initial_state_matrix(-0.1), DomainError);
    CHECK_THROWS_AS(initial_state_matrix(1.1), DomainError);
}

TEST_CASE("closed-form elements at t = 0 reproduce the initial state") {
    for (double p : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const XState at0 = analytic_elements(p, 1.0, kLambda20.gamma12, 0.0);
        CHECK(testutil::max_xstate_difference(at0, initial_state_matrix(p)) < 1e-15);
    }
}

TEST_CASE("closed-form elements at t = 1") {
    const XState ind = analytic_elements(0.9, 1.0, 0.0, 1.0);
    CHECK(ind.rho_ss == doctest::Approx(ref::ss_independent_t1).epsilon(1e-14));
    CHECK(ind.rho_aa == doctest::Approx(ref::ss_independent_t1).epsilon(1e-14));

    const XState col = analytic_elements(0.9, 1.0, kLambda20.gamma12, 1.0);
    CHECK(col.rho_ee == doctest::Approx(ref::ee_t1).epsilon(1e-14));
    CHECK(col.rho_eg.real() == doctest::Approx(ref::eg_t1).epsilon(1e-14));
    CHECK(col.rho_ss == doctest::Approx(ref::ss_l20_t1).epsilon(1e-13));
    CHECK(col.rho_aa == doctest::Approx(ref::aa_l20_t1).epsilon(1e-13));
    CHECK(col.rho_gg == doctest::Approx(ref::gg_l20_t1).epsilon(1e-13));
}

TEST_CASE("closed-form elements stay a valid X state and close the trace") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> up(0.0, 1.0);
    std::uniform_real_distribution<double> ug(-0.999, 0.999);
    std::uniform_real_distribution<double> ut(0.0, 15.0);
    for (int i = 0; i < 400; ++i) {
        const XState x = analytic_elements(up(rng), 1.0, ug(rng), ut(rng));
        CHECK_NOTHROW(require_valid_xstate(x));
        const double sum = x.rho_ee + x.rho_gg + x.rho_ss + x.rho_aa;
        CHECK(std::abs(sum - 1.0) < 1e-14);
    }
}

TEST_CASE("closed form approaches the gamma12 -> gamma limit smoothly") {
    const double g12 = 1.0 - 1e-9;
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const XState x = analytic_elements(0.9, 1.0, g12, t);
        const double limit = 2.0 * t * 0.9 * std::exp(-2.0 * t);
        CHECK(std::abs(x.rho_ss - limit) < 1e-8);
    }
}

TEST_CASE("closed-form domain errors") {
    CHECK_THROWS_AS(analytic_elements(0.9, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(analytic_elements(0.9, 1.0, 1.5, 1.0), DomainError);
    CHECK_THROWS_AS(analytic_elements(0.9, 0.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(analytic_elements(0.9, 1.0, 0.0, -1.0), DomainError);
    CHECK_THROWS_AS(analytic_elements(1.2, 1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("basis transform maps the bare product states correctly") {
    // |e1 g2> = (|s> - |a>)/sqrt(2)
    const Eigen::Matrix4cd mixed = product_to_collective(basis_projector(1));
    CHECK(mixed(2, 2).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mixed(3, 3).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mixed(2, 3).real() == doctest::Approx(-0.5).epsilon(1e-14));

    const Eigen::Matrix4cd excited = product_to_collective(basis_projector(0));
    CHECK(std::abs(excited(0, 0) - 1.0) < 1e-15);
    CHECK(excited.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("basis transform round-trips") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix4 rho = testutil::random_density(rng);
        const DensityMatrix4 back = collective_to_product(product_to_collective(rho));
        CHECK((back - rho).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("extract_xstate") {
    const XState x0 = initial_state_matrix(0.9);
    const XState round = extract_xstate(product_to_collective(product_matrix(x0)));
    CHECK(testutil::max_xstate_difference(round, x0) < 1e-14);

    Eigen::Matrix4cd leaky = collective_matrix(x0);
    leaky(2, 1) = 0.01;  // rho_sg
    CHECK_THROWS_AS(extract_xstate(leaky), StructureError);
}

TEST_CASE("liouvillian fixed points and decay rates") {
    // vacuum is stationary
    const DensityMatrix4 ground_rate = liouvillian_apply(basis_projector(3), kLambda20);
    CHECK(ground_rate.cwiseAbs().maxCoeff() == 0.0);

    // doubly excited population decays at 2*gamma
    const DensityMatrix4 excited_rate = liouvillian_apply(basis_projector(0), kLambda20);
    CHECK(excited_rate(0, 0).real() == doctest::Approx(-2.0).epsilon(1e-14));

    // pure symmetric population decays at gamma + gamma12, antisymmetric at
    // gamma - gamma12
    XState sym;
    sym.rho_ss = 1.0;
    const Eigen::Matrix4cd ds =
        product_to_collective(liouvillian_apply(product_matrix(sym), kLambda20));
    CHECK(ds(2, 2).real() ==
          doctest::Approx(-(1.0 + kLambda20.gamma12)).epsilon(1e-13));

    XState anti;
    anti.rho_aa = 1.0;
    const Eigen::Matrix4cd da =
        product_to_collective(liouvillian_apply(product_matrix(anti), kLambda20));
    CHECK(da(3, 3).real() ==
          doctest::Approx(-(1.0 - kLambda20.gamma12)).epsilon(1e-13));
}

TEST_CASE("liouvillian preserves the trace on random states") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ug(-0.99, 0.99);
    std::uniform_real_distribution<double> uo(-30.0, 30.0);
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix4 rho = testutil::random_density(rng);
        const CollectiveCoupling coupling{1.0, ug(rng), uo(rng), std::nullopt};
        const DensityMatrix4 d = liouvillian_apply(rho, coupling);
        CHECK(std::abs(d.trace()) < 1e-14);
        CHECK(hermiticity_defect(d) < 1e-13);
    }
}

TEST_CASE("integrator matches the closed form elementwise") {
    struct Case {
        CollectiveCoupling coupling;
        double gamma12_for_closed_form;
    };
    const std::vector<Case> cases = {
        {kIndependent, 0.0},
        {{1.0, kLambda20.gamma12, 0.0, std::nullopt}, kLambda20.gamma12},
        {kLambda20, kLambda20.gamma12},
    };
    for (const Case& c : cases) {
        const Trajectory traj = integrate_initial(0.9, c.coupling, 5.0, 1e-3);
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const XState expected =
                analytic_elements(0.9, 1.0, c.gamma12_for_closed_form, traj.times[i]);
            worst = std::max(worst,
                             testutil::max_xstate_difference(traj.samples[i].state, expected));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("dipole-dipole shift leaves the X elements untouched") {
    CollectiveCoupling no_shift = kLambda20;
    no_shift.omega12 = 0.0;
    const Trajectory with = integrate_initial(0.9, kLambda20, 2.0, 1e-3);
    const Trajectory without = integrate_initial(0.9, no_shift, 2.0, 1e-3);
    double worst = 0.0;
    for (std::size_t i = 0; i < with.times.size(); ++i) {
        worst = std::max(worst, testutil::max_xstate_difference(with.samples[i].state,
                                                                without.samples[i].state));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("integrator keeps the ground state constant") {
    const Trajectory traj = integrate(basis_projector(3), kLambda20, 1.0, 1e-3);
    for (const TrajectorySample& s : traj.samples) {
        CHECK(s.state.rho_gg == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(s.c == 0.0);
    }
}

TEST_CASE("integrator structural invariants along the trajectory") {
    double worst_trace = 0.0, worst_herm = 0.0, worst_eig = 0.0, worst_leak = 0.0;
    const StepObserver observe = [&](double, const DensityMatrix4& rho) {
        worst_trace = std::max(worst_trace, trace_defect(rho));
        worst_herm = std::max(worst_herm, hermiticity_defect(rho));
        worst_eig = std::min(worst_eig, min_eigenvalue(rho));
        const Eigen::Matrix4cd c = product_to_collective(rho);
        const double leak =
            std::max({std::abs(c(0, 2)), std::abs(c(0, 3)), std::abs(c(2, 1)),
                      std::abs(c(3, 1)), std::abs(c(3, 2))});
        worst_leak = std::max(worst_leak, leak);
    };
    integrate_initial(0.9, kLambda20, 3.0, 1e-3, observe);
    CHECK(worst_trace < 1e-8);
    CHECK(worst_herm < 1e-10);
    CHECK(worst_eig >= -1e-8);
    CHECK(worst_leak < 1e-10);
}

TEST_CASE("integrator configuration errors") {
    const DensityMatrix4 rho0 = product_matrix(initial_state_matrix(0.9));
    // dt too coarse for the dipole-dipole shift of the lambda/20 coupling
    CHECK_THROWS_AS(integrate(rho0, kLambda20, 1.0, 5e-3), ConfigError);
    CHECK_THROWS_AS(integrate(rho0, kIndependent, 1.0, 0.2), ConfigError);
    CHECK_THROWS_AS(integrate(rho0, kIndependent, 0.0, 1e-3), ConfigError);
    CHECK_THROWS_AS(integrate(rho0, kIndependent, 1.0, -1e-3), ConfigError);

    DensityMatrix4 bad = rho0;
    bad(0, 0) += 0.5;  // trace 1.5
    CHECK_THROWS_AS(integrate(bad, kIndependent, 1.0, 1e-3), DomainError);
}

TEST_CASE("default step resolves the fastest rate") {
    CHECK(default_step(kIndependent) == doctest::Approx(1e-3));
    CHECK(default_step(kLambda20) == doctest::Approx(1e-3));
    const CollectiveCoupling tight = coupling_from_separation(0.01);
    CHECK(default_step(tight) == doctest::Approx(0.1 / tight.omega12));
    CHECK(default_step(tight) * std::max(tight.gamma, tight.omega12) <= 0.1 + 1e-15);
}

TEST_CASE("parallel closed-form kernel is bit-identical to the serial reference") {
    const Trajectory par = closed_form_trajectory(0.9, kLambda20, 10.0, 1e-3);
    const Trajectory ser = closed_form_trajectory_serial(0.9, kLambda20, 10.0, 1e-3);
    REQUIRE(par.times.size() == ser.times.size());
    REQUIRE(par.times.size() == 10001);
    for (std::size_t i = 0; i < par.times.size(); ++i) {
        CHECK(par.times[i] == ser.times[i]);
        CHECK(par.samples[i].state.rho_ss == ser.samples[i].state.rho_ss);
        CHECK(par.samples[i].state.rho_aa == ser.samples[i].state.rho_aa);
        CHECK(par.samples[i].c == ser.samples[i].c);
        CHECK(par.samples[i].c1 == ser.samples[i].c1);
        CHECK(par.samples[i].c2 == ser.samples[i].c2);
    }
}

TEST_CASE("trajectory grid is strictly increasing and tagged with p") {
    const Trajectory traj = closed_form_trajectory(0.7, kLambda20, 2.0, 1e-2);
    REQUIRE(traj.p.has_value());
    CHECK(*traj.p == 0.7);
    CHECK(traj.samples.size() == traj.times.size());
    for (std::size_t i = 1; i < traj.times.size(); ++i) {
        CHECK(traj.times[i] > traj.times[i - 1]);
    }
}
