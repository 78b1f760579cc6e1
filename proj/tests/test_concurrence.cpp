#include <doctest.h>

#include <cmath>
#include <random>

#include "entdyn/concurrence.hpp"
#include "entdyn/dynamics.hpp"
#include "test_helpers.hpp"

using namespace entdyn;

namespace {

DensityMatrix4 bell_state() {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    return psi * psi.adjoint();
}

DensityMatrix4 projector(int index) {
    DensityMatrix4 rho = DensityMatrix4::Zero();
    rho(index, index) = 1.0;
    return rho;
}

}  // namespace

TEST_CASE("spin flip fixed points and swaps") {
    const DensityMatrix4 bell = bell_state();
    CHECK((spin_flip(bell) - bell).cwiseAbs().maxCoeff() < 1e-15);

    CHECK((spin_flip(projector(0)) - projector(3)).cwiseAbs().maxCoeff() == 0.0);

    const DensityMatrix4 mixed = DensityMatrix4::Identity() * 0.25;
    CHECK((spin_flip(mixed) - mixed).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("wootters concurrence on the standard states") {
    CHECK(wootters_concurrence(projector(1)) < 1e-8);   // product state
    CHECK(wootters_concurrence(projector(3)) < 1e-8);
    CHECK(wootters_concurrence(bell_state()) == doctest::Approx(1.0).epsilon(1e-12));

    // w*Bell + (1-w)*I/4 has concurrence (3w-1)/2 for w above 1/3
    const double w = 0.5;
    const DensityMatrix4 werner =
        w * bell_state() + (1.0 - w) * DensityMatrix4::Identity() * 0.25;
    CHECK(wootters_concurrence(werner) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("wootters rejects invalid input") {
    DensityMatrix4 off_trace = projector(0) * 2.0;
    CHECK_THROWS_AS(wootters_concurrence(off_trace), DomainError);

    DensityMatrix4 skew = projector(0);
    skew(0, 2) = 0.3;  // not Hermitian
    CHECK_THROWS_AS(wootters_concurrence(skew), DomainError);

    // Hermitian, unit trace, but wildly non-positive: the spectrum of
    // rho * spin_flip(rho) picks it up
    DensityMatrix4 indefinite = DensityMatrix4::Zero();
    indefinite(0, 0) = 1.5;
    indefinite(3, 3) = -0.5;
    CHECK_THROWS_AS(wootters_concurrence(indefinite), DomainError);
}

TEST_CASE("x-state weights at the fixed cases") {
    const ConcurrenceBreakdown initial = x_state_weights(initial_state_matrix(0.9));
    CHECK(initial.c1 == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(initial.c2 == doctest::Approx(-0.6).epsilon(1e-14));
    CHECK(initial.c == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(initial.dominant == EntanglementClass::two_photon);

    XState anti;
    anti.rho_aa = 1.0;
    const ConcurrenceBreakdown sub = x_state_weights(anti);
    CHECK(sub.c2 == 1.0);
    CHECK(sub.c == 1.0);
    CHECK(sub.dominant == EntanglementClass::one_photon);

    XState even;
    even.rho_ss = 0.5;
    even.rho_aa = 0.5;
    const ConcurrenceBreakdown none = x_state_weights(even);
    CHECK(none.c1 == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(none.c2 == 0.0);
    CHECK(none.c == 0.0);
    CHECK(none.dominant == EntanglementClass::none);
}

TEST_CASE("x-state closed form agrees with the eigenvalue path") {
    std::mt19937_64 rng(31);
    double worst = 0.0;
    for (int i = 0; i < 1200; ++i) {
        const XState x = testutil::random_xstate(rng, /*saturate=*/i % 5 == 0);
        const double closed = x_state_concurrence(x);
        const double general = wootters_concurrence(product_matrix(x));
        worst = std::max(worst, std::abs(closed - general));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("concurrence is invariant under local unitaries") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix4 rho = testutil::random_density(rng);
        Eigen::Matrix4cd local = Eigen::Matrix4cd::Zero();
        const Eigen::Matrix2cd u1 = testutil::random_unitary2(rng);
        const Eigen::Matrix2cd u2 = testutil::random_unitary2(rng);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (int c = 0; c < 2; ++c) {
                    for (int d = 0; d < 2; ++d) {
                        local(2 * a + c, 2 * b + d) = u1(a, b) * u2(c, d);
                    }
                }
            }
        }
        DensityMatrix4 rotated = local * rho * local.adjoint();
        rotated = 0.5 * (rotated + rotated.adjoint().eval());
        CHECK(std::abs(wootters_concurrence(rho) - wootters_concurrence(rotated)) < 1e-8);
    }
}

TEST_CASE("concurrence range") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 300; ++i) {
        const double general = wootters_concurrence(testutil::random_density(rng));
        CHECK(general >= 0.0);
        CHECK(general <= 1.0 + 1e-12);
        const double closed = x_state_concurrence(testutil::random_xstate(rng));
        CHECK(closed >= 0.0);
        CHECK(closed <= 1.0 + 1e-12);
    }
}

TEST_CASE("initial concurrence is 2*sqrt(p(1-p)) across the p grid") {
    for (int k = 0; k <= 100; ++k) {
        const double p = static_cast<double>(k) / 100.0;
        const double expected = 2.0 * std::sqrt(p * (1.0 - p));
        CHECK(std::abs(x_state_concurrence(initial_state_matrix(p)) - expected) < 1e-14);
    }
}

TEST_CASE("concurrence along the lambda/20 trajectory") {
    const CollectiveCoupling coupling = coupling_from_separation(0.05);
    const XState at0 = analytic_elements(0.9, 1.0, coupling.gamma12, 0.0);
    CHECK(x_state_concurrence(at0) == doctest::Approx(0.6).epsilon(1e-14));

    // gamma*t = 1.2 sits inside the first dark period
    const XState dark = analytic_elements(0.9, 1.0, coupling.gamma12, 1.2);
    CHECK(x_state_concurrence(dark) == 0.0);
    CHECK(wootters_concurrence(product_matrix(dark)) == 0.0);
}
