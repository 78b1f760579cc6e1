#include "entdyn/collective_params.hpp"

#include <cmath>

namespace entdyn {

namespace {

constexpr double kSeriesThreshold = 0.05;

void require_valid_kr(double kr) {
    if (!std::isfinite(kr) || kr <= 0.0) {
        throw DomainError("kr must be positive and finite");
    }
}

}  // namespace

Separation Separation::from_r_over_lambda(double r_over_lambda) {
    if (!std::isfinite(r_over_lambda) || r_over_lambda <= 0.0) {
        throw DomainError("r12/lambda must be positive and finite");
    }
    return {r_over_lambda, kTwoPi * r_over_lambda};
}

CollectiveCoupling CollectiveCoupling::independent(double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw DomainError("gamma must be positive and finite");
    }
    return {gamma, 0.0, 0.0, std::nullopt};
}

double collective_damping(double kr) {
    require_valid_kr(kr);
    if (kr < kSeriesThreshold) {
        const double x2 = kr * kr;
        return 1.0 - x2 / 5.0 + 3.0 * x2 * x2 / 280.0;
    }
    const double s = std::sin(kr);
    const double c = std::cos(kr);
    return 1.5 * (s / kr + c / (kr * kr) - s / (kr * kr * kr));
}

double dipole_dipole_shift(double kr) {
    require_valid_kr(kr);
    const double s = std::sin(kr);
    const double c = std::cos(kr);
    return 0.75 * (-c / kr + s / (kr * kr) + c / (kr * kr * kr));
}

CollectiveCoupling coupling_from_separation(double r_over_lambda, double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw DomainError("gamma must be positive and finite");
    }
    const Separation sep = Separation::from_r_over_lambda(r_over_lambda);
    return {gamma, gamma * collective_damping(sep.kr),
            gamma * dipole_dipole_shift(sep.kr), sep};
}

}  // namespace entdyn
