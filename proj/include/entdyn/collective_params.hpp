#pragma once

#include <optional>

#include "entdyn/errors.hpp"

namespace entdyn {

inline constexpr double kTwoPi = 6.28318530717958647692528676656;

// Dimensionless interatomic separation. kr = 2*pi*(r12/lambda) with
// lambda the transition wavelength.
struct Separation {
    double r_over_lambda;
    double kr;

    static Separation from_r_over_lambda(double r_over_lambda);
};

// Decay and shift rates of the two-atom problem. Time is measured in units
// of 1/gamma throughout; gamma defaults to 1.
struct CollectiveCoupling {
    double gamma = 1.0;    // single-atom spontaneous decay rate
    double gamma12 = 0.0;  // collective damping, |gamma12| < gamma for r > 0
    double omega12 = 0.0;  // dipole-dipole shift
    std::optional<Separation> separation;  // absent for the independent-atom case

    // gamma12 = omega12 = 0: atoms couple to the vacuum independently.
    static CollectiveCoupling independent(double gamma = 1.0);
};

// gamma12/gamma as a function of kr. Below kr = 0.05 the 1/kr^2 and 1/kr^3
// terms cancel catastrophically, so a quartic series (truncation error
// < 1e-9 there) is used instead. Tends to 1 as kr -> 0.
double collective_damping(double kr);

// omega12/gamma as a function of kr. Diverges as (3/4)/kr^3 toward kr = 0;
// finite for every kr > 0, no regularization.
double dipole_dipole_shift(double kr);

// Bundle both rates for a separation r12/lambda. Both scale linearly in gamma.
CollectiveCoupling coupling_from_separation(double r_over_lambda, double gamma = 1.0);

}  // namespace entdyn
