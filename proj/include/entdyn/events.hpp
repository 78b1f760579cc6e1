#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "entdyn/collective_params.hpp"
#include "entdyn/dynamics.hpp"

namespace entdyn {

enum class CrossingKind { death, revival };

struct Crossing {
    double t_gamma = 0.0;
    CrossingKind kind = CrossingKind::death;
};

// Zero crossings of the concurrence, partitioning [0, T] into entangled
// and dark stretches. Times are gamma*t.
struct EntanglementEvents {
    std::vector<Crossing> crossings;
    std::vector<std::pair<double, double>> dark_intervals;
    std::optional<double> death_time;      // first death crossing
    std::optional<double> first_revival;   // first revival crossing
    std::optional<double> second_revival;  // second revival crossing
};

struct RootBracket {
    double lo = 0.0;
    double hi = 0.0;
    double tolerance = 1e-9;
};

// Bisection on a bracketed sign change of f (f(lo) and f(hi) on opposite
// sides of zero, with f <= 0 counting as the nonpositive side).
double bisect_sign_change(const std::function<double(double)>& f,
                          const RootBracket& bracket);

// Finite disentanglement time of independent atoms,
// ln((p + sqrt(p(1-p)))/(2p - 1))/gamma; absent for p <= 1/2.
std::optional<double> death_time_independent(double p, double gamma = 1.0);

// Roots of  gamma*t * exp(-gamma*t) = sqrt((1-p)/p), the death/revival
// condition in the gamma12 ~ gamma regime. Two distinct roots exist only
// for sqrt((1-p)/p) < 1/e, i.e. p > e^2/(1+e^2) ~ 0.8808; absent otherwise
// (a degenerate double root counts as absent).
std::optional<std::pair<double, double>> approx_death_revival(double p,
                                                              double gamma = 1.0);

// ln(4*gamma / (sqrt(p)*(gamma - gamma12))) / gamma12, the estimate for the
// onset of the population-imbalance entanglement at long times. Requires
// 0 < gamma12 < gamma.
double second_revival_estimate(double p, const CollectiveCoupling& coupling);

// Scan the sampled concurrence for entries into and exits out of the
// clipped C <= threshold region. A death must be sustained for at least one
// further sample; each crossing is refined to 1e-6 in gamma*t by bisection
// on the closed-form concurrence (the trajectory must carry p).
EntanglementEvents find_zero_crossings(const Trajectory& trajectory,
                                       double threshold = 1e-12);

// Streaming variant of the scan: first sustained death of the closed-form
// concurrence on the grid i*dt, refined as above; absent when none occurs
// before t_max (times and t_max in gamma*t).
std::optional<double> first_death_time(double p, double gamma, double gamma12,
                                       double t_max, double dt = 1e-3,
                                       double threshold = 1e-12);

struct DeathScanPoint {
    double p = 0.0;
    std::optional<double> death_time;
};

// Death time across an initial-state grid at one separation. Grid points
// are independent, so the loop is OpenMP-parallel; the serial variant is
// the reference (bit-identical output).
std::vector<DeathScanPoint> death_time_scan(double r_over_lambda,
                                            std::span<const double> p_grid,
                                            double t_max, double gamma = 1.0,
                                            double dt = 1e-3,
                                            double threshold = 1e-12);
std::vector<DeathScanPoint> death_time_scan_serial(double r_over_lambda,
                                                   std::span<const double> p_grid,
                                                   double t_max,
                                                   double gamma = 1.0,
                                                   double dt = 1e-3,
                                                   double threshold = 1e-12);

}  // namespace entdyn
