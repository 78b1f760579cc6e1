#include "entdyn/events.hpp"

#include <atomic>
#include <cmath>
#include <exception>

#include "entdyn/concurrence.hpp"

namespace entdyn {

namespace {

void require_probability(double p) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw DomainError("p must lie in [0, 1]");
    }
}

void require_gamma(double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw DomainError("gamma must be positive and finite");
    }
}

// Concurrence of the closed-form trajectory as a function of gamma*t.
double closed_form_concurrence(double p, double gamma, double gamma12,
                               double t_gamma) {
    return x_state_concurrence(analytic_elements(p, gamma, gamma12, t_gamma / gamma));
}

long scan_steps(double t_max, double dt) {
    if (!std::isfinite(t_max) || t_max <= 0.0 || !std::isfinite(dt) || dt <= 0.0) {
        throw ConfigError("t_max and dt must be positive");
    }
    const long n = std::lround(t_max / dt);
    if (n < 1) {
        throw ConfigError("scan grid must contain at least one step");
    }
    return n;
}

}  // namespace

double bisect_sign_change(const std::function<double(double)>& f,
                          const RootBracket& bracket) {
    if (!(bracket.lo < bracket.hi) || !(bracket.tolerance > 0.0)) {
        throw ConfigError("bracket must satisfy lo < hi and tolerance > 0");
    }
    double lo = bracket.lo;
    double hi = bracket.hi;
    const bool positive_lo = f(lo) > 0.0;
    if ((f(hi) > 0.0) == positive_lo) {
        throw ResolutionError("no sign change inside bracket");
    }
    while (hi - lo > bracket.tolerance) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) > 0.0) == positive_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::optional<double> death_time_independent(double p, double gamma) {
    require_probability(p);
    require_gamma(gamma);
    if (p <= 0.5) {
        return std::nullopt;
    }
    return std::log((p + std::sqrt(p * (1.0 - p))) / (2.0 * p - 1.0)) / gamma;
}

std::optional<std::pair<double, double>> approx_death_revival(double p,
                                                              double gamma) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
        throw DomainError("p must lie in (0, 1)");
    }
    require_gamma(gamma);
    const double c = std::sqrt((1.0 - p) / p);
    // t*exp(-t) peaks at 1/e; a double root there counts as no solution.
    if (!(c < std::exp(-1.0) * (1.0 - 1e-10))) {
        return std::nullopt;
    }
    const auto f = [c](double t) { return t * std::exp(-t) - c; };
    const double death = bisect_sign_change(f, {0.0, 1.0, 1e-9});
    const double revival = bisect_sign_change(f, {1.0, 40.0, 1e-9});
    return std::make_pair(death / gamma, revival / gamma);
}

double second_revival_estimate(double p, const CollectiveCoupling& coupling) {
    if (!std::isfinite(p) || p <= 0.0 || p > 1.0) {
        throw DomainError("p must lie in (0, 1]");
    }
    require_gamma(coupling.gamma);
    if (!(coupling.gamma12 > 0.0) || !(coupling.gamma12 < coupling.gamma)) {
        throw DomainError("second revival requires 0 < gamma12 < gamma");
    }
    return std::log(4.0 * coupling.gamma /
                    (std::sqrt(p) * (coupling.gamma - coupling.gamma12))) /
           coupling.gamma12;
}

EntanglementEvents find_zero_crossings(const Trajectory& trajectory,
                                       double threshold) {
    if (trajectory.samples.empty() ||
        trajectory.samples.size() != trajectory.times.size()) {
        throw ConfigError("trajectory must be non-empty and consistent");
    }
    if (!(threshold >= 0.0)) {
        throw ConfigError("threshold must be nonnegative");
    }

    const auto refine = [&trajectory, threshold](std::size_t i) {
        if (!trajectory.p) {
            throw ConfigError("crossing refinement needs the initial-state weight p");
        }
        const double p = *trajectory.p;
        const double gamma = trajectory.gamma;
        const double gamma12 = trajectory.gamma12;
        const auto f = [=](double t_gamma) {
            return closed_form_concurrence(p, gamma, gamma12, t_gamma) - threshold;
        };
        return bisect_sign_change(f, {trajectory.times[i - 1], trajectory.times[i], 1e-6});
    };

    EntanglementEvents events;
    const std::size_t n = trajectory.samples.size();
    bool entangled = trajectory.samples[0].c > threshold;
    double dark_start = trajectory.times.front();

    for (std::size_t i = 1; i < n; ++i) {
        const double c = trajectory.samples[i].c;
        if (entangled && c <= threshold) {
            // require the dark stretch to persist for one further sample
            if (i + 1 < n && trajectory.samples[i + 1].c > threshold) {
                continue;
            }
            const double t = refine(i);
            events.crossings.push_back({t, CrossingKind::death});
            entangled = false;
            dark_start = t;
        } else if (!entangled && c > threshold) {
            const double t = refine(i);
            events.crossings.push_back({t, CrossingKind::revival});
            entangled = true;
            events.dark_intervals.emplace_back(dark_start, t);
        }
    }
    if (!entangled) {
        events.dark_intervals.emplace_back(dark_start, trajectory.times.back());
    }

    int revivals = 0;
    for (const Crossing& crossing : events.crossings) {
        if (crossing.kind == CrossingKind::death) {
            if (!events.death_time) {
                events.death_time = crossing.t_gamma;
            }
        } else {
            ++revivals;
            if (revivals == 1) {
                events.first_revival = crossing.t_gamma;
            } else if (revivals == 2) {
                events.second_revival = crossing.t_gamma;
            }
        }
    }
    return events;
}

std::optional<double> first_death_time(double p, double gamma, double gamma12,
                                       double t_max, double dt,
                                       double threshold) {
    require_probability(p);
    if (!(threshold >= 0.0)) {
        throw ConfigError("threshold must be nonnegative");
    }
    const long n = scan_steps(t_max, dt);
    const auto conc = [=](long i) {
        return closed_form_concurrence(p, gamma, gamma12, static_cast<double>(i) * dt);
    };

    double current = conc(0);
    bool entangled = current > threshold;
    double next = conc(1);
    for (long i = 1; i <= n; ++i) {
        current = next;
        next = (i + 1 <= n) ? conc(i + 1) : 0.0;
        if (entangled && current <= threshold) {
            if (i + 1 <= n && next > threshold) {
                continue;  // single-sample dip, not a sustained death
            }
            const auto f = [=](double t_gamma) {
                return closed_form_concurrence(p, gamma, gamma12, t_gamma) - threshold;
            };
            return bisect_sign_change(
                f, {static_cast<double>(i - 1) * dt, static_cast<double>(i) * dt, 1e-6});
        }
        if (!entangled && current > threshold) {
            entangled = true;
        }
    }
    return std::nullopt;
}

namespace {

std::vector<DeathScanPoint> death_time_scan_impl(double r_over_lambda,
                                                 std::span<const double> p_grid,
                                                 double t_max, double gamma,
                                                 double dt, double threshold,
                                                 bool parallel) {
    require_gamma(gamma);
    const Separation sep = Separation::from_r_over_lambda(r_over_lambda);
    const double gamma12 = gamma * collective_damping(sep.kr);
    for (double p : p_grid) {
        require_probability(p);
    }
    scan_steps(t_max, dt);

    std::vector<DeathScanPoint> result(p_grid.size());
    DeathScanPoint* out = result.data();
    const double* ps = p_grid.data();
    const long count = static_cast<long>(p_grid.size());
    std::exception_ptr failure = nullptr;

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < count; ++i) {
        try {
            out[i] = {ps[i], first_death_time(ps[i], gamma, gamma12, t_max, dt, threshold)};
        } catch (...) {
#pragma omp critical
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return result;
}

}  // namespace

std::vector<DeathScanPoint> death_time_scan(double r_over_lambda,
                                            std::span<const double> p_grid,
                                            double t_max, double gamma,
                                            double dt, double threshold) {
    return death_time_scan_impl(r_over_lambda, p_grid, t_max, gamma, dt, threshold, true);
}

std::vector<DeathScanPoint> death_time_scan_serial(double r_over_lambda,
                                                   std::span<const double> p_grid,
                                                   double t_max, double gamma,
                                                   double dt, double threshold) {
    return death_time_scan_impl(r_over_lambda, p_grid, t_max, gamma, dt, threshold, false);
}

}  // namespace entdyn
