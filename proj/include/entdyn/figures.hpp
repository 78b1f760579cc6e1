#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "entdyn/collective_params.hpp"
#include "entdyn/events.hpp"

namespace entdyn {

// One CLI run. Times are gamma*t; r_over_lambda absent means independent
// atoms (gamma12 = omega12 = 0).
struct RunConfig {
    double p = 0.9;
    std::optional<double> r_over_lambda = 0.05;
    double gamma = 1.0;
    double t_end = 10.0;
    double dt = 0.01;
    bool with_oracle = false;
};

CollectiveCoupling coupling_from_config(const RunConfig& config);

// Fixed-format number for CSV cells: 12 significant digits, '.' separator,
// no locale. Exact zeros (including -0) print as "0".
std::string format_number(double x);

// gamma12/gamma and omega12/gamma, 6 significant digits.
std::string params_report(const CollectiveCoupling& coupling);

// t_gamma,rho_ee,rho_gg,rho_ss,rho_aa,re_rho_eg,im_rho_eg,C,C1,C2 from the
// closed form; with_oracle appends the same columns of the integrated
// master equation with suffix _num.
void write_evolve_csv(std::ostream& out, const RunConfig& config);

// Single JSON record: detected crossings plus the closed-form reference
// values (eq14 death time, eq15 roots, eq16 estimate; null when absent).
void write_events_jsonl(std::ostream& out, const RunConfig& config);

// Death time vs p for r12 = lambda, lambda/3, lambda/6, lambda/20
// (p = 0.01..0.99, absent deaths are empty cells).
void write_fig1_csv(std::ostream& out, double gamma = 1.0);

// Concurrence vs gamma*t at p = 0.9 for the lambda/20 and independent cases.
void write_fig2_csv(std::ostream& out, double gamma = 1.0);

// 2|rho_eg|, rho_ss and C vs gamma*t for the lambda/20, p = 0.9 case.
void write_fig3_csv(std::ostream& out, double gamma = 1.0);

}  // namespace entdyn
