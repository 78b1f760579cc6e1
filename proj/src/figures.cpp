#include "entdyn/figures.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <vector>

#include <json.hpp>

#include "entdyn/concurrence.hpp"

namespace entdyn {

namespace {

// Default grids for the figure emitters.
constexpr double kFigureTimeEnd = 10.0;
constexpr double kFigureTimeStep = 1e-2;
constexpr double kEventScanEnd = 20.0;
constexpr double kEventScanStep = 1e-3;

std::vector<double> percent_grid() {
    std::vector<double> grid;
    grid.reserve(99);
    for (int k = 1; k <= 99; ++k) {
        grid.push_back(static_cast<double>(k) / 100.0);
    }
    return grid;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << cells[i];
    }
    out << '\n';
}

}  // namespace

CollectiveCoupling coupling_from_config(const RunConfig& config) {
    if (config.r_over_lambda) {
        return coupling_from_separation(*config.r_over_lambda, config.gamma);
    }
    return CollectiveCoupling::independent(config.gamma);
}

std::string format_number(double x) {
    if (x == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string params_report(const CollectiveCoupling& coupling) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "gamma12/gamma = %.6g\nomega12/gamma = %.6g\n",
                  coupling.gamma12 / coupling.gamma,
                  coupling.omega12 / coupling.gamma);
    return buf;
}

void write_evolve_csv(std::ostream& out, const RunConfig& config) {
    const CollectiveCoupling coupling = coupling_from_config(config);
    const double t_end = config.t_end / config.gamma;
    const double dt = config.dt / config.gamma;
    const Trajectory closed = closed_form_trajectory(config.p, coupling, t_end, dt);

    Trajectory numeric;
    long stride = 1;
    if (config.with_oracle) {
        stride = std::max(1L, std::lround(std::ceil(dt / default_step(coupling))));
        numeric = integrate_initial(config.p, coupling, t_end,
                                    dt / static_cast<double>(stride));
    }

    out << "t_gamma,rho_ee,rho_gg,rho_ss,rho_aa,re_rho_eg,im_rho_eg,C,C1,C2";
    if (config.with_oracle) {
        out << ",rho_ee_num,rho_gg_num,rho_ss_num,rho_aa_num,"
               "re_rho_eg_num,im_rho_eg_num,C_num,C1_num,C2_num";
    }
    out << '\n';

    const auto sample_cells = [](const TrajectorySample& s) {
        return std::vector<std::string>{
            format_number(s.state.rho_ee),      format_number(s.state.rho_gg),
            format_number(s.state.rho_ss),      format_number(s.state.rho_aa),
            format_number(s.state.rho_eg.real()),
            format_number(s.state.rho_eg.imag()),
            format_number(s.c), format_number(s.c1), format_number(s.c2)};
    };

    for (std::size_t i = 0; i < closed.samples.size(); ++i) {
        std::vector<std::string> cells{format_number(closed.times[i])};
        const auto base = sample_cells(closed.samples[i]);
        cells.insert(cells.end(), base.begin(), base.end());
        if (config.with_oracle) {
            const auto num = sample_cells(numeric.samples[i * stride]);
            cells.insert(cells.end(), num.begin(), num.end());
        }
        write_row(out, cells);
    }
}

void write_events_jsonl(std::ostream& out, const RunConfig& config) {
    const CollectiveCoupling coupling = coupling_from_config(config);
    const Trajectory traj = closed_form_trajectory(
        config.p, coupling, config.t_end / config.gamma, config.dt / config.gamma);
    const EntanglementEvents events = find_zero_crossings(traj);

    nlohmann::ordered_json record;
    record["p"] = config.p;
    if (config.r_over_lambda) {
        record["r_over_lambda"] = *config.r_over_lambda;
    } else {
        record["r_over_lambda"] = nullptr;
    }
    record["gamma12_over_gamma"] = coupling.gamma12 / coupling.gamma;

    const auto time_or_null = [](const std::optional<double>& t) {
        return t ? nlohmann::ordered_json(*t) : nlohmann::ordered_json(nullptr);
    };
    record["death_time"] = time_or_null(events.death_time);
    record["first_revival"] = time_or_null(events.first_revival);
    record["second_revival"] = time_or_null(events.second_revival);

    auto intervals = nlohmann::ordered_json::array();
    for (const auto& [start, end] : events.dark_intervals) {
        intervals.push_back({start, end});
    }
    record["dark_intervals"] = intervals;

    auto crossings = nlohmann::ordered_json::array();
    for (const Crossing& crossing : events.crossings) {
        crossings.push_back(
            {{"t_gamma", crossing.t_gamma},
             {"kind", crossing.kind == CrossingKind::death ? "death" : "revival"}});
    }
    record["crossings"] = crossings;

    const auto eq14 = death_time_independent(config.p, config.gamma);
    record["eq14"] = eq14 ? nlohmann::ordered_json(config.gamma * *eq14)
                          : nlohmann::ordered_json(nullptr);
    record["eq15_roots"] = nullptr;
    if (config.p > 0.0 && config.p < 1.0) {
        if (const auto eq15 = approx_death_revival(config.p, config.gamma)) {
            record["eq15_roots"] = {config.gamma * eq15->first,
                                    config.gamma * eq15->second};
        }
    }
    if (coupling.gamma12 > 0.0 && coupling.gamma12 < coupling.gamma) {
        record["eq16_estimate"] =
            config.gamma * second_revival_estimate(config.p, coupling);
    } else {
        record["eq16_estimate"] = nullptr;
    }

    out << record.dump() << '\n';
}

void write_fig1_csv(std::ostream& out, double gamma) {
    const std::array<double, 4> separations = {1.0, 1.0 / 3.0, 1.0 / 6.0,
                                               1.0 / 20.0};
    const std::vector<double> grid = percent_grid();

    std::vector<std::vector<DeathScanPoint>> scans;
    scans.reserve(separations.size());
    for (double r : separations) {
        scans.push_back(death_time_scan(r, grid, kEventScanEnd / gamma, gamma,
                                        kEventScanStep / gamma));
    }

    out << "p,td_lambda,td_lambda_3,td_lambda_6,td_lambda_20\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> cells{format_number(grid[i])};
        for (const auto& scan : scans) {
            cells.push_back(scan[i].death_time
                                ? format_number(gamma * *scan[i].death_time)
                                : std::string{});
        }
        write_row(out, cells);
    }
}

void write_fig2_csv(std::ostream& out, double gamma) {
    const double p = 0.9;
    const Trajectory collective =
        closed_form_trajectory(p, coupling_from_separation(0.05, gamma),
                               kFigureTimeEnd / gamma, kFigureTimeStep / gamma);
    const Trajectory independent =
        closed_form_trajectory(p, CollectiveCoupling::independent(gamma),
                               kFigureTimeEnd / gamma, kFigureTimeStep / gamma);

    out << "t_gamma,C_collective,C_independent\n";
    for (std::size_t i = 0; i < collective.samples.size(); ++i) {
        write_row(out, {format_number(collective.times[i]),
                        format_number(collective.samples[i].c),
                        format_number(independent.samples[i].c)});
    }
}

void write_fig3_csv(std::ostream& out, double gamma) {
    const double p = 0.9;
    const Trajectory traj =
        closed_form_trajectory(p, coupling_from_separation(0.05, gamma),
                               kFigureTimeEnd / gamma, kFigureTimeStep / gamma);

    out << "t_gamma,two_abs_rho_eg,rho_ss,C\n";
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const TrajectorySample& s = traj.samples[i];
        write_row(out, {format_number(traj.times[i]),
                        format_number(2.0 * std::abs(s.state.rho_eg)),
                        format_number(s.state.rho_ss), format_number(s.c)});
    }
}

}  // namespace entdyn
