// Command-line surface: collective coupling rates, concurrence trajectories,
// entanglement death/revival detection, and CSV data behind the standard
// concurrence figures. All times are gamma*t; gamma defaults to 1.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "entdyn/figures.hpp"

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;

std::optional<double> parse_separation(const std::string& text) {
    if (text == "ind" || text == "independent") {
        return std::nullopt;
    }
    try {
        std::size_t consumed = 0;
        const double value = std::stod(text, &consumed);
        if (consumed != text.size()) {
            throw entdyn::DomainError("trailing characters in --r value");
        }
        return value;
    } catch (const entdyn::DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw entdyn::DomainError("--r expects a number or 'ind'");
    }
}

void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& emit) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::ios_base::failure("cannot open " + path);
    }
    emit(out);
    out.flush();
    if (!out) {
        throw std::ios_base::failure("write failed for " + path);
    }
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
    } else {
        write_file(path, fn);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit collective spontaneous emission: concurrence "
                 "trajectories, entanglement death and revival times"};
    app.require_subcommand(1);

    std::string r_text = "0.05";
    entdyn::RunConfig config;
    std::string out_path;

    const auto add_common = [&](CLI::App* cmd, const char* t_end_default,
                                const char* dt_default) {
        cmd->add_option("--p", config.p, "initial-state weight p in [0,1]")
            ->capture_default_str();
        cmd->add_option("--r", r_text,
                        "separation r12/lambda, or 'ind' for independent atoms")
            ->capture_default_str();
        cmd->add_option("--gamma", config.gamma, "single-atom decay rate")
            ->capture_default_str();
        cmd->add_option("--t-end", config.t_end,
                        std::string("grid end in gamma*t (default ") + t_end_default + ")");
        cmd->add_option("--dt", config.dt,
                        std::string("grid step in gamma*t (default ") + dt_default + ")");
    };

    CLI::App* params = app.add_subcommand("params", "print gamma12/gamma and omega12/gamma");
    params->add_option("--r", r_text, "separation r12/lambda")->required();
    params->add_option("--gamma", config.gamma, "single-atom decay rate");

    CLI::App* evolve = app.add_subcommand("evolve", "closed-form trajectory CSV");
    add_common(evolve, "10", "0.01");
    evolve->add_flag("--oracle", config.with_oracle,
                     "append master-equation integrator columns (suffix _num)");
    evolve->add_option("--out", out_path, "output path (default evolve.csv)");

    CLI::App* events = app.add_subcommand("events", "death/revival report (JSON line)");
    add_common(events, "20", "0.001");
    events->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* fig1 = app.add_subcommand("fig1", "death time vs p for four separations");
    fig1->add_option("--gamma", config.gamma, "single-atom decay rate");
    fig1->add_option("--out", out_path, "output path (default fig1.csv)");

    CLI::App* fig2 = app.add_subcommand("fig2", "concurrence vs gamma*t, collective and independent");
    fig2->add_option("--gamma", config.gamma, "single-atom decay rate");
    fig2->add_option("--out", out_path, "output path (default fig2.csv)");

    CLI::App* fig3 = app.add_subcommand("fig3", "coherence vs symmetric population behind the first dark period");
    fig3->add_option("--gamma", config.gamma, "single-atom decay rate");
    fig3->add_option("--out", out_path, "output path (default fig3.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitDomain;
    }

    const auto output_or = [&out_path](const char* fallback) {
        return out_path.empty() ? std::string(fallback) : out_path;
    };

    // per-subcommand grid defaults unless given explicitly
    if (evolve->parsed()) {
        if (!evolve->count("--t-end")) config.t_end = 10.0;
        if (!evolve->count("--dt")) config.dt = 1e-2;
    } else if (events->parsed()) {
        if (!events->count("--t-end")) config.t_end = 20.0;
        if (!events->count("--dt")) config.dt = 1e-3;
    }

    try {
        config.r_over_lambda = parse_separation(r_text);

        if (params->parsed()) {
            std::cout << entdyn::params_report(entdyn::coupling_from_config(config));
        } else if (evolve->parsed()) {
            emit(output_or("evolve.csv"),
                 [&](std::ostream& os) { entdyn::write_evolve_csv(os, config); });
        } else if (events->parsed()) {
            emit(output_or("-"),
                 [&](std::ostream& os) { entdyn::write_events_jsonl(os, config); });
        } else if (fig1->parsed()) {
            emit(output_or("fig1.csv"),
                 [&](std::ostream& os) { entdyn::write_fig1_csv(os, config.gamma); });
        } else if (fig2->parsed()) {
            emit(output_or("fig2.csv"),
                 [&](std::ostream& os) { entdyn::write_fig2_csv(os, config.gamma); });
        } else if (fig3->parsed()) {
            emit(output_or("fig3.csv"),
                 [&](std::ostream& os) { entdyn::write_fig3_csv(os, config.gamma); });
        }
    } catch (const entdyn::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const entdyn::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
