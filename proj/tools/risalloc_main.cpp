#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risalloc/errors.hpp"
#include "risalloc/experiment.hpp"

namespace {

struct CliOverrides {
    std::optional<std::string> config_path;
    std::vector<std::pair<std::string, std::string>> entries;
};

void add_common_options(CLI::App* cmd, CliOverrides& ov) {
    cmd->add_option("config", ov.config_path, "key=value config file")->check(CLI::ExistingFile);
    const auto bind = [&ov, cmd](const std::string& flag, const std::string& key,
                                 const std::string& help) {
        cmd->add_option_function<std::string>(
            flag, [&ov, key](const std::string& v) { ov.entries.emplace_back(key, v); }, help);
    };
    bind("--schemes", "schemes", "comma list of schemes (a,b,c,d)");
    bind("--protocol", "protocol", "pilot protocol: sequential|parallel");
    bind("--n-list", "n_list", "comma list of surface sizes N");
    bind("--n-t", "n_t", "transmit antennas");
    bind("--n-r", "n_r", "receive antennas");
    bind("--trials", "trials", "Monte-Carlo trials per (scheme, N)");
    bind("--seed", "seed", "base RNG seed");
    bind("--out", "out", "output CSV path");
    bind("--t0-us", "t0_us", "pilot duration in microseconds");
    bind("--p0-mw", "p0_mw", "pilot power in milliwatts");
    bind("--slot-ms", "slot_ms", "slot duration in milliseconds");
    bind("--m-points", "m_points", "line-search points for EE/trade-off solvers");
    bind("--alpha-grid", "alpha_grid", "comma list of trade-off weights in (0,1)");
    bind("--pathloss-db", "pathloss_db", "end-to-end product path loss in dB");
    bind("--fb-pathloss-db", "fb_pathloss_db", "feedback-link path loss in dB");
    bind("--p-max-dbm", "p_max_dbm", "power budget in dBm");
    bind("--b-max-mhz", "b_max_mhz", "bandwidth budget in MHz");
    bind("--threads", "threads", "worker cap (0 = RIS_ALLOC_THREADS or hardware)");
}

risalloc::ExperimentConfig build_config(const CliOverrides& ov, const char* objective) {
    risalloc::ExperimentConfig cfg;
    if (ov.config_path) cfg = risalloc::parse_config_file(*ov.config_path);
    risalloc::apply_config_entry(cfg, "objective", objective);
    for (const auto& [key, value] : ov.entries) risalloc::apply_config_entry(cfg, key, value);
    return cfg;
}

int run_sweep(const risalloc::ExperimentConfig& cfg) {
    const std::vector<risalloc::ResultRow> rows = risalloc::run_experiment(cfg);
    risalloc::emit_csv(rows, cfg.output_path);
    risalloc::emit_summary_csv(rows, risalloc::summary_path_for(cfg.output_path));
    std::size_t ok = 0;
    for (const auto& r : rows) ok += (r.status == "ok");
    std::cout << "wrote " << rows.size() << " rows (" << ok << " ok) to " << cfg.output_path
              << " and " << risalloc::summary_path_for(cfg.output_path) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Overhead-aware resource allocation for RIS-assisted MIMO links"};
    app.require_subcommand(1);

    CliOverrides rate_ov, ee_ov, pareto_ov, show_ov;
    CLI::App* rate_cmd = app.add_subcommand("rate-sweep", "maximize the rate over (p, p_f, b, b_f)");
    add_common_options(rate_cmd, rate_ov);
    CLI::App* ee_cmd = app.add_subcommand("ee-sweep", "maximize the energy efficiency");
    add_common_options(ee_cmd, ee_ov);
    CLI::App* pareto_cmd = app.add_subcommand("pareto", "trace the rate-EE Pareto frontier");
    add_common_options(pareto_cmd, pareto_ov);
    CLI::App* show_cmd = app.add_subcommand("show-config", "print the effective configuration");
    add_common_options(show_cmd, show_ov);
    std::string show_objective = "rate";
    show_cmd->add_option("--objective", show_objective, "objective the config is resolved for")
        ->check(CLI::IsMember({"rate", "ee", "pareto"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (rate_cmd->parsed()) return run_sweep(build_config(rate_ov, "rate"));
        if (ee_cmd->parsed()) return run_sweep(build_config(ee_ov, "ee"));
        if (pareto_cmd->parsed()) return run_sweep(build_config(pareto_ov, "pareto"));
        if (show_cmd->parsed()) {
            const risalloc::ExperimentConfig cfg = build_config(show_ov, show_objective.c_str());
            cfg.validate();
            std::cout << risalloc::render_config(cfg);
            return 0;
        }
    } catch (const risalloc::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 2;
    } catch (const risalloc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
