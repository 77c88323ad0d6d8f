#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "risalloc/channel.hpp"
#include "risalloc/overhead.hpp"
#include "risalloc/phase_opt.hpp"

namespace risalloc {

enum class Objective { Rate, EnergyEfficiency, Pareto };

const char* objective_name(Objective o);

struct ExperimentConfig {
    Objective objective = Objective::Rate;
    std::vector<Scheme> schemes = {Scheme::IdentityPhases, Scheme::UpperBound, Scheme::LowerBound,
                                   Scheme::Alternating};
    PilotProtocol protocol = PilotProtocol::SequentialPilots;
    std::vector<std::size_t> n_list = {20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
    std::size_t n_t = 1;
    std::size_t n_r = 1;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::vector<double> alpha_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t m_points = 200;
    std::string output_path = "results.csv";
    double pathloss_db = 110.0;
    double fb_pathloss_db = 110.0;
    SystemParams params;
    unsigned threads = 0;  // 0: RIS_ALLOC_THREADS env, then hardware count

    void validate() const;
};

struct ResultRow {
    Scheme scheme = Scheme::IdentityPhases;
    PilotProtocol protocol = PilotProtocol::SequentialPilots;
    std::size_t n = 0;
    std::size_t n_t = 1;
    std::size_t n_r = 1;
    double t0_s = 0.0;
    double p0_w = 0.0;
    std::size_t trial = 0;
    Objective objective = Objective::Rate;
    double value = 0.0;            // rate [bits/s], EE [bits/J], or min-gap t
    double se_bits_s_hz = 0.0;
    double ee_bits_joule = 0.0;
    double p = 0.0, p_f = 0.0, b = 0.0, b_f = 0.0;
    std::string status = "ok";
    bool has_alpha = false;
    double alpha = 0.0;
    double t = 0.0;
};

/// Runs the configured Monte-Carlo sweep. Trials are distributed over a
/// worker pool; the returned rows are in (scheme, N, trial[, alpha]) order
/// regardless of the worker count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

/// Per-(scheme, N[, alpha]) trial averages; failed trials contribute zeros.
void emit_summary_csv(const std::vector<ResultRow>& rows, const std::string& path);

/// results.csv -> results.summary.csv
std::string summary_path_for(const std::string& path);

/// Flat key=value config file; '#' starts a comment.
ExperimentConfig parse_config_file(const std::string& path);
void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value);
std::string render_config(const ExperimentConfig& cfg);

double dbm_to_watt(double dbm);

}  // namespace risalloc
