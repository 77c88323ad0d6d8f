#include "risalloc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "risalloc/ee_opt.hpp"
#include "risalloc/errors.hpp"
#include "risalloc/pareto.hpp"
#include "risalloc/rate_opt.hpp"

namespace risalloc {

namespace {

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RIS_ALLOC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidInput("config: bad numeric value for '" + key + "': " + value);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidInput("config: bad integer value for '" + key + "': " + value);
    }
}

Scheme scheme_from_letter(const std::string& s) {
    if (s == "a") return Scheme::IdentityPhases;
    if (s == "b") return Scheme::UpperBound;
    if (s == "c") return Scheme::LowerBound;
    if (s == "d") return Scheme::Alternating;
    throw InvalidInput("config: unknown scheme '" + s + "' (expected a,b,c,d)");
}

struct RowSink {
    std::vector<ResultRow>* rows;
    std::size_t base;
    std::size_t per_trial;
};

}  // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

const char* objective_name(Objective o) {
    switch (o) {
        case Objective::Rate: return "rate";
        case Objective::EnergyEfficiency: return "ee";
        case Objective::Pareto: return "pareto";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw InvalidInput("config: trials must be >= 1");
    if (n_list.empty()) throw InvalidInput("config: n_list must be nonempty");
    if (schemes.empty()) throw InvalidInput("config: schemes must be nonempty");
    if (m_points < 2) throw InvalidInput("config: m_points must be >= 2");
    if (objective == Objective::Pareto) {
        if (alpha_grid.empty()) throw InvalidInput("config: alpha_grid must be nonempty");
        for (double a : alpha_grid) {
            if (!(a > 0.0) || !(a < 1.0)) throw InvalidInput("config: alphas must lie in (0,1)");
        }
    }
    params.validate();
    Scenario s{n_t, n_r, n_list.front(), pathloss_db, fb_pathloss_db, seed};
    s.validate();
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t alpha_count =
        (cfg.objective == Objective::Pareto) ? cfg.alpha_grid.size() : 1;
    const std::size_t rows_per_job = cfg.schemes.size() * alpha_count;
    const std::size_t jobs = cfg.n_list.size() * cfg.trials;
    std::vector<ResultRow> rows(jobs * rows_per_job);

    const ResourceLimits limits = limits_from(cfg.params);

    const auto run_job = [&](std::size_t job) {
        const std::size_t n_index = job / cfg.trials;
        const std::size_t trial = job % cfg.trials;
        const std::size_t n = cfg.n_list[n_index];

        Scenario scen{cfg.n_t, cfg.n_r, n, cfg.pathloss_db, cfg.fb_pathloss_db, cfg.seed};
        const ChannelRealization ch = draw_channels(scen, trial);

        for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
            const Scheme scheme = cfg.schemes[si];
            // rows laid out as (scheme, N, trial, alpha)
            const std::size_t base =
                ((si * cfg.n_list.size() + n_index) * cfg.trials + trial) * alpha_count;
            for (std::size_t ai = 0; ai < alpha_count; ++ai) {
                ResultRow& row = rows[base + ai];
                row.scheme = scheme;
                row.protocol = cfg.protocol;
                row.n = n;
                row.n_t = cfg.n_t;
                row.n_r = cfg.n_r;
                row.t0_s = cfg.params.t0;
                row.p0_w = cfg.params.p0;
                row.trial = trial;
                row.objective = cfg.objective;
                if (cfg.objective == Objective::Pareto) {
                    row.has_alpha = true;
                    row.alpha = cfg.alpha_grid[ai];
                }
            }

            const auto mark_failed = [&](const char* status) {
                for (std::size_t ai = 0; ai < alpha_count; ++ai) rows[base + ai].status = status;
            };

            try {
                const PhaseSolution sol = solve_scheme(ch, scheme);
                const bool feedback = scheme != Scheme::IdentityPhases;
                const OverheadSummary summary =
                    make_summary(scen, cfg.params, cfg.protocol, feedback, sol.objective, ch.h_f);
                const PowerModel pm = power_model_from(cfg.params, summary);

                if (cfg.objective == Objective::Rate) {
                    const RateResult r = solve_rate(summary, limits);
                    ResultRow& row = rows[base];
                    row.value = r.rate;
                    row.se_bits_s_hz = r.spectral_efficiency;
                    row.ee_bits_joule = r.rate / total_power(cfg.params, summary, r.alloc);
                    row.p = r.alloc.p;
                    row.p_f = r.alloc.p_f;
                    row.b = r.alloc.b;
                    row.b_f = r.alloc.b_f;
                } else if (cfg.objective == Objective::EnergyEfficiency) {
                    const EEResult r = solve_ee(summary, pm, limits, cfg.m_points);
                    ResultRow& row = rows[base];
                    row.value = r.ee;
                    row.se_bits_s_hz = r.rate / cfg.params.b_max;
                    row.ee_bits_joule = r.ee;
                    row.p = r.alloc.p;
                    row.p_f = r.alloc.p_f;
                    row.b = r.alloc.b;
                    row.b_f = r.alloc.b_f;
                } else {
                    const TradeoffContext ctx =
                        make_tradeoff_context(summary, pm, limits, cfg.m_points);
                    for (std::size_t ai = 0; ai < alpha_count; ++ai) {
                        const ParetoPoint pt = solve_tradeoff_at(ctx, cfg.alpha_grid[ai]);
                        ResultRow& row = rows[base + ai];
                        row.value = pt.t;
                        row.t = pt.t;
                        row.se_bits_s_hz = pt.rate / cfg.params.b_max;
                        row.ee_bits_joule = pt.ee;
                        row.p = pt.alloc.p;
                        row.p_f = pt.alloc.p_f;
                        row.b = pt.alloc.b;
                        row.b_f = pt.alloc.b_f;
                    }
                }
            } catch (const OverheadExceedsSlot&) {
                mark_failed("overhead_exceeds_slot");
            } catch (const Infeasible&) {
                mark_failed("infeasible");
            } catch (const DegenerateMatrix&) {
                mark_failed("degenerate");
            }
        }
    };

    const unsigned workers = std::min<unsigned>(resolve_threads(cfg.threads),
                                                static_cast<unsigned>(std::max<std::size_t>(jobs, 1)));
    if (workers <= 1) {
        for (std::size_t j = 0; j < jobs; ++j) run_job(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned wi = 0; wi < workers; ++wi) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t j = next.fetch_add(1);
                    if (j >= jobs) return;
                    run_job(j);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return rows;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_csv: cannot open " + path);
    const bool pareto = !rows.empty() && rows.front().has_alpha;
    out << "scheme,protocol,N,n_t,n_r,t0_s,p0_w,trial,objective,value,se_bits_s_hz,"
           "ee_bits_joule,p,p_f,b,b_f,status";
    if (pareto) out << ",alpha,t";
    out << "\n";
    for (const ResultRow& r : rows) {
        out << scheme_name(r.scheme) << ',' << protocol_name(r.protocol) << ',' << r.n << ','
            << r.n_t << ',' << r.n_r << ',' << format_double(r.t0_s) << ','
            << format_double(r.p0_w) << ',' << r.trial << ',' << objective_name(r.objective) << ','
            << format_double(r.value) << ',' << format_double(r.se_bits_s_hz) << ','
            << format_double(r.ee_bits_joule) << ',' << format_double(r.p) << ','
            << format_double(r.p_f) << ',' << format_double(r.b) << ',' << format_double(r.b_f)
            << ',' << r.status;
        if (pareto) out << ',' << format_double(r.alpha) << ',' << format_double(r.t);
        out << "\n";
    }
    if (!out) throw IoError("emit_csv: write failed for " + path);
}

std::string summary_path_for(const std::string& path) {
    const std::size_t dot = path.rfind('.');
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos) {
        return path + ".summary";
    }
    return path.substr(0, dot) + ".summary" + path.substr(dot);
}

void emit_summary_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    struct Acc {
        std::size_t count = 0;
        std::size_t ok = 0;
        double value = 0.0;
        double se = 0.0;
        double ee = 0.0;
    };
    std::map<std::tuple<int, std::size_t, long long>, Acc> groups;
    const bool pareto = !rows.empty() && rows.front().has_alpha;
    for (const ResultRow& r : rows) {
        const long long alpha_key =
            r.has_alpha ? static_cast<long long>(std::llround(r.alpha * 1e9)) : -1;
        Acc& acc = groups[{static_cast<int>(r.scheme), r.n, alpha_key}];
        acc.count += 1;
        if (r.status == "ok") acc.ok += 1;
        acc.value += r.value;
        acc.se += r.se_bits_s_hz;
        acc.ee += r.ee_bits_joule;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_summary_csv: cannot open " + path);
    out << "scheme,N";
    if (pareto) out << ",alpha";
    out << ",trials,ok,mean_value,mean_se_bits_s_hz,mean_ee_bits_joule\n";
    for (const auto& [key, acc] : groups) {
        const auto& [scheme, n, alpha_key] = key;
        out << scheme_name(static_cast<Scheme>(scheme)) << ',' << n;
        if (pareto) out << ',' << format_double(static_cast<double>(alpha_key) / 1e9);
        const double cnt = static_cast<double>(acc.count);
        out << ',' << acc.count << ',' << acc.ok << ',' << format_double(acc.value / cnt) << ','
            << format_double(acc.se / cnt) << ',' << format_double(acc.ee / cnt) << "\n";
    }
    if (!out) throw IoError("emit_summary_csv: write failed for " + path);
}

void apply_config_entry(ExperimentConfig& cfg, const std::string& raw_key,
                        const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "objective") {
        if (value == "rate") cfg.objective = Objective::Rate;
        else if (value == "ee") cfg.objective = Objective::EnergyEfficiency;
        else if (value == "pareto") cfg.objective = Objective::Pareto;
        else throw InvalidInput("config: unknown objective '" + value + "'");
    } else if (key == "schemes") {
        cfg.schemes.clear();
        for (const std::string& part : split(value, ',')) cfg.schemes.push_back(scheme_from_letter(trim(part)));
    } else if (key == "protocol") {
        if (value == "sequential") cfg.protocol = PilotProtocol::SequentialPilots;
        else if (value == "parallel") cfg.protocol = PilotProtocol::ParallelPilots;
        else throw InvalidInput("config: unknown protocol '" + value + "'");
    } else if (key == "n_list") {
        cfg.n_list.clear();
        for (const std::string& part : split(value, ',')) {
            cfg.n_list.push_back(static_cast<std::size_t>(parse_u64(key, trim(part))));
        }
    } else if (key == "alpha_grid") {
        cfg.alpha_grid.clear();
        for (const std::string& part : split(value, ',')) {
            cfg.alpha_grid.push_back(parse_double(key, trim(part)));
        }
    } else if (key == "n_t") {
        cfg.n_t = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "n_r") {
        cfg.n_r = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "trials") {
        cfg.trials = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "seed") {
        cfg.seed = parse_u64(key, value);
    } else if (key == "m_points") {
        cfg.m_points = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(parse_u64(key, value));
    } else if (key == "out") {
        cfg.output_path = value;
    } else if (key == "t0_us") {
        cfg.params.t0 = parse_double(key, value) * 1e-6;
    } else if (key == "p0_mw") {
        cfg.params.p0 = parse_double(key, value) * 1e-3;
    } else if (key == "slot_ms") {
        cfg.params.t_slot = parse_double(key, value) * 1e-3;
    } else if (key == "p_max_dbm") {
        cfg.params.p_max = dbm_to_watt(parse_double(key, value));
    } else if (key == "b_max_mhz") {
        cfg.params.b_max = parse_double(key, value) * 1e6;
    } else if (key == "n0_dbm_hz") {
        cfg.params.n0 = dbm_to_watt(parse_double(key, value));
    } else if (key == "mu") {
        cfg.params.mu = parse_double(key, value);
    } else if (key == "mu_f") {
        cfg.params.mu_f = parse_double(key, value);
    } else if (key == "b_f_bits") {
        cfg.params.b_f = parse_double(key, value);
    } else if (key == "p_c0_dbm") {
        cfg.params.p_c0 = dbm_to_watt(parse_double(key, value));
    } else if (key == "p_cn_dbm") {
        cfg.params.p_cn = dbm_to_watt(parse_double(key, value));
    } else if (key == "pathloss_db") {
        cfg.pathloss_db = parse_double(key, value);
        cfg.fb_pathloss_db = cfg.pathloss_db;
    } else if (key == "fb_pathloss_db") {
        cfg.fb_pathloss_db = parse_double(key, value);
    } else {
        throw InvalidInput("config: unknown key '" + key + "'");
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open " + path);
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput("config: line " + std::to_string(lineno) + " is not key=value");
        }
        apply_config_entry(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

std::string render_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "objective=" << objective_name(cfg.objective) << "\n";
    out << "schemes=";
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
        if (i > 0) out << ',';
        out << scheme_name(cfg.schemes[i]);
    }
    out << "\nprotocol=" << protocol_name(cfg.protocol) << "\nn_list=";
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        if (i > 0) out << ',';
        out << cfg.n_list[i];
    }
    out << "\nn_t=" << cfg.n_t << "\nn_r=" << cfg.n_r << "\ntrials=" << cfg.trials
        << "\nseed=" << cfg.seed << "\nm_points=" << cfg.m_points << "\nthreads=" << cfg.threads
        << "\nout=" << cfg.output_path;
    if (cfg.objective == Objective::Pareto) {
        out << "\nalpha_grid=";
        for (std::size_t i = 0; i < cfg.alpha_grid.size(); ++i) {
            if (i > 0) out << ',';
            out << format_double(cfg.alpha_grid[i]);
        }
    }
    out << "\nt0_us=" << format_double(cfg.params.t0 * 1e6)
        << "\np0_mw=" << format_double(cfg.params.p0 * 1e3)
        << "\nslot_ms=" << format_double(cfg.params.t_slot * 1e3)
        << "\np_max_w=" << format_double(cfg.params.p_max)
        << "\nb_max_hz=" << format_double(cfg.params.b_max)
        << "\nn0_w_hz=" << format_double(cfg.params.n0) << "\nmu=" << format_double(cfg.params.mu)
        << "\nmu_f=" << format_double(cfg.params.mu_f)
        << "\nb_f_bits=" << format_double(cfg.params.b_f)
        << "\np_c0_w=" << format_double(cfg.params.p_c0)
        << "\np_cn_w=" << format_double(cfg.params.p_cn)
        << "\npathloss_db=" << format_double(cfg.pathloss_db)
        << "\nfb_pathloss_db=" << format_double(cfg.fb_pathloss_db) << "\n";
    return out.str();
}

}  // namespace risalloc
