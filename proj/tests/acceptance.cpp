// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run with a list of criterion numbers to restrict the set.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "risalloc/channel.hpp"
#include "risalloc/ee_opt.hpp"
#include "risalloc/errors.hpp"
#include "risalloc/experiment.hpp"
#include "risalloc/overhead.hpp"
#include "risalloc/pareto.hpp"
#include "risalloc/phase_opt.hpp"
#include "risalloc/rate_opt.hpp"

#include "ee_grid_oracle.hpp"

using namespace risalloc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ChannelRealization seeded_channel(std::size_t n, std::size_t nt, std::size_t nr,
                                  std::uint64_t seed) {
    Scenario s{nt, nr, n, 110.0, 110.0, seed};
    return draw_channels(s, 0);
}

struct RateInstance {
    SystemParams params;
    OverheadSummary summary;
    PowerModel pm;
    ResourceLimits limits;
};

RateInstance table_instance(std::uint64_t seed, double t0, std::size_t n = 100) {
    SystemParams params;
    params.t0 = t0;
    Scenario s{1, 1, n, 110.0, 110.0, seed};
    const ChannelRealization ch = draw_channels(s, 0);
    const PhaseSolution sol = solve_upper_bound(ch);
    const OverheadSummary summary =
        make_summary(s, params, PilotProtocol::SequentialPilots, true, sol.objective, ch.h_f);
    return {params, summary, power_model_from(params, summary), limits_from(params)};
}

// ---------------------------------------------------------------- criterion 1
Outcome rank_one_optimality() {
    Outcome out;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 1 + (k % 8);
        const ChannelRealization ch = seeded_channel(n, 1, 1, 1000 + k);
        const double vb = solve_upper_bound(ch).objective;
        const double vc = solve_lower_bound(ch).objective;
        const double vd = solve_alternating(ch, 500, 1e-10).objective;
        const double vg = brute_force_phases(ch, 360).objective;
        const double hi = std::max(std::max(vb, vc), std::max(vd, vg));
        const double lo = std::min(std::min(vb, vc), std::min(vd, vg));
        worst = std::max(worst, (hi - lo) / hi);
    }
    out.pass = worst <= 1e-4;
    out.detail = "worst relative spread " + format_double(worst) + " over 100 scalar-link instances";
    return out;
}

// ---------------------------------------------------------------- criterion 2
Outcome phase_oracle_dominance() {
    Outcome out;
    double worst_excess = -1e300;
    double worst_drop = 0.0;
    for (int k = 0; k < 50; ++k) {
        const ChannelRealization ch = seeded_channel(2, 2, 2, 2000 + k);
        const PhaseSolution brute = brute_force_phases(ch, 128);
        for (Scheme s : {Scheme::IdentityPhases, Scheme::UpperBound, Scheme::LowerBound,
                         Scheme::Alternating}) {
            const double v = solve_scheme(ch, s).objective;
            worst_excess = std::max(worst_excess, (v - brute.objective) / brute.objective);
        }
        std::vector<double> trace;
        solve_alternating(ch, 500, 1e-10, &trace);
        for (std::size_t i = 1; i < trace.size(); ++i) {
            worst_drop = std::max(worst_drop, (trace[i - 1] - trace[i]) / trace[i - 1]);
        }
    }
    out.pass = worst_excess <= 1e-3 && worst_drop <= 1e-12;
    out.detail = "worst scheme excess over grid " + format_double(worst_excess) +
                 ", worst ascent drop " + format_double(worst_drop);
    return out;
}

// ---------------------------------------------------------------- criterion 3
Outcome rate_global_optimality() {
    Outcome out;
    double worst_dev = 0.0;
    double worst_sat = 0.0;
    for (int k = 0; k < 30; ++k) {
        const double t0 = (k < 15) ? 0.8e-6 : 0.15e-6;
        const RateInstance inst = table_instance(3000 + k, t0);
        const RateResult r = solve_rate(inst.summary, inst.limits);

        double grid_best = 0.0;
        for (int i = 1; i <= 400; ++i) {
            for (int j = 1; j <= 400; ++j) {
                const double p = inst.limits.p_max * i / 401.0;
                const double b = inst.limits.b_max * j / 401.0;
                const double cap = feedback_capacity(inst.summary.a, inst.limits.p_max - p,
                                                     inst.limits.b_max - b);
                if (cap * inst.summary.beta < inst.summary.d) continue;
                const double rate = (inst.summary.beta - inst.summary.d / cap) *
                                    rate_kernel(p, b, inst.summary.c);
                grid_best = std::max(grid_best, rate);
            }
        }
        worst_dev = std::max(worst_dev, std::abs(r.rate - grid_best) / std::max(r.rate, grid_best));
        worst_sat = std::max(
            worst_sat,
            std::abs(r.alloc.p + r.alloc.p_f - inst.limits.p_max) / inst.limits.p_max);
        worst_sat = std::max(
            worst_sat,
            std::abs(r.alloc.b + r.alloc.b_f - inst.limits.b_max) / inst.limits.b_max);
    }
    out.pass = worst_dev <= 1e-3 && worst_sat <= 1e-9;
    out.detail = "worst grid deviation " + format_double(worst_dev) + ", worst saturation gap " +
                 format_double(worst_sat);
    return out;
}

// ---------------------------------------------------------------- criterion 4
Outcome convexity_certificates() {
    Outcome out;
    const CounterRng rng(44);
    std::uint64_t ctr = 0;
    const auto uniform = [&]() { return (rng.bits(ctr++) >> 11) * 0x1.0p-53; };
    const auto log_uniform = [&](double lo, double hi) {
        return std::exp(std::log(lo) + uniform() * (std::log(hi) - std::log(lo)));
    };

    std::size_t violations = 0;

    // g1 midpoint concavity
    for (int k = 0; k < 10000; ++k) {
        const double c = log_uniform(1e6, 1e14);
        const double p1 = log_uniform(1e-3, 1e2), b1 = log_uniform(1e3, 1e9);
        const double p2 = log_uniform(1e-3, 1e2), b2 = log_uniform(1e3, 1e9);
        const double mid = rate_kernel(0.5 * (p1 + p2), 0.5 * (b1 + b2), c);
        const double avg = 0.5 * (rate_kernel(p1, b1, c) + rate_kernel(p2, b2, c));
        if (mid < avg - 1e-12 * std::max(mid, avg)) ++violations;
    }

    // g2 midpoint convexity
    for (int k = 0; k < 10000; ++k) {
        const double a = log_uniform(1e6, 1e12);
        const double p1 = log_uniform(1e-3, 1e2), b1 = log_uniform(1e3, 1e9);
        const double p2 = log_uniform(1e-3, 1e2), b2 = log_uniform(1e3, 1e9);
        const auto g2 = [&](double pf, double bf) {
            return 1.0 / (bf * std::log2(1.0 + a * pf / bf));
        };
        const double mid = g2(0.5 * (p1 + p2), 0.5 * (b1 + b2));
        const double avg = 0.5 * (g2(p1, b1) + g2(p2, b2));
        if (mid > avg + 1e-12 * std::max(mid, avg)) ++violations;
    }

    // Hessian of 1/z with z = b_f*ln(1 + a*p_f/b_f): trace and determinant
    for (int k = 0; k < 10000; ++k) {
        const double a = log_uniform(1e6, 1e12);
        const double pf = log_uniform(1e-3, 1e2), bf = log_uniform(1e3, 1e9);
        const double m = a * pf / bf;
        const double z = bf * std::log1p(m);
        const double zb = std::log1p(m) - a * pf / (bf + a * pf);
        const double common = 1.0 / ((bf + a * pf) * (bf + a * pf) * z * z * z);
        const double h11 = common * (a * a * bf * z + 2.0 * a * a * bf * bf);
        const double h12 =
            common * (-a * a * pf * z + 2.0 * a * bf * (bf + a * pf) * zb);
        const double h22 = common * (a * a * pf * pf / bf * z +
                                     2.0 * (bf + a * pf) * (bf + a * pf) * zb * zb);
        const double tr = h11 + h22;
        const double det = h11 * h22 - h12 * h12;
        const double tr_scale = std::abs(h11) + std::abs(h22);
        if (tr < -1e-12 * tr_scale) ++violations;
        if (det < -1e-12 * tr_scale * tr_scale) ++violations;

        // the closed-form entries must agree with central differences
        if (k < 100) {
            const auto g2 = [&](double x, double y) {
                return 1.0 / (y * std::log1p(a * x / y));
            };
            const double hp = pf * 1e-5, hb = bf * 1e-5;
            const double fd11 = (g2(pf + hp, bf) - 2.0 * g2(pf, bf) + g2(pf - hp, bf)) / (hp * hp);
            const double fd22 = (g2(pf, bf + hb) - 2.0 * g2(pf, bf) + g2(pf, bf - hb)) / (hb * hb);
            const double fd12 = (g2(pf + hp, bf + hb) - g2(pf + hp, bf - hb) -
                                 g2(pf - hp, bf + hb) + g2(pf - hp, bf - hb)) /
                                (4.0 * hp * hb);
            const double scale = std::abs(fd11) + std::abs(fd22) + std::abs(fd12);
            if (std::abs(h11 - fd11) > 1e-4 * scale) ++violations;
            if (std::abs(h22 - fd22) > 1e-4 * scale) ++violations;
            if (std::abs(h12 - fd12) > 1e-4 * scale) ++violations;
        }
    }

    // (1+y)*ln(1+y) >= y
    for (int k = 0; k < 10000; ++k) {
        const double y = log_uniform(1e-12, 1e6);
        if ((1.0 + y) * std::log1p(y) < y - 1e-12 * std::max(y, 1.0)) ++violations;
    }

    out.pass = violations == 0;
    out.detail = std::to_string(violations) + " violations across 4x10^4 sampled certificates";
    return out;
}

// ---------------------------------------------------------------- criterion 5
Outcome ee_solver() {
    Outcome out;
    double worst_cert = 0.0;
    double worst_grid = 0.0;
    double worst_tight = 0.0;
    for (int k = 0; k < 10; ++k) {
        const RateInstance inst = table_instance(5000 + k, 0.8e-6);
        const OverheadSummary& s = inst.summary;
        const double y_lo = s.d / s.beta;
        const double y_hi = feedback_capacity(s.a, inst.limits.p_max, inst.limits.b_max);
        const double delta = (y_hi - y_lo) / 200.0;

        EEResult best;
        bool have = false;
        for (int m = 1; m <= 200; ++m) {
            const double y = y_lo + (m - 1) * delta;
            std::vector<double> lambdas;
            const EEResult r = solve_ee_fixed_y(s, inst.pm, inst.limits, y, &lambdas);
            if (lambdas.size() >= 2) {
                // termination excess |F(lambda)| = |lambda_k - lambda_{k-1}|*den
                const double excess =
                    std::abs(lambdas.back() - lambdas[lambdas.size() - 2]) * r.p_tot;
                worst_cert = std::max(worst_cert, excess / std::max(r.rate, inst.pm.p_c * r.ee));
            }
            if (!have || r.ee > best.ee) {
                best = r;
                have = true;
            }
        }

        // cross-check against Algorithm-2 as shipped
        const EEResult shipped = solve_ee(s, inst.pm, inst.limits, 200);
        worst_grid = std::max(worst_grid, std::abs(shipped.ee - best.ee) /
                                              std::max(shipped.ee, best.ee));

        // reduced-dimension grid oracle at the winning y and three probes
        for (double y : {best.alloc.y, y_lo + 10 * delta, y_lo + 50 * delta, y_lo + 120 * delta}) {
            const EEResult r = solve_ee_fixed_y(s, inst.pm, inst.limits, y);
            const double grid = risalloc::testing::ee_grid_oracle(s, inst.pm, inst.limits, y, 300);
            if (grid > 0.0 || r.ee > 0.0) {
                worst_grid = std::max(worst_grid,
                                      std::abs(r.ee - grid) / std::max(std::max(r.ee, grid), 1e-300));
            }
        }

        // relaxed capacity constraint must be active at the returned optimum
        const double cap = feedback_capacity(s.a, shipped.alloc.p_f, shipped.alloc.b_f);
        worst_tight =
            std::max(worst_tight, std::abs(cap - shipped.alloc.y) / std::max(shipped.alloc.y, 1e-300));
    }
    out.pass = worst_cert <= 1e-7 && worst_grid <= 1e-3 && worst_tight <= 1e-6;
    out.detail = "worst Dinkelbach excess " + format_double(worst_cert) + ", worst grid deviation " +
                 format_double(worst_grid) + ", worst capacity slack " + format_double(worst_tight);
    return out;
}

// ---------------------------------------------------------------- criterion 6
Outcome pareto_frontier_checks() {
    Outcome out;
    const RateInstance inst = table_instance(6001, 0.8e-6, 60);
    const TradeoffContext ctx = make_tradeoff_context(inst.summary, inst.pm, inst.limits, 200);

    const ParetoPoint rate_end = solve_tradeoff_at(ctx, 1.0 - 1e-6);
    const ParetoPoint ee_end = solve_tradeoff_at(ctx, 1e-6);
    const double rate_gap = std::abs(rate_end.rate - ctx.r_opt) / ctx.r_opt;
    const double ee_gap = std::abs(ee_end.ee - ctx.ee_opt) / ctx.ee_opt;

    std::vector<double> alphas;
    for (int i = 1; i <= 9; ++i) alphas.push_back(0.1 * i);
    std::vector<ParetoPoint> frontier;
    for (double a : alphas) frontier.push_back(solve_tradeoff_at(ctx, a));
    std::stable_sort(frontier.begin(), frontier.end(),
                     [](const ParetoPoint& a, const ParetoPoint& b) { return a.rate < b.rate; });

    bool ordered = true;
    bool undominated = true;
    for (std::size_t i = 1; i < frontier.size(); ++i) {
        if (frontier[i].ee > frontier[i - 1].ee * (1.0 + 1e-6)) ordered = false;
    }
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        for (std::size_t j = 0; j < frontier.size(); ++j) {
            if (i != j && frontier[i].rate > frontier[j].rate * (1.0 + 1e-6) &&
                frontier[i].ee > frontier[j].ee * (1.0 + 1e-6)) {
                undominated = false;
            }
        }
    }

    // bisection bracket certificate at every frontier point
    bool brackets = true;
    for (const ParetoPoint& pt : frontier) {
        const double scale = std::max(pt.alpha * ctx.r_opt, (1.0 - pt.alpha) * ctx.ee_opt);
        bool lo_ok = false;
        bool hi_ok = false;
        for (double y : ctx.y_grid) {
            if (feasibility_test(inst.summary, inst.pm, inst.limits, y, pt.t - 1e-6 * scale,
                                 pt.alpha, ctx.r_opt, ctx.ee_opt)
                    .feasible) {
                lo_ok = true;
            }
            if (feasibility_test(inst.summary, inst.pm, inst.limits, y, pt.t + 1e-3 * scale,
                                 pt.alpha, ctx.r_opt, ctx.ee_opt)
                    .feasible) {
                hi_ok = true;
            }
        }
        if (!lo_ok || hi_ok) brackets = false;
    }

    out.pass = rate_gap <= 1e-3 && ee_gap <= 1e-3 && ordered && undominated && brackets;
    out.detail = "endpoint gaps " + format_double(rate_gap) + "/" + format_double(ee_gap) +
                 ", ordered=" + (ordered ? "yes" : "no") +
                 ", undominated=" + (undominated ? "yes" : "no") +
                 ", brackets=" + (brackets ? "yes" : "no");
    return out;
}

// ---------------------------------------------------------------- criterion 7
struct SweepMeans {
    // mean spectral efficiency per (scheme, N)
    std::map<std::pair<char, std::size_t>, double> se;
};

SweepMeans sweep_means(const ExperimentConfig& cfg) {
    const std::vector<ResultRow> rows = run_experiment(cfg);
    std::map<std::pair<char, std::size_t>, std::pair<double, std::size_t>> acc;
    for (const ResultRow& r : rows) {
        auto& slot = acc[{scheme_name(r.scheme)[0], r.n}];
        slot.first += r.se_bits_s_hz;  // failed trials contribute zero
        slot.second += 1;
    }
    SweepMeans means;
    for (const auto& [key, v] : acc) means.se[key] = v.first / static_cast<double>(v.second);
    return means;
}

Outcome figure_shapes() {
    Outcome out;
    ExperimentConfig base;
    base.objective = Objective::Rate;
    base.trials = 100;
    base.seed = 7000;

    // (i) single-antenna sweep: optimized schemes dominate and grow with N
    ExperimentConfig fig2 = base;
    fig2.n_t = 1;
    fig2.n_r = 1;
    fig2.params.t0 = 0.8e-6;
    fig2.n_list = {20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
    const SweepMeans m2 = sweep_means(fig2);
    bool dominate = true;
    bool growing = true;
    for (std::size_t n : fig2.n_list) {
        const double base_se = m2.se.at({'a', n});
        for (char s : {'b', 'c', 'd'}) {
            if (m2.se.at({s, n}) <= base_se) dominate = false;
        }
    }
    for (char s : {'b', 'c', 'd'}) {
        for (std::size_t i = 1; i < fig2.n_list.size(); ++i) {
            if (m2.se.at({s, fig2.n_list[i]}) <= m2.se.at({s, fig2.n_list[i - 1]})) growing = false;
        }
    }

    // (ii) 8x8 with sequential pilots: estimation swamps the slot at N = 200
    ExperimentConfig fig4 = base;
    fig4.n_t = 8;
    fig4.n_r = 8;
    fig4.params.t0 = 0.8e-6;
    fig4.protocol = PilotProtocol::SequentialPilots;
    fig4.n_list = {200};
    const SweepMeans m4 = sweep_means(fig4);
    bool baseline_wins = true;
    for (char s : {'b', 'c', 'd'}) {
        if (m4.se.at({s, 200}) >= m4.se.at({'a', 200})) baseline_wins = false;
    }

    // (iii) parallel pilots restore the advantage of optimization
    ExperimentConfig par = fig4;
    par.protocol = PilotProtocol::ParallelPilots;
    const SweepMeans mp = sweep_means(par);
    bool optimized_wins = true;
    for (char s : {'b', 'c', 'd'}) {
        if (mp.se.at({s, 200}) <= mp.se.at({'a', 200})) optimized_wins = false;
    }

    out.pass = dominate && growing && baseline_wins && optimized_wins;
    out.detail = std::string("fig2 dominance=") + (dominate ? "yes" : "no") +
                 " growth=" + (growing ? "yes" : "no") +
                 ", fig4 baseline-wins=" + (baseline_wins ? "yes" : "no") +
                 ", parallel optimized-wins=" + (optimized_wins ? "yes" : "no");
    return out;
}

// ---------------------------------------------------------------- criterion 8
Outcome determinism() {
    Outcome out;
    ExperimentConfig cfg;
    cfg.objective = Objective::Rate;
    cfg.schemes = {Scheme::IdentityPhases, Scheme::UpperBound, Scheme::Alternating};
    cfg.n_list = {20, 60};
    cfg.trials = 4;
    cfg.seed = 123456789;

    const auto render = [&](unsigned threads) {
        cfg.threads = threads;
        const std::vector<ResultRow> rows = run_experiment(cfg);
        std::string blob;
        for (const ResultRow& r : rows) {
            blob += scheme_name(r.scheme);
            blob += ',' + std::to_string(r.n) + ',' + std::to_string(r.trial) + ',';
            blob += format_double(r.value) + ',' + format_double(r.se_bits_s_hz) + ',';
            blob += format_double(r.p) + ',' + format_double(r.b) + ',' + r.status + '\n';
        }
        return blob;
    };

    const std::string once = render(1);
    const std::string again = render(1);
    const std::string pooled = render(3);
    out.pass = once == again && once == pooled;
    out.detail = std::string("rerun identical=") + (once == again ? "yes" : "no") +
                 ", worker-count independent=" + (once == pooled ? "yes" : "no");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    struct Criterion {
        int id;
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "rank-one optimality of the closed-form schemes", rank_one_optimality},
        {2, "no scheme beats the exhaustive phase grid", phase_oracle_dominance},
        {3, "rate solver matches the 400x400 grid and saturates budgets", rate_global_optimality},
        {4, "concavity/convexity certificates", convexity_certificates},
        {5, "EE solver certificates and grid oracle", ee_solver},
        {6, "Pareto frontier endpoints, ordering, brackets", pareto_frontier_checks},
        {7, "figure-shape orderings over 100 trials", figure_shapes},
        {8, "bit-identical reruns regardless of workers", determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!wanted.empty() && wanted.count(c.id) == 0) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %d %s: %s [%.1fs]\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                    outcome.detail.c_str(), elapsed_s(start));
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
