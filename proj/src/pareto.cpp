#include "risalloc/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risalloc/errors.hpp"
#include "risalloc/scalar_opt.hpp"

namespace risalloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlackFeasible = -1e-9;

struct GapProblem {
    const OverheadSummary& summary;
    const PowerModel& pm;
    const ResourceLimits& limits;
    double y_tilde;
    double k_factor;   // beta - d/y_tilde
    double fb_weight;  // d/y_tilde
    double b_cap = 0.0;

    double p_f_min(double b) const {
        return min_power_for_capacity(summary, limits, b, y_tilde);
    }
    double rate_at(double p, double b) const { return k_factor * rate_kernel(p, b, summary.c); }
    double power_at(double p, double b) const {
        double den = pm.mu * k_factor * p + pm.p_c;
        if (summary.d > 0.0) den += fb_weight * pm.mu_f * p_f_min(b);
        return den;
    }
};

GapProblem make_gap_problem(const OverheadSummary& summary, const PowerModel& pm,
                            const ResourceLimits& limits, double y_tilde) {
    GapProblem prob{summary, pm, limits, y_tilde, summary.beta, 0.0};
    if (summary.d > 0.0 && summary.feedback_enabled) {
        prob.k_factor = std::max(summary.beta - summary.d / y_tilde, 0.0);
        prob.fb_weight = summary.d / y_tilde;
        if (prob.p_f_min(0.0) > limits.p_max * (1.0 + 1e-12)) {
            prob.b_cap = -1.0;  // y_tilde unattainable
        } else if (prob.p_f_min(limits.b_max * (1.0 - 1e-15)) <= limits.p_max) {
            prob.b_cap = limits.b_max * (1.0 - 1e-15);
        } else {
            prob.b_cap = bisect_root(
                [&](double b) { return prob.p_f_min(b) - limits.p_max; }, 0.0,
                limits.b_max * (1.0 - 1e-15), 1e-12 * limits.b_max);
        }
    } else {
        prob.b_cap = limits.b_max;
    }
    return prob;
}

}  // namespace

FeasibilityOutcome feasibility_test(const OverheadSummary& summary, const PowerModel& pm,
                                    const ResourceLimits& limits, double y_tilde, double t,
                                    double alpha, double r_opt, double ee_opt, bool normalized) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw InvalidInput("feasibility_test: alpha outside (0,1)");
    const GapProblem prob = make_gap_problem(summary, pm, limits, y_tilde);
    FeasibilityOutcome out;
    if (prob.b_cap < 0.0) {
        out.max_min_slack = -kInf;
        return out;
    }

    const double rate_unit = normalized ? std::max(r_opt, 1e-300) : 1.0;
    const double ee_unit = normalized ? std::max(ee_opt, 1e-300) : 1.0;
    // alpha*(R - r_opt)/rate_unit >= t  <=>  R >= r_req
    const double r_req = t / alpha * rate_unit + r_opt;
    // (1-alpha)*(EE - ee_opt)/ee_unit >= t  <=>  R >= m_ee * P_tot
    const double m_ee = t / (1.0 - alpha) * ee_unit + ee_opt;

    const double r_scale = std::max(r_opt, 1e-300);
    const double e_scale = std::max(ee_opt * pm.p_c, 1e-300);

    const auto slack = [&](double p, double b) {
        const double r = prob.rate_at(p, b);
        double s = (r - r_req) / r_scale;
        if (m_ee > 0.0) {
            s = std::min(s, (r - m_ee * prob.power_at(p, b)) / e_scale);
        }
        return s;
    };
    const auto best_over_p = [&](double b) {
        const double p_hi = prob.limits.p_max - prob.p_f_min(b);
        if (p_hi < 0.0) return std::pair<double, double>{0.0, -kInf};
        return golden_maximize([&](double p) { return slack(p, b); }, 0.0, std::max(p_hi, 0.0),
                               1e-11 * std::max(p_hi, 1e-12));
    };
    const auto [b_star, s_star] = golden_maximize(
        [&](double b) { return best_over_p(b).second; }, 0.0, prob.b_cap,
        1e-11 * std::max(prob.b_cap, 1e-12));
    const auto [p_star, s_best] = best_over_p(b_star);

    out.max_min_slack = s_best;
    out.feasible = s_best >= kSlackFeasible;
    if (out.feasible) {
        out.witness.p = p_star;
        out.witness.b = b_star;
        out.witness.b_f = limits.b_max - b_star;
        out.witness.p_f = (summary.d > 0.0) ? prob.p_f_min(b_star) : 0.0;
        out.witness.y = (summary.d > 0.0) ? y_tilde : 0.0;
    }
    return out;
}

TradeoffContext make_tradeoff_context(const OverheadSummary& summary, const PowerModel& pm,
                                      const ResourceLimits& limits, std::size_t m_points,
                                      bool normalized) {
    TradeoffContext ctx;
    ctx.summary = summary;
    ctx.pm = pm;
    ctx.limits = limits;
    ctx.normalized = normalized;

    const RateResult rate_best = solve_rate(summary, limits);
    const EEResult ee_best = solve_ee(summary, pm, limits, std::max<std::size_t>(m_points, 2));
    ctx.r_opt = rate_best.rate;
    ctx.ee_opt = ee_best.ee;
    ctx.rate_of_ee_opt = ee_best.rate;
    ctx.ee_of_rate_opt = evaluate_ee(summary, pm, rate_best.alloc);

    if (summary.d > 0.0 && summary.feedback_enabled) {
        const double y_lo = summary.d / summary.beta;
        const double y_hi = feedback_capacity(summary.a, limits.p_max, limits.b_max);
        const double delta = (y_hi - y_lo) / static_cast<double>(m_points);
        for (std::size_t m = 1; m <= m_points; ++m) {
            ctx.y_grid.push_back(y_lo + static_cast<double>(m - 1) * delta);
        }
        // Make both single-objective optima reachable from the line search.
        ctx.y_grid.push_back(rate_best.alloc.y);
        ctx.y_grid.push_back(ee_best.alloc.y);
        std::sort(ctx.y_grid.begin(), ctx.y_grid.end());
        ctx.y_grid.erase(std::unique(ctx.y_grid.begin(), ctx.y_grid.end()), ctx.y_grid.end());
        // The EE anchor must be attainable on this grid: the extra point at
        // the rate optimum's capacity may carry a better EE than the uniform
        // line search saw.
        const EEResult at_rate_y =
            solve_ee_fixed_y(summary, pm, limits, rate_best.alloc.y);
        ctx.ee_opt = std::max(ctx.ee_opt, at_rate_y.ee);
    } else {
        ctx.y_grid.push_back(0.0);
    }
    return ctx;
}

ParetoPoint solve_tradeoff_at(const TradeoffContext& ctx, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw InvalidInput("solve_tradeoff: alpha outside (0,1)");
    const double rate_unit = ctx.normalized ? std::max(ctx.r_opt, 1e-300) : 1.0;
    const double ee_unit = ctx.normalized ? std::max(ctx.ee_opt, 1e-300) : 1.0;
    const double lower =
        -std::max(alpha * ctx.r_opt / rate_unit, (1.0 - alpha) * ctx.ee_opt / ee_unit);
    if (!(lower < 0.0)) throw Infeasible("solve_tradeoff: degenerate anchors");
    const double eps = 1e-6 * std::abs(lower);

    bool have = false;
    double best_f = -kInf;
    ParetoPoint best;
    for (double y_tilde : ctx.y_grid) {
        const auto test = [&](double t) {
            return feasibility_test(ctx.summary, ctx.pm, ctx.limits, y_tilde, t, alpha, ctx.r_opt,
                                    ctx.ee_opt, ctx.normalized);
        };
        FeasibilityOutcome witness_holder;
        const FeasibilityOutcome at_zero = test(0.0);
        if (at_zero.feasible) {
            witness_holder = at_zero;  // rate and EE share a maximizer
        } else {
            FeasibilityOutcome at_lower = test(lower);
            if (!at_lower.feasible) continue;
            double lo = lower, hi = 0.0;
            witness_holder = at_lower;
            while (hi - lo > eps) {
                const double mid = 0.5 * (lo + hi);
                const FeasibilityOutcome mid_out = test(mid);
                if (mid_out.feasible) {
                    lo = mid;
                    witness_holder = mid_out;
                } else {
                    hi = mid;
                }
            }
        }
        const ResourceAllocation& w = witness_holder.witness;
        const double rate_w = evaluate_rate(ctx.summary, w);
        const double ee_w = evaluate_ee(ctx.summary, ctx.pm, w);
        const double f = std::min(alpha * (rate_w - ctx.r_opt) / rate_unit,
                                  (1.0 - alpha) * (ee_w - ctx.ee_opt) / ee_unit);
        if (!have || f > best_f) {
            have = true;
            best_f = f;
            best.alloc = w;
            best.rate = rate_w;
            best.ee = ee_w;
        }
    }
    if (!have) throw Infeasible("solve_tradeoff: no feasible line-search point");
    best.alpha = alpha;
    best.t = best_f;
    return best;
}

ParetoPoint solve_tradeoff(const OverheadSummary& summary, const PowerModel& pm,
                           const ResourceLimits& limits, double alpha, std::size_t m_points) {
    const TradeoffContext ctx = make_tradeoff_context(summary, pm, limits, m_points);
    return solve_tradeoff_at(ctx, alpha);
}

std::vector<ParetoPoint> pareto_frontier(const OverheadSummary& summary, const PowerModel& pm,
                                         const ResourceLimits& limits,
                                         const std::vector<double>& alpha_grid,
                                         std::size_t m_points) {
    if (alpha_grid.empty()) throw InvalidInput("pareto_frontier: empty alpha grid");
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        if (!(alpha_grid[i] > 0.0) || !(alpha_grid[i] < 1.0)) {
            throw InvalidInput("pareto_frontier: alphas must lie strictly in (0,1)");
        }
        if (i > 0 && !(alpha_grid[i] > alpha_grid[i - 1])) {
            throw InvalidInput("pareto_frontier: alphas must be strictly increasing");
        }
    }
    const TradeoffContext ctx = make_tradeoff_context(summary, pm, limits, m_points);
    std::vector<ParetoPoint> points;
    points.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) points.push_back(solve_tradeoff_at(ctx, alpha));
    std::stable_sort(points.begin(), points.end(),
                     [](const ParetoPoint& a, const ParetoPoint& b) { return a.rate < b.rate; });
    return points;
}

}  // namespace risalloc
