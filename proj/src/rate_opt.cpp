#include "risalloc/rate_opt.hpp"

#include <cmath>
#include <limits>

#include "risalloc/errors.hpp"
#include "risalloc/scalar_opt.hpp"

namespace risalloc {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kInf = std::numeric_limits<double>::infinity();

// d/dp of ln(g1(p, b)): c / ((b + p*c) * ln(1 + p*c/b))
double data_power_marginal(double p, double b, double c) {
    if (p <= 0.0) return kInf;
    const double x = p * c / b;
    return c / ((b + p * c) * std::log1p(x));
}

// -d/dp of ln(beta - d/psi(b_f, p_max - p)), expressed in p_f = p_max - p.
double fb_power_marginal(double p_f, double b_f, double a, double beta, double d) {
    if (p_f <= 0.0 || b_f <= 0.0) return kInf;
    const double m = a * p_f / b_f;
    const double l = std::log1p(m);
    const double margin = beta * b_f * (l / kLn2) - d;
    if (margin <= 0.0) return kInf;
    return d * a / ((b_f + a * p_f) * l * margin);
}

// d/dB of ln(g1(p, b)): (ln(1+x) - x/(1+x)) / (b*ln(1+x)), x = p*c/b
double data_bw_marginal(double b, double p, double c) {
    if (b <= 0.0) return kInf;
    const double x = p * c / b;
    const double l = std::log1p(x);
    if (l <= 0.0) return 0.0;
    return (l - x / (1.0 + x)) / (b * l);
}

double fb_bw_marginal(double b_f, double p_f, double a, double beta, double d) {
    if (b_f <= 0.0) return kInf;
    if (p_f <= 0.0) return kInf;
    const double m = a * p_f / b_f;
    const double l = std::log1p(m);
    const double margin = beta * b_f * (l / kLn2) - d;
    if (margin <= 0.0) return kInf;
    return d * (l - m / (1.0 + m)) / (margin * b_f * l);
}

RateResult pack_result(const OverheadSummary& summary, const ResourceLimits& limits,
                       ResourceAllocation alloc) {
    alloc.y = feedback_capacity(summary.a, alloc.p_f, alloc.b_f);
    RateResult r;
    r.alloc = alloc;
    r.rate = evaluate_rate(summary, alloc);
    r.spectral_efficiency = r.rate / limits.b_max;
    return r;
}

}  // namespace

double rate_kernel(double p, double b, double c) {
    if (b <= 0.0 || p <= 0.0 || c <= 0.0) return 0.0;
    return b * std::log1p(p * c / b) / kLn2;
}

double min_feedback_power(const OverheadSummary& summary, double b_f) {
    if (summary.d <= 0.0) return 0.0;
    if (b_f <= 0.0 || summary.beta <= 0.0 || summary.a <= 0.0) return kInf;
    return b_f / summary.a * std::expm1(summary.d / (b_f * summary.beta) * kLn2);
}

double evaluate_rate(const OverheadSummary& summary, const ResourceAllocation& alloc) {
    if (!(alloc.p >= 0.0) || !(alloc.p_f >= 0.0) || !(alloc.b >= 0.0) || !(alloc.b_f >= 0.0)) {
        throw InvalidInput("evaluate_rate: allocation must be nonnegative");
    }
    if (summary.feedback_enabled && summary.d > 0.0) {
        if (!feedback_constraint_ok(summary, alloc.p_f, alloc.b_f)) {
            throw Infeasible("evaluate_rate: feedback constraint violated");
        }
        const double cap = feedback_capacity(summary.a, alloc.p_f, alloc.b_f);
        const double factor = std::max(summary.beta - summary.d / cap, 0.0);
        return factor * rate_kernel(alloc.p, alloc.b, summary.c);
    }
    return summary.beta * rate_kernel(alloc.p, alloc.b, summary.c);
}

RateResult solve_power_fixed_bandwidth(const OverheadSummary& summary, const ResourceLimits& limits,
                                       double b, double b_f) {
    if (!(b >= 0.0) || !(b_f >= 0.0) || b + b_f > limits.b_max * (1.0 + 1e-9)) {
        throw InvalidInput("solve_power_fixed_bandwidth: bad bandwidth split");
    }
    if (summary.d <= 0.0 || !summary.feedback_enabled) {
        return pack_result(summary, limits, {limits.p_max, 0.0, b, b_f, 0.0});
    }

    const double p_floor = min_feedback_power(summary, b_f);
    const double p_hi = limits.p_max - p_floor;
    if (!(p_hi > 0.0)) {
        throw Infeasible("solve_power_fixed_bandwidth: feedback power floor exceeds the budget");
    }
    if (b <= 0.0 || summary.c <= 0.0) {
        return pack_result(summary, limits, {0.0, limits.p_max, b, b_f, 0.0});
    }

    const auto fprime = [&](double p) {
        return data_power_marginal(p, b, summary.c) -
               fb_power_marginal(limits.p_max - p, b_f, summary.a, summary.beta, summary.d);
    };
    const double lo = p_hi * 1e-12;
    const double hi = p_hi * (1.0 - 1e-12);
    double p_star;
    if (fprime(hi) >= 0.0) {
        p_star = p_hi;  // objective still climbing at the feasibility bound
    } else if (fprime(lo) <= 0.0) {
        p_star = lo;
    } else {
        p_star = bisect_root(fprime, lo, hi, 1e-10 * p_hi);
    }
    p_star = std::min(p_star, p_hi);
    return pack_result(summary, limits, {p_star, limits.p_max - p_star, b, b_f, 0.0});
}

double max_data_bandwidth(const OverheadSummary& summary, const ResourceLimits& limits,
                          double p_f) {
    if (summary.d <= 0.0) return limits.b_max;
    const double need = summary.d / summary.beta;
    const auto cap_gap = [&](double bb) {
        return feedback_capacity(summary.a, p_f, limits.b_max - bb) - need;
    };
    if (cap_gap(0.0) < 0.0) {
        throw Infeasible("max_data_bandwidth: feedback infeasible at full bandwidth");
    }
    if (cap_gap(0.0) == 0.0) return 0.0;
    return bisect_root(cap_gap, 0.0, limits.b_max * (1.0 - 1e-15), 1e-12 * limits.b_max);
}

RateResult solve_bandwidth_fixed_power(const OverheadSummary& summary, const ResourceLimits& limits,
                                       double p, double p_f) {
    if (!(p >= 0.0) || !(p_f >= 0.0) || p + p_f > limits.p_max * (1.0 + 1e-9)) {
        throw InvalidInput("solve_bandwidth_fixed_power: bad power split");
    }
    if (summary.d <= 0.0 || !summary.feedback_enabled) {
        return pack_result(summary, limits, {p, p_f, limits.b_max, 0.0, 0.0});
    }

    const double b_hat = max_data_bandwidth(summary, limits, p_f);
    if (b_hat <= 0.0 || p <= 0.0 || summary.c <= 0.0) {
        return pack_result(summary, limits, {p, p_f, 0.0, limits.b_max, 0.0});
    }

    const auto fprime = [&](double bb) {
        return data_bw_marginal(bb, p, summary.c) -
               fb_bw_marginal(limits.b_max - bb, p_f, summary.a, summary.beta, summary.d);
    };
    const double lo = b_hat * 1e-12;
    const double hi = b_hat * (1.0 - 1e-12);
    double b_star;
    if (fprime(hi) >= 0.0) {
        b_star = b_hat;
    } else if (fprime(lo) <= 0.0) {
        b_star = lo;
    } else {
        b_star = bisect_root(fprime, lo, hi, 1e-10 * b_hat);
    }
    b_star = std::min(b_star, b_hat);
    return pack_result(summary, limits, {p, p_f, b_star, limits.b_max - b_star, 0.0});
}

RateResult solve_rate(const OverheadSummary& summary, const ResourceLimits& limits) {
    if (summary.d <= 0.0 || !summary.feedback_enabled) {
        return pack_result(summary, limits, {limits.p_max, 0.0, limits.b_max, 0.0, 0.0});
    }
    const double need = summary.d / summary.beta;
    if (feedback_capacity(summary.a, limits.p_max, limits.b_max) < need) {
        throw Infeasible("solve_rate: phase payload does not fit even with all resources on feedback");
    }
    if (min_feedback_power(summary, limits.b_max) >= limits.p_max * (1.0 - 1e-9)) {
        // Feasible only at the boundary where no data can flow.
        return pack_result(summary, limits, {0.0, limits.p_max, 0.0, limits.b_max, 0.0});
    }

    const auto ascend = [&](double b_init) {
        double b = b_init;
        // shrink the data bandwidth until the power step has feasible room
        for (int k = 0; k < 200; ++k) {
            if (min_feedback_power(summary, limits.b_max - b) < limits.p_max * (1.0 - 1e-9)) break;
            b *= 0.5;
        }
        RateResult current{};
        double prev = -1.0;
        for (int it = 0; it < 300; ++it) {
            const RateResult rp = solve_power_fixed_bandwidth(summary, limits, b, limits.b_max - b);
            const RateResult rb =
                solve_bandwidth_fixed_power(summary, limits, rp.alloc.p, rp.alloc.p_f);
            b = rb.alloc.b;
            current = rb;
            if (std::abs(current.rate - prev) <= 1e-9 * std::max(current.rate, 1e-300)) break;
            prev = current.rate;
        }
        return current;
    };

    const RateResult r1 = ascend(0.5 * limits.b_max);
    const RateResult r2 = ascend(0.9 * limits.b_max);
    return (r2.rate > r1.rate) ? r2 : r1;
}

}  // namespace risalloc
