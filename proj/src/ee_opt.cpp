#include "risalloc/ee_opt.hpp"

#include <cmath>
#include <limits>

#include "risalloc/errors.hpp"
#include "risalloc/rate_opt.hpp"
#include "risalloc/scalar_opt.hpp"

namespace risalloc {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kInf = std::numeric_limits<double>::infinity();

double p_f_min_impl(const OverheadSummary& summary, const ResourceLimits& limits, double b,
                    double y_tilde) {
    if (summary.d <= 0.0) return 0.0;
    const double b_f = limits.b_max - b;
    if (b_f <= 0.0) return kInf;
    const double x = y_tilde / b_f;
    const double e = std::expm1(x * kLn2);  // 2^x - 1
    return b_f * e / summary.a;
}

struct FixedYProblem {
    const OverheadSummary& summary;
    const PowerModel& pm;
    const ResourceLimits& limits;
    double y_tilde;      // 0 when feedback is off
    double k_factor;     // beta - d/y_tilde
    double fb_weight;    // d/y_tilde
    double b_cap = 0.0;  // largest data bandwidth with attainable y_tilde

    double p_f_min(double b) const { return p_f_min_impl(summary, limits, b, y_tilde); }

    double denominator(double p, double b) const {
        // beta*mu*p + p_c + (d/y)*(mu_f*p_f_min(b) - mu*p)
        //   = mu*k_factor*p + p_c + (d/y)*mu_f*p_f_min(b)
        double den = pm.mu * k_factor * p + pm.p_c;
        if (summary.d > 0.0) den += fb_weight * pm.mu_f * p_f_min(b);
        return den;
    }

    double numerator(double p, double b) const { return k_factor * rate_kernel(p, b, summary.c); }
};

FixedYProblem make_problem(const OverheadSummary& summary, const PowerModel& pm,
                           const ResourceLimits& limits, double y_tilde) {
    FixedYProblem prob{summary, pm, limits, y_tilde, summary.beta, 0.0};
    if (summary.d > 0.0 && summary.feedback_enabled) {
        const double y_lo = summary.d / summary.beta;
        const double y_hi = feedback_capacity(summary.a, limits.p_max, limits.b_max);
        if (!(y_tilde >= y_lo * (1.0 - 1e-12)) || !(y_tilde <= y_hi * (1.0 + 1e-12))) {
            throw InvalidInput("solve_ee_fixed_y: y_tilde outside the attainable interval");
        }
        prob.k_factor = std::max(summary.beta - summary.d / y_tilde, 0.0);
        prob.fb_weight = summary.d / y_tilde;
        if (prob.p_f_min(0.0) > limits.p_max * (1.0 + 1e-12)) {
            throw Infeasible("solve_ee_fixed_y: y_tilde unattainable within the power budget");
        }
        if (prob.p_f_min(limits.b_max * (1.0 - 1e-15)) <= limits.p_max) {
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

struct InnerPoint {
    double p = 0.0;
    double b = 0.0;
    double value = -kInf;
};

// argmax of numerator - lambda*denominator over the convex feasible set.
InnerPoint maximize_parametric(const FixedYProblem& prob, double lambda) {
    const auto value_at = [&](double b) {
        const double p_hi = prob.limits.p_max - prob.p_f_min(b);
        if (p_hi < 0.0) return InnerPoint{0.0, b, -kInf};
        const auto along_p = [&](double p) {
            return prob.numerator(p, b) - lambda * prob.denominator(p, b);
        };
        const auto [p, v] = golden_maximize(along_p, 0.0, std::max(p_hi, 0.0),
                                            1e-11 * std::max(p_hi, 1e-12));
        return InnerPoint{p, b, v};
    };
    const auto [b, v] = golden_maximize([&](double b) { return value_at(b).value; }, 0.0,
                                        prob.b_cap, 1e-11 * std::max(prob.b_cap, 1e-12));
    InnerPoint best = value_at(b);
    return best;
}

EEResult pack(const FixedYProblem& prob, double p, double b) {
    ResourceAllocation alloc;
    alloc.p = p;
    alloc.b = b;
    alloc.b_f = prob.limits.b_max - b;
    alloc.p_f = (prob.summary.d > 0.0) ? prob.p_f_min(b) : 0.0;
    alloc.y = (prob.summary.d > 0.0) ? prob.y_tilde : 0.0;

    EEResult res;
    res.alloc = alloc;
    const double num = prob.numerator(p, b);
    const double den = prob.denominator(p, b);
    res.rate = num;
    res.p_tot = den;
    res.ee = (den > 0.0) ? num / den : 0.0;
    return res;
}

}  // namespace

double min_power_for_capacity(const OverheadSummary& summary, const ResourceLimits& limits,
                              double b, double y_tilde) {
    return p_f_min_impl(summary, limits, b, y_tilde);
}

double evaluate_ee(const OverheadSummary& summary, const PowerModel& pm,
                   const ResourceAllocation& alloc) {
    if (!(alloc.p >= 0.0) || !(alloc.p_f >= 0.0) || !(alloc.b >= 0.0) || !(alloc.b_f >= 0.0)) {
        throw InvalidInput("evaluate_ee: allocation must be nonnegative");
    }
    if (summary.d > 0.0 && summary.feedback_enabled) {
        const double y = alloc.y;
        if (!(y >= summary.d / summary.beta * (1.0 - 1e-9))) {
            throw Infeasible("evaluate_ee: y below d/beta");
        }
        const double attainable = feedback_capacity(summary.a, alloc.p_f, alloc.b_f);
        if (y > attainable * (1.0 + 1e-9)) {
            throw Infeasible("evaluate_ee: y exceeds the feedback capacity of (p_f, b_f)");
        }
        const double num = (summary.beta - summary.d / y) * rate_kernel(alloc.p, alloc.b, summary.c);
        const double den = summary.beta * pm.mu * alloc.p + pm.p_c +
                           summary.d / y * (pm.mu_f * alloc.p_f - pm.mu * alloc.p);
        if (!(den > 0.0)) throw Infeasible("evaluate_ee: nonpositive power");
        return num / den;
    }
    const double num = summary.beta * rate_kernel(alloc.p, alloc.b, summary.c);
    const double den = summary.beta * pm.mu * alloc.p + pm.p_c;
    return num / den;
}

EEResult solve_ee_fixed_y(const OverheadSummary& summary, const PowerModel& pm,
                          const ResourceLimits& limits, double y_tilde,
                          std::vector<double>* lambda_trace) {
    const FixedYProblem prob = make_problem(summary, pm, limits, y_tilde);
    if (lambda_trace != nullptr) lambda_trace->clear();
    if (prob.k_factor <= 0.0 || summary.c <= 0.0) {
        return pack(prob, 0.0, 0.0);  // zero numerator everywhere
    }

    double lambda = 0.0;
    InnerPoint pt;
    for (int it = 0; it < 50; ++it) {
        pt = maximize_parametric(prob, lambda);
        const double num = prob.numerator(pt.p, pt.b);
        const double den = prob.denominator(pt.p, pt.b);
        const double excess = num - lambda * den;
        if (lambda_trace != nullptr) lambda_trace->push_back(num / den);
        if (std::abs(excess) <= 1e-10 * std::max(num, pm.p_c * std::max(lambda, 1.0))) break;
        lambda = num / den;
    }
    return pack(prob, pt.p, pt.b);
}

EEResult solve_ee(const OverheadSummary& summary, const PowerModel& pm,
                  const ResourceLimits& limits, std::size_t m_points) {
    if (m_points < 2) throw InvalidInput("solve_ee: m_points must be >= 2");
    if (summary.d <= 0.0 || !summary.feedback_enabled) {
        return solve_ee_fixed_y(summary, pm, limits, 0.0);
    }
    const double y_lo = summary.d / summary.beta;
    const double y_hi = feedback_capacity(summary.a, limits.p_max, limits.b_max);
    if (y_hi < y_lo) throw Infeasible("solve_ee: feedback infeasible with all resources");

    const double delta = (y_hi - y_lo) / static_cast<double>(m_points);
    bool have = false;
    EEResult best;
    for (std::size_t m = 1; m <= m_points; ++m) {
        const double y_tilde = y_lo + static_cast<double>(m - 1) * delta;
        const EEResult r = solve_ee_fixed_y(summary, pm, limits, y_tilde);
        if (!have || r.ee > best.ee) {
            best = r;
            have = true;
        }
    }
    if (!have) throw Infeasible("solve_ee: no feasible line-search point");
    return best;
}

}  // namespace risalloc
