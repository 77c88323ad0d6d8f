#include "risalloc/overhead.hpp"

#include <cmath>

#include "risalloc/errors.hpp"

namespace risalloc {

void SystemParams::validate() const {
    const double fields[] = {p_max, b_max, n0, mu, mu_f, b_f, t_slot, t0, p0, p_c0, p_cn};
    for (double v : fields) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidInput("SystemParams: all constants must be positive and finite");
        }
    }
    if (!(t0 < t_slot)) throw InvalidInput("SystemParams: pilot duration must be below the slot");
}

const char* protocol_name(PilotProtocol p) {
    return p == PilotProtocol::SequentialPilots ? "sequential" : "parallel";
}

EstimationCost estimation_cost(PilotProtocol proto, const Scenario& s, const SystemParams& params,
                               bool feedback_enabled) {
    s.validate();
    params.validate();
    const double n = static_cast<double>(s.n_ris);
    const double nt = static_cast<double>(s.n_t);
    const double nr = static_cast<double>(s.n_r);

    EstimationCost cost;
    if (!feedback_enabled) {
        // Only the composite n_r x n_t link is estimated.
        cost.t_e = nt * nr * params.t0;
        cost.p_e = nt * nr * params.p0 * params.t0 / params.t_slot;
    } else if (proto == PilotProtocol::SequentialPilots) {
        cost.t_e = (nt * n * nr + 1.0) * params.t0;
        cost.p_e = params.p0 * (1.0 + n * nt * nr) * params.t0 / params.t_slot;
    } else {
        cost.t_e = (n + 1.0) * params.t0;
        cost.p_e = (n * nr + 1.0) * params.p0 * params.t0 / params.t_slot;
    }
    if (cost.t_e >= params.t_slot) {
        throw OverheadExceedsSlot("estimation_cost: channel estimation does not fit into the slot");
    }
    return cost;
}

double feedback_capacity(double a, double p_f, double b_f_bw) {
    if (b_f_bw <= 0.0 || p_f <= 0.0 || a <= 0.0) return 0.0;
    return b_f_bw * std::log2(1.0 + a * p_f / b_f_bw);
}

double feedback_time(const SystemParams& params, const OverheadSummary& summary, double p_f,
                     double b_f_bw) {
    if (!summary.feedback_enabled) return 0.0;
    const double cap = feedback_capacity(summary.a, p_f, b_f_bw);
    if (cap <= 0.0) throw Infeasible("feedback_time: zero-capacity feedback link");
    const double payload = params.b_f * static_cast<double>(summary.n_ris);
    return payload / cap;
}

bool feedback_constraint_ok(const OverheadSummary& summary, double p_f, double b_f_bw) {
    if (!summary.feedback_enabled || summary.d <= 0.0) return true;
    const double cap = feedback_capacity(summary.a, p_f, b_f_bw);
    if (cap <= 0.0) return false;
    // closed constraint; the slack absorbs the round trip through the
    // capacity inverse at the boundary
    return summary.d <= summary.beta * cap * (1.0 + 1e-12);
}

double total_power(const SystemParams& params, const OverheadSummary& summary,
                   const ResourceAllocation& alloc) {
    const double static_power =
        static_cast<double>(summary.n_ris) * params.p_cn + params.p_c0;
    const double data_term = params.mu * alloc.p * summary.beta;
    if (!summary.feedback_enabled || summary.d <= 0.0) {
        return summary.p_e + data_term + static_power;
    }
    if (alloc.p == 0.0 && alloc.p_f == 0.0) {
        // nothing is transmitted in either phase
        return summary.p_e + static_power;
    }
    if (!feedback_constraint_ok(summary, alloc.p_f, alloc.b_f)) {
        throw Infeasible("total_power: estimation plus feedback exceeds the slot");
    }
    const double cap = feedback_capacity(summary.a, alloc.p_f, alloc.b_f);
    const double feedback_term =
        summary.d * (params.mu_f * alloc.p_f - params.mu * alloc.p) / cap;
    return summary.p_e + feedback_term + data_term + static_power;
}

OverheadSummary make_summary(const Scenario& s, const SystemParams& params, PilotProtocol proto,
                             bool feedback_enabled, double gain, cplx h_f) {
    const EstimationCost cost = estimation_cost(proto, s, params, feedback_enabled);
    OverheadSummary summary;
    summary.t_e = cost.t_e;
    summary.p_e = cost.p_e;
    summary.beta = 1.0 - cost.t_e / params.t_slot;
    summary.feedback_enabled = feedback_enabled;
    summary.n_ris = s.n_ris;
    summary.d = feedback_enabled
                    ? params.b_f * static_cast<double>(s.n_ris) / params.t_slot
                    : 0.0;
    summary.a = std::norm(h_f) / params.n0;
    summary.c = gain / params.n0;
    return summary;
}

ResourceLimits limits_from(const SystemParams& params) { return {params.p_max, params.b_max}; }

PowerModel power_model_from(const SystemParams& params, const OverheadSummary& summary) {
    PowerModel pm;
    pm.mu = params.mu;
    pm.mu_f = params.mu_f;
    pm.p_c = static_cast<double>(summary.n_ris) * params.p_cn + params.p_c0 + summary.p_e;
    return pm;
}

}  // namespace risalloc
