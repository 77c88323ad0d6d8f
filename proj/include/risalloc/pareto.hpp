#pragma once

#include <cstddef>
#include <vector>

#include "risalloc/ee_opt.hpp"
#include "risalloc/overhead.hpp"
#include "risalloc/rate_opt.hpp"

namespace risalloc {

/// One point of the rate-EE Pareto frontier obtained from the max-min
/// weighted-gap scalarization. `t` is the achieved min-gap value (<= 0).
struct ParetoPoint {
    double alpha = 0.5;
    ResourceAllocation alloc;
    double rate = 0.0;
    double ee = 0.0;
    double t = 0.0;
};

struct FeasibilityOutcome {
    bool feasible = false;
    double max_min_slack = 0.0;
    ResourceAllocation witness;
};

/// Precomputed anchors shared by every alpha of one instance. The y line
/// search covers the uniform grid of Algorithm-style points plus the feedback
/// capacities achieved by the rate- and EE-optimal allocations, so the
/// frontier endpoints can reproduce both single-objective optima.
struct TradeoffContext {
    OverheadSummary summary;
    PowerModel pm;
    ResourceLimits limits;
    double r_opt = 0.0;
    double ee_opt = 0.0;
    double rate_of_ee_opt = 0.0;  // rate at the EE-optimal allocation
    double ee_of_rate_opt = 0.0;  // EE at the rate-optimal allocation
    std::vector<double> y_grid;
    bool normalized = false;  // divide the gaps by (r_opt, ee_opt) when set
};

TradeoffContext make_tradeoff_context(const OverheadSummary& summary, const PowerModel& pm,
                                      const ResourceLimits& limits, std::size_t m_points,
                                      bool normalized = false);

/// Fixed-y epigraph feasibility test: is there an allocation whose weighted
/// rate gap and weighted EE gap both reach t? Solved as a max-min-slack
/// concave program over (p, b) with p_f pinned at the minimal power attaining
/// y_tilde; feasible when the best normalized slack is >= -1e-9.
FeasibilityOutcome feasibility_test(const OverheadSummary& summary, const PowerModel& pm,
                                    const ResourceLimits& limits, double y_tilde, double t,
                                    double alpha, double r_opt, double ee_opt,
                                    bool normalized = false);

/// Max-min trade-off point for one alpha: bisection over t in [L, 0] per grid
/// value of y, then the argmax of the achieved min gap across the grid.
ParetoPoint solve_tradeoff_at(const TradeoffContext& ctx, double alpha);

ParetoPoint solve_tradeoff(const OverheadSummary& summary, const PowerModel& pm,
                           const ResourceLimits& limits, double alpha, std::size_t m_points);

/// One point per alpha, sorted by rate ascending.
std::vector<ParetoPoint> pareto_frontier(const OverheadSummary& summary, const PowerModel& pm,
                                         const ResourceLimits& limits,
                                         const std::vector<double>& alpha_grid,
                                         std::size_t m_points);

}  // namespace risalloc
