#pragma once

#include "risalloc/overhead.hpp"

namespace risalloc {

struct RateResult {
    ResourceAllocation alloc;
    double rate = 0.0;                  // bits/s
    double spectral_efficiency = 0.0;   // bits/s/Hz, rate / b_max
};

/// Overhead-aware achievable rate
///   (beta - d / (b_f*log2(1 + a*p_f/b_f))) * b*log2(1 + p*c/b)
/// with the continuous extension 0 at b = 0.
double evaluate_rate(const OverheadSummary& summary, const ResourceAllocation& alloc);

/// Optimal (p, p_f = p_max - p) for a fixed bandwidth split: the unique
/// stationary point of the concave log-objective, clipped to the feedback
/// feasibility bound.
RateResult solve_power_fixed_bandwidth(const OverheadSummary& summary, const ResourceLimits& limits,
                                       double b, double b_f);

/// Optimal (b, b_f = b_max - b) for fixed powers.
RateResult solve_bandwidth_fixed_power(const OverheadSummary& summary, const ResourceLimits& limits,
                                       double p, double p_f);

/// Global rate maximum over (p, p_f, b, b_f): coordinate ascent alternating
/// the two fixed-split solvers from two starting splits. Both sum constraints
/// are saturated at the optimum.
RateResult solve_rate(const OverheadSummary& summary, const ResourceLimits& limits);

/// b*log2(1 + p*c/b), extended with 0 at b = 0.
double rate_kernel(double p, double b, double c);

/// Minimal feedback power sustaining the phase payload with bandwidth b_f:
/// (b_f/a)*(2^(d/(b_f*beta)) - 1).
double min_feedback_power(const OverheadSummary& summary, double b_f);

/// Largest data bandwidth b so that the remaining b_max - b still carries the
/// phase payload at power p_f: the unique root of
/// (b_max - b)*log2(1 + a*p_f/(b_max - b)) = d/beta.
double max_data_bandwidth(const OverheadSummary& summary, const ResourceLimits& limits, double p_f);

}  // namespace risalloc
