#pragma once

#include <cstddef>
#include <vector>

#include "risalloc/overhead.hpp"

namespace risalloc {

struct EEResult {
    ResourceAllocation alloc;
    double ee = 0.0;     // bits/Joule
    double rate = 0.0;   // bits/s
    double p_tot = 0.0;  // W
};

inline constexpr std::size_t kEeDefaultLinePoints = 200;

/// Energy efficiency of an allocation:
///   (beta - d/y) * b*log2(1 + p*c/b)
///   -----------------------------------------------
///   beta*mu*p + p_c + (d/y)*(mu_f*p_f - mu*p)
/// with y = alloc.y; the feedback terms vanish when feedback is off.
double evaluate_ee(const OverheadSummary& summary, const PowerModel& pm,
                   const ResourceAllocation& alloc);

/// Pseudo-concave subproblem at a fixed feedback capacity y_tilde, solved by
/// Dinkelbach iterations. The feedback power is pinned at the minimal value
/// attaining y_tilde (the denominator grows with p_f while the numerator
/// ignores it), leaving a 2-D concave inner problem over (p, b).
/// `lambda_trace`, when given, receives the nondecreasing Dinkelbach ratios.
EEResult solve_ee_fixed_y(const OverheadSummary& summary, const PowerModel& pm,
                          const ResourceLimits& limits, double y_tilde,
                          std::vector<double>* lambda_trace = nullptr);

/// Global EE maximum: uniform line search of m_points values of y over
/// [d/beta, y_max] with one fixed-y solve per point.
EEResult solve_ee(const OverheadSummary& summary, const PowerModel& pm,
                  const ResourceLimits& limits, std::size_t m_points = kEeDefaultLinePoints);

/// Minimal feedback power so that (b_max - b, p_f) attains capacity y_tilde.
double min_power_for_capacity(const OverheadSummary& summary, const ResourceLimits& limits,
                              double b, double y_tilde);

}  // namespace risalloc
