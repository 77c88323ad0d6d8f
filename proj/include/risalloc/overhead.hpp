#pragma once

#include <complex>
#include <cstddef>

#include "risalloc/channel.hpp"

namespace risalloc {

/// Static system constants. All quantities are SI (W, Hz, s, bits); dBm/MHz
/// conversions happen at the CLI boundary only.
struct SystemParams {
    double p_max = 31.6227766016837933;  // 45 dBm
    double b_max = 100e6;                // Hz
    double n0 = 3.9810717055349565e-21;  // -174 dBm/Hz
    double mu = 1.0;                     // data amplifier inefficiency
    double mu_f = 1.0;                   // feedback amplifier inefficiency
    double b_f = 16.0;                   // feedback bits per reflecting element
    double t_slot = 4e-3;                // s
    double t0 = 0.8e-6;                  // pilot duration, s
    double p0 = 2.5e-3;                  // pilot power, W
    double p_c0 = 31.6227766016837933;   // static power, 45 dBm
    double p_cn = 0.01;                  // per-element static power, 10 dBm

    void validate() const;
};

enum class PilotProtocol {
    SequentialPilots,  // one pilot per product channel
    ParallelPilots,    // receive antennas pilot simultaneously
};

const char* protocol_name(PilotProtocol p);

/// Per-instance derived constants feeding the power/bandwidth solvers.
struct OverheadSummary {
    double t_e = 0.0;   // estimation time, s
    double p_e = 0.0;   // estimation power averaged over the slot, W
    double beta = 1.0;  // 1 - t_e/t_slot
    double d = 0.0;     // feedback payload rate b_f*N/t_slot, bits/s (0 when feedback is off)
    double a = 0.0;     // |h_f|^2 / n0
    double c = 0.0;     // |w^H G Phi H q|^2 / n0
    bool feedback_enabled = true;
    std::size_t n_ris = 0;
};

struct EstimationCost {
    double t_e = 0.0;
    double p_e = 0.0;
};

/// Box constraints shared by every allocation problem.
struct ResourceLimits {
    double p_max = 0.0;
    double b_max = 0.0;
};

/// Constant part of the energy-efficiency denominator:
/// p_c = N*p_cn + p_c0 + p_e.
struct PowerModel {
    double mu = 1.0;
    double mu_f = 1.0;
    double p_c = 0.0;
};

/// Time and slot-averaged power spent estimating channels before feedback and
/// data. Without feedback only the composite link is estimated.
/// Throws OverheadExceedsSlot when t_e >= t_slot.
EstimationCost estimation_cost(PilotProtocol proto, const Scenario& s, const SystemParams& params,
                               bool feedback_enabled);

/// Capacity of the feedback link: b_f_bw * log2(1 + a*p_f/b_f_bw), bits/s.
double feedback_capacity(double a, double p_f, double b_f_bw);

/// Time to push the N*b_f phase-configuration bits through the feedback link.
double feedback_time(const SystemParams& params, const OverheadSummary& summary, double p_f,
                     double b_f_bw);

/// d / (b_f_bw*log2(1 + a*p_f/b_f_bw)) <= beta, equivalently t_e + t_f <= t_slot.
bool feedback_constraint_ok(const OverheadSummary& summary, double p_f, double b_f_bw);

struct ResourceAllocation {
    double p = 0.0;    // data power, W
    double p_f = 0.0;  // feedback power, W
    double b = 0.0;    // data bandwidth, Hz
    double b_f = 0.0;  // feedback bandwidth, Hz
    double y = 0.0;    // feedback capacity at (p_f, b_f), bits/s
};

/// Total consumed power over the slot for a feasible allocation.
double total_power(const SystemParams& params, const OverheadSummary& summary,
                   const ResourceAllocation& alloc);

/// Bundles estimation cost and the scalar solver constants for one instance.
OverheadSummary make_summary(const Scenario& s, const SystemParams& params, PilotProtocol proto,
                             bool feedback_enabled, double gain, cplx h_f);

ResourceLimits limits_from(const SystemParams& params);
PowerModel power_model_from(const SystemParams& params, const OverheadSummary& summary);

}  // namespace risalloc
