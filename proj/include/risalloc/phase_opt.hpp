#pragma once

#include <cstddef>
#include <vector>

#include "risalloc/channel.hpp"
#include "risalloc/complex_matrix.hpp"

namespace risalloc {

/// Surface phase configuration with matched transmit/receive vectors.
/// `objective` holds the achieved end-to-end gain |w^H G Phi H q|^2.
struct PhaseSolution {
    std::vector<double> phases;  // n_ris angles in [0, 2*pi)
    std::vector<cplx> q;         // unit transmit beamformer, length n_t
    std::vector<cplx> w;         // unit receive combiner, length n_r
    double objective = 0.0;
};

enum class Scheme {
    IdentityPhases,  // (a) surface reflects without phase manipulation
    UpperBound,      // (b) closed-form maximizer of the gain upper bound
    LowerBound,      // (c) closed-form maximizer of the gain lower bound
    Alternating,     // (d) alternating maximization benchmark
};

const char* scheme_name(Scheme s);

inline constexpr double kAlternatingDefaultTol = 1e-8;
inline constexpr std::size_t kAlternatingDefaultMaxIters = 500;

/// e^{j*phase} for each entry.
std::vector<cplx> unit_phasors(const std::vector<double>& phases);

/// |w^H G Phi H q|^2 with Phi = diag(e^{j phi_n}).
double evaluate_gain(const ChannelRealization& ch, const PhaseSolution& sol);

/// All-zero phases; (q, w) from the dominant singular pair of G*H.
PhaseSolution solve_identity(const ChannelRealization& ch);

/// Closed-form allocation maximizing the SVD-based upper bound on the gain.
/// The returned objective is the achieved gain, not the bound.
PhaseSolution solve_upper_bound(const ChannelRealization& ch);

/// Closed-form allocation from the dominant singular pair of sum_n g_n h_n^T
/// followed by exact phase alignment.
PhaseSolution solve_lower_bound(const ChannelRealization& ch);

/// Alternating maximization over (phases) and (q, w), warm-started from
/// solve_lower_bound. `trace`, when given, receives the objective after each
/// iteration (a nondecreasing sequence).
PhaseSolution solve_alternating(const ChannelRealization& ch,
                                std::size_t max_iters = kAlternatingDefaultMaxIters,
                                double tol = kAlternatingDefaultTol,
                                std::vector<double>* trace = nullptr);

/// Best configuration over the uniform grid phi_n in {2*pi*k/levels}. Each
/// grid point is scored with its optimal (q, w). The joint enumeration is
/// capped at 1e7 grid points; single-antenna links use an exact reduction
/// that returns the same grid optimum without enumerating.
PhaseSolution brute_force_phases(const ChannelRealization& ch, std::size_t levels);

PhaseSolution solve_scheme(const ChannelRealization& ch, Scheme scheme);

}  // namespace risalloc
