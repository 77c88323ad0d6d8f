#pragma once

#include <cstdint>

#include "risalloc/complex_matrix.hpp"

namespace risalloc {

/// Link dimensions and large-scale propagation constants for one experiment.
struct Scenario {
    std::size_t n_t = 1;       // transmit antennas
    std::size_t n_r = 1;       // receive antennas
    std::size_t n_ris = 1;     // reflecting elements
    double pathloss_db = 110.0;
    double fb_pathloss_db = 110.0;  // feedback link path loss (defaults to pathloss_db)
    std::uint64_t seed = 0;

    void validate() const;
};

/// One fading draw: transmitter->surface, surface->receiver, and the scalar
/// feedback link used to configure the surface.
struct ChannelRealization {
    ComplexMatrix h;  // n_ris x n_t
    ComplexMatrix g;  // n_r x n_ris
    cplx h_f{0.0, 0.0};
};

/// Counter-based complex-Gaussian stream. A value at position `index` is a
/// pure function of (key, index), so draws can be made in any order.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t trial);

    /// i.i.d. circularly-symmetric standard complex Gaussian at stream position `index`.
    cplx standard_complex_gaussian(std::uint64_t index) const;

    /// 64 mixed bits at stream position `index`.
    std::uint64_t bits(std::uint64_t index) const;

private:
    std::uint64_t key_;
};

/// Rayleigh product-channel model: every transmitter->surface->receiver
/// product path has mean square gain 1/beta with beta = 10^(pathloss_db/10),
/// split evenly between the two hops. The feedback channel carries the full
/// feedback-link path loss. Deterministic given (scenario.seed, trial).
ChannelRealization draw_channels(const Scenario& s, std::uint64_t trial);

}  // namespace risalloc
