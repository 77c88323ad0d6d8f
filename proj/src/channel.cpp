#include "risalloc/channel.hpp"

#include <cmath>

#include "risalloc/errors.hpp"

namespace risalloc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline double to_open_unit(std::uint64_t x) {
    // (0, 1]: safe as a log argument.
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

inline double to_half_open_unit(std::uint64_t x) {
    // [0, 1)
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace

void Scenario::validate() const {
    if (n_t < 1 || n_r < 1 || n_ris < 1) throw InvalidInput("Scenario: antenna/element counts must be >= 1");
    if (!std::isfinite(pathloss_db) || !std::isfinite(fb_pathloss_db)) {
        throw InvalidInput("Scenario: path loss must be finite");
    }
}

std::uint64_t CounterRng::derive_key(std::uint64_t seed, std::uint64_t trial) {
    return mix64(seed ^ mix64(trial));
}

std::uint64_t CounterRng::bits(std::uint64_t index) const {
    return mix64(key_ ^ mix64(index ^ 0xD1B54A32D192ED03ULL));
}

cplx CounterRng::standard_complex_gaussian(std::uint64_t index) const {
    const double u1 = to_open_unit(bits(2 * index));
    const double u2 = to_half_open_unit(bits(2 * index + 1));
    // Box-Muller: radius^2 is Exp(1) for a unit-variance complex Gaussian.
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

ChannelRealization draw_channels(const Scenario& s, std::uint64_t trial) {
    s.validate();
    const std::uint64_t key = CounterRng::derive_key(s.seed, trial);
    // Separate streams per matrix: a draw for element (i, j) does not depend
    // on the surface size, so growing N extends a realization in place.
    const CounterRng rng_h(mix64(key ^ 0x48ULL));
    const CounterRng rng_g(mix64(key ^ 0x47ULL));
    const CounterRng rng_f(mix64(key ^ 0x46ULL));

    const double beta = std::pow(10.0, 0.1 * s.pathloss_db);
    const double hop_scale = 1.0 / std::pow(beta, 0.25);
    const double beta_f = std::pow(10.0, 0.1 * s.fb_pathloss_db);
    const double fb_scale = 1.0 / std::sqrt(beta_f);

    ChannelRealization ch;
    ch.h = ComplexMatrix(s.n_ris, s.n_t);
    ch.g = ComplexMatrix(s.n_r, s.n_ris);

    for (std::size_t i = 0; i < s.n_ris; ++i) {
        for (std::size_t j = 0; j < s.n_t; ++j) {
            ch.h(i, j) = hop_scale * rng_h.standard_complex_gaussian(i * s.n_t + j);
        }
    }
    for (std::size_t i = 0; i < s.n_r; ++i) {
        for (std::size_t j = 0; j < s.n_ris; ++j) {
            ch.g(i, j) = hop_scale * rng_g.standard_complex_gaussian(i + j * s.n_r);
        }
    }
    ch.h_f = fb_scale * rng_f.standard_complex_gaussian(0);
    return ch;
}

}  // namespace risalloc
