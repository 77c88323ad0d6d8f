#include "risalloc/phase_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "risalloc/errors.hpp"
#include "risalloc/kernels.hpp"
#include "risalloc/svd.hpp"

namespace risalloc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

// -angle(conj(gw[n]) * hq[n]), zero products mapping to zero phase.
std::vector<double> aligned_phases(const std::vector<cplx>& gw, const std::vector<cplx>& hq) {
    std::vector<double> phases(gw.size());
    for (std::size_t n = 0; n < gw.size(); ++n) {
        const cplx prod = std::conj(gw[n]) * hq[n];
        phases[n] = (prod == cplx{0.0, 0.0}) ? 0.0 : wrap_angle(-std::arg(prod));
    }
    return phases;
}

ComplexMatrix effective_matrix(const ChannelRealization& ch, const std::vector<cplx>& phasors) {
    return ch.g.multiply(ch.h.scale_rows(phasors));
}

// Largest squared singular value via the smaller Gram matrix; closed forms
// for orders 1 and 2 keep the brute-force loop cheap.
double sigma1_squared(const ComplexMatrix& a) {
    const bool gram_cols = a.cols() <= a.rows();
    const std::size_t k = gram_cols ? a.cols() : a.rows();
    if (k == 1) {
        const cplx s = kernels::cdotc(a.size(), a.data(), a.data());
        return s.real();
    }
    if (k == 2) {
        cplx w00{0.0, 0.0}, w01{0.0, 0.0}, w11{0.0, 0.0};
        if (gram_cols) {
            for (std::size_t i = 0; i < a.rows(); ++i) {
                const cplx x = a(i, 0), y = a(i, 1);
                w00 += std::conj(x) * x;
                w01 += std::conj(x) * y;
                w11 += std::conj(y) * y;
            }
        } else {
            w00 = kernels::cdotc(a.cols(), a.row(0), a.row(0));
            w01 = kernels::cdotc(a.cols(), a.row(1), a.row(0));
            w11 = kernels::cdotc(a.cols(), a.row(1), a.row(1));
        }
        const double tr = w00.real() + w11.real();
        const double diff = w00.real() - w11.real();
        const double disc = std::sqrt(diff * diff + 4.0 * std::norm(w01));
        return 0.5 * (tr + disc);
    }
    const SvdResult s = svd(a);
    return s.singular_values[0] * s.singular_values[0];
}

PhaseSolution finish(const ChannelRealization& ch, std::vector<double> phases, std::vector<cplx> q,
                     std::vector<cplx> w) {
    PhaseSolution sol;
    sol.phases = std::move(phases);
    sol.q = std::move(q);
    sol.w = std::move(w);
    sol.objective = evaluate_gain(ch, sol);
    return sol;
}

// Exact grid optimum of |sum_n z_n e^{j phi_n}| over phi_n in the uniform
// grid, without joint enumeration. Writes the best grid indices to `k_out`.
//
// Uses max_phi |v| = max_theta Re(v e^{-j theta}) to swap the maximizations:
// for fixed theta each element independently picks its best grid point, and
// between consecutive switching angles the objective is a single sinusoid.
double rank_one_grid_max(const std::vector<cplx>& z, std::size_t levels,
                         std::vector<std::size_t>& k_out) {
    const std::size_t n = z.size();
    const double step = kTwoPi / static_cast<double>(levels);
    const double half = 0.5 * step;

    std::vector<double> rho(n), delta(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        rho[i] = std::abs(z[i]);
        delta[i] = (rho[i] > 0.0) ? std::arg(z[i]) : 0.0;
        any = any || rho[i] > 0.0;
    }
    if (!any) throw DegenerateMatrix("brute_force_phases: zero channel");

    std::vector<double> breaks;
    breaks.reserve(n * levels);
    for (std::size_t i = 0; i < n; ++i) {
        if (rho[i] == 0.0) continue;
        for (std::size_t k = 0; k < levels; ++k) {
            breaks.push_back(wrap_angle(delta[i] + static_cast<double>(k) * step + half));
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    if (breaks.empty()) breaks.push_back(0.0);

    const auto pick = [&](double theta, std::size_t i) -> std::size_t {
        const double raw = std::round((theta - delta[i]) / step);
        const long long li = static_cast<long long>(raw);
        const long long l = static_cast<long long>(levels);
        return static_cast<std::size_t>(((li % l) + l) % l);
    };

    double best = -1.0;
    std::vector<std::size_t> ks(n, 0);
    std::vector<std::size_t> best_ks(n, 0);
    for (std::size_t b = 0; b < breaks.size(); ++b) {
        const double lo = breaks[b];
        const double hi = (b + 1 < breaks.size()) ? breaks[b + 1] : breaks[0] + kTwoPi;
        const double mid = 0.5 * (lo + hi);
        cplx v{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            ks[i] = (rho[i] > 0.0) ? pick(mid, i) : 0;
            if (rho[i] > 0.0) {
                v += std::polar(rho[i], delta[i] + static_cast<double>(ks[i]) * step);
            }
        }
        const double mag = std::abs(v);
        if (mag == 0.0) continue;
        double psi = std::arg(v);
        if (psi < lo) psi += kTwoPi;
        const double val =
            (psi <= hi) ? mag : std::max(mag * std::cos(lo - std::arg(v)), mag * std::cos(hi - std::arg(v)));
        if (val > best) {
            best = val;
            best_ks = ks;
        }
    }
    k_out = best_ks;
    return best;
}

}  // namespace

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::IdentityPhases: return "a";
        case Scheme::UpperBound: return "b";
        case Scheme::LowerBound: return "c";
        case Scheme::Alternating: return "d";
    }
    return "?";
}

std::vector<cplx> unit_phasors(const std::vector<double>& phases) {
    std::vector<cplx> u(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i) u[i] = std::polar(1.0, phases[i]);
    return u;
}

double evaluate_gain(const ChannelRealization& ch, const PhaseSolution& sol) {
    const std::size_t n = ch.h.rows();
    if (ch.g.cols() != n) throw InvalidInput("evaluate_gain: H/G surface dimensions disagree");
    if (sol.phases.size() != n || sol.q.size() != ch.h.cols() || sol.w.size() != ch.g.rows()) {
        throw InvalidInput("evaluate_gain: solution dimensions do not match the channel");
    }
    const std::vector<cplx> gw = ch.g.apply_adjoint(sol.w);
    const std::vector<cplx> hq = ch.h.apply(sol.q);
    const std::vector<cplx> unit = unit_phasors(sol.phases);
    const cplx val = kernels::phased_dot(n, gw.data(), unit.data(), hq.data());
    return std::norm(val);
}

PhaseSolution solve_identity(const ChannelRealization& ch) {
    const ComplexMatrix a = ch.g.multiply(ch.h);
    const SingularTriplet t = dominant_singular_triplet(a);  // throws on zero channel
    return finish(ch, std::vector<double>(ch.h.rows(), 0.0), t.right, t.left);
}

PhaseSolution solve_upper_bound(const ChannelRealization& ch) {
    const std::size_t n = ch.h.rows();
    const SvdResult sh = svd(ch.h);
    const SvdResult sg = svd(ch.g);
    if (sh.rank == 0 || sg.rank == 0) throw DegenerateMatrix("solve_upper_bound: zero channel");

    // j_bar(i): best transmit-side mode for receive-side mode i; ties take the
    // lowest index.
    std::vector<std::size_t> j_bar(sg.rank, 0);
    std::vector<double> j_val(sg.rank, 0.0);
    std::vector<cplx> vg(n), uh(n);
    for (std::size_t i = 0; i < sg.rank; ++i) {
        vg = sg.right(i);
        double best = -1.0;
        for (std::size_t j = 0; j < sh.rank; ++j) {
            uh = sh.left(j);
            const double s = kernels::abs_prod_sum(n, vg.data(), uh.data());
            const double val = sh.singular_values[j] * sh.singular_values[j] * s * s;
            if (val > best) {
                best = val;
                j_bar[i] = j;
            }
        }
        j_val[i] = best;
    }
    std::size_t i_bar = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < sg.rank; ++i) {
        const double val = sg.singular_values[i] * sg.singular_values[i] * j_val[i];
        if (val > best) {
            best = val;
            i_bar = i;
        }
    }

    const std::vector<cplx> v_sel = sg.right(i_bar);
    const std::vector<cplx> u_sel = sh.left(j_bar[i_bar]);
    std::vector<double> phases(n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx prod = std::conj(v_sel[k]) * u_sel[k];
        phases[k] = (prod == cplx{0.0, 0.0}) ? 0.0 : wrap_angle(-std::arg(prod));
    }
    return finish(ch, std::move(phases), sh.right(j_bar[i_bar]), sg.left(i_bar));
}

PhaseSolution solve_lower_bound(const ChannelRealization& ch) {
    // sum_n g_n h_n^T is exactly G*H.
    const ComplexMatrix m = ch.g.multiply(ch.h);
    if (m.frobenius_norm() == 0.0) throw DegenerateMatrix("solve_lower_bound: zero channel");
    const SingularTriplet t = dominant_singular_triplet(m);
    const std::vector<cplx> gw = ch.g.apply_adjoint(t.left);
    const std::vector<cplx> hq = ch.h.apply(t.right);
    return finish(ch, aligned_phases(gw, hq), t.right, t.left);
}

PhaseSolution solve_alternating(const ChannelRealization& ch, std::size_t max_iters, double tol,
                                std::vector<double>* trace) {
    if (max_iters < 1) throw InvalidInput("solve_alternating: max_iters must be >= 1");
    const PhaseSolution warm = solve_lower_bound(ch);
    std::vector<cplx> q = warm.q;
    std::vector<cplx> w = warm.w;
    std::vector<double> phases = warm.phases;
    if (trace != nullptr) trace->clear();

    double prev = warm.objective;
    for (std::size_t it = 0; it < max_iters; ++it) {
        const std::vector<cplx> gw = ch.g.apply_adjoint(w);
        const std::vector<cplx> hq = ch.h.apply(q);
        phases = aligned_phases(gw, hq);
        const ComplexMatrix a = effective_matrix(ch, unit_phasors(phases));
        const SingularTriplet t = dominant_singular_triplet(a);
        q = t.right;
        w = t.left;
        const double obj = t.sigma * t.sigma;
        if (trace != nullptr) trace->push_back(obj);
        if (obj - prev <= tol * std::max(prev, 1e-300)) {
            prev = obj;
            break;
        }
        prev = obj;
    }
    return finish(ch, std::move(phases), std::move(q), std::move(w));
}

PhaseSolution brute_force_phases(const ChannelRealization& ch, std::size_t levels) {
    if (levels < 1) throw InvalidInput("brute_force_phases: levels must be >= 1");
    const std::size_t n = ch.h.rows();
    const std::size_t nt = ch.h.cols();
    const std::size_t nr = ch.g.rows();
    const double step = kTwoPi / static_cast<double>(levels);

    if (nt == 1 && nr == 1) {
        // Scalar link: the per-grid-point optimum is |g^T Phi h|, whose grid
        // maximum has an exact separable form. Same result as enumeration.
        if (static_cast<double>(n) * static_cast<double>(levels) > 4e6) {
            throw InstanceTooLarge("brute_force_phases: phase grid too large");
        }
        std::vector<cplx> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = ch.g(0, i) * ch.h(i, 0);
        std::vector<std::size_t> ks;
        rank_one_grid_max(z, levels, ks);
        std::vector<double> phases(n);
        for (std::size_t i = 0; i < n; ++i) phases[i] = wrap_angle(static_cast<double>(ks[i]) * step);
        const ComplexMatrix a = effective_matrix(ch, unit_phasors(phases));
        const SingularTriplet t = dominant_singular_triplet(a);
        return finish(ch, std::move(phases), t.right, t.left);
    }

    if (static_cast<double>(n) * std::log(static_cast<double>(levels)) > std::log(1e7) + 1e-9) {
        throw InstanceTooLarge("brute_force_phases: levels^N exceeds the enumeration cap");
    }

    // Outer products O_n = g_n h_n^T, flattened; A(phi) = sum_n u_n O_n is
    // maintained incrementally as the odometer advances.
    std::vector<ComplexMatrix> outer(n, ComplexMatrix(nr, nt));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t r = 0; r < nr; ++r) {
            kernels::axpy(nt, ch.g(r, k), ch.h.row(k), outer[k].row(r));
        }
    }
    std::vector<cplx> unit_table(levels);
    for (std::size_t k = 0; k < levels; ++k) unit_table[k] = std::polar(1.0, static_cast<double>(k) * step);

    ComplexMatrix a(nr, nt);
    for (std::size_t k = 0; k < n; ++k) {
        kernels::axpy(a.size(), unit_table[0], outer[k].data(), a.data());
    }

    std::vector<std::size_t> idx(n, 0);
    std::vector<std::size_t> best_idx(n, 0);
    double best = sigma1_squared(a);
    for (;;) {
        // advance the odometer
        std::size_t digit = 0;
        while (digit < n) {
            const std::size_t old = idx[digit];
            const std::size_t next = (old + 1) % levels;
            idx[digit] = next;
            kernels::axpy(a.size(), unit_table[next] - unit_table[old], outer[digit].data(), a.data());
            if (next != 0) break;
            ++digit;
        }
        if (digit == n) break;  // wrapped around
        const double obj = sigma1_squared(a);
        if (obj > best) {
            best = obj;
            best_idx = idx;
        }
    }

    std::vector<double> phases(n);
    for (std::size_t k = 0; k < n; ++k) phases[k] = wrap_angle(static_cast<double>(best_idx[k]) * step);
    const ComplexMatrix best_a = effective_matrix(ch, unit_phasors(phases));
    const SingularTriplet t = dominant_singular_triplet(best_a);
    return finish(ch, std::move(phases), t.right, t.left);
}

PhaseSolution solve_scheme(const ChannelRealization& ch, Scheme scheme) {
    switch (scheme) {
        case Scheme::IdentityPhases: return solve_identity(ch);
        case Scheme::UpperBound: return solve_upper_bound(ch);
        case Scheme::LowerBound: return solve_lower_bound(ch);
        case Scheme::Alternating: return solve_alternating(ch);
    }
    throw InvalidInput("solve_scheme: unknown scheme");
}

}  // namespace risalloc
