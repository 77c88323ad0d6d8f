#pragma once

#include <cmath>
#include <utility>

#include "risalloc/errors.hpp"

namespace risalloc {

/// Bisection for a sign change of f on [lo, hi]. Requires f(lo) and f(hi) of
/// opposite sign (either may be exactly zero). Shrinks the bracket until its
/// width is at most tol and returns the midpoint.
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw InvalidInput("bisect_root: lo must be < hi");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw BracketError("bisect_root: no sign change on bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Returns (x, f(x)) with |x - argmax| <= tol.
template <class F>
std::pair<double, double> golden_maximize(F&& f, double lo, double hi, double tol) {
    if (!(lo <= hi)) throw InvalidInput("golden_maximize: lo must be <= hi");
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
        if (x2 <= x1) break;  // interval at floating-point resolution
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

}  // namespace risalloc
