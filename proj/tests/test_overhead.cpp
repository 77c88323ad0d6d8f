#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "risalloc/channel.hpp"
#include "risalloc/errors.hpp"
#include "risalloc/overhead.hpp"

using namespace risalloc;

namespace {

SystemParams table_params() { return SystemParams{}; }

OverheadSummary bare_summary(double beta, double d, double a, double c, bool feedback) {
    OverheadSummary s;
    s.beta = beta;
    s.d = d;
    s.a = a;
    s.c = c;
    s.feedback_enabled = feedback;
    s.n_ris = 100;
    s.t_e = (1.0 - beta) * 1e-3;
    s.p_e = 0.0;
    return s;
}

}  // namespace

TEST_CASE("sequential pilots time and energy") {
    SystemParams params = table_params();
    Scenario s{1, 1, 100, 110.0, 110.0, 0};
    const EstimationCost cost = estimation_cost(PilotProtocol::SequentialPilots, s, params, true);
    CHECK(cost.t_e == doctest::Approx(101.0 * 0.8e-6).epsilon(1e-12));
    CHECK(cost.p_e == doctest::Approx(params.p0 * 101.0 * 0.8e-6 / params.t_slot).epsilon(1e-12));
}

TEST_CASE("parallel pilots time and energy") {
    SystemParams params = table_params();
    Scenario s{1, 8, 100, 110.0, 110.0, 0};
    const EstimationCost cost = estimation_cost(PilotProtocol::ParallelPilots, s, params, true);
    CHECK(cost.t_e == doctest::Approx(101.0 * 0.8e-6).epsilon(1e-12));
    CHECK(cost.p_e * params.t_slot == doctest::Approx(801.0 * params.p0 * 0.8e-6).epsilon(1e-12));
}

TEST_CASE("disabled feedback estimates only the composite link") {
    SystemParams params = table_params();
    Scenario s{1, 1, 100, 110.0, 110.0, 0};
    const EstimationCost cost = estimation_cost(PilotProtocol::SequentialPilots, s, params, false);
    CHECK(cost.t_e == doctest::Approx(0.8e-6).epsilon(1e-12));
}

TEST_CASE("estimation that outgrows the slot raises") {
    SystemParams params = table_params();
    Scenario s{8, 8, 200, 110.0, 110.0, 0};
    CHECK_THROWS_AS(estimation_cost(PilotProtocol::SequentialPilots, s, params, true),
                    OverheadExceedsSlot);
    // parallel pilots fit
    CHECK_NOTHROW(estimation_cost(PilotProtocol::ParallelPilots, s, params, true));
}

TEST_CASE("beta plus overhead fraction is exactly one") {
    SystemParams params = table_params();
    Scenario s{2, 4, 64, 110.0, 110.0, 0};
    const OverheadSummary sum =
        make_summary(s, params, PilotProtocol::SequentialPilots, true, 1e-9, cplx{1e-6, 0.0});
    CHECK(sum.beta + sum.t_e / params.t_slot == 1.0);
    CHECK(sum.d == doctest::Approx(params.b_f * 64.0 / params.t_slot).epsilon(1e-12));
    CHECK(sum.a == doctest::Approx(1e-12 / params.n0).epsilon(1e-12));
    CHECK(sum.c == doctest::Approx(1e-9 / params.n0).epsilon(1e-12));
}

TEST_CASE("feedback_time hits the closed-form value") {
    SystemParams params = table_params();
    OverheadSummary sum = bare_summary(0.9, 16.0 * 100 / 1e-3, 0.0, 0.0, true);
    // pick a so that log2(1 + a*p_f/b_f) = 10
    const double b_f = 50e6;
    const double p_f = 2.0;
    sum.a = (std::pow(2.0, 10.0) - 1.0) * b_f / p_f;
    const double t_f = feedback_time(params, sum, p_f, b_f);
    CHECK(t_f == doctest::Approx(1600.0 / 5e8).epsilon(1e-12));
}

TEST_CASE("feedback_time is zero without feedback and errors on a dead link") {
    SystemParams params = table_params();
    OverheadSummary off = bare_summary(1.0, 0.0, 0.0, 0.0, false);
    CHECK(feedback_time(params, off, 1.0, 1e6) == 0.0);
    OverheadSummary on = bare_summary(0.9, 1.6e6, 1e9, 0.0, true);
    CHECK_THROWS_AS(feedback_time(params, on, 0.0, 1e6), Infeasible);
}

TEST_CASE("feedback_time decreases in p_f and b_f") {
    SystemParams params = table_params();
    OverheadSummary sum = bare_summary(0.9, 1.6e6, 2.5e9, 0.0, true);
    double prev = feedback_time(params, sum, 1e-3, 1e6);
    for (double p_f : {1e-2, 1e-1, 1.0, 10.0}) {
        const double t = feedback_time(params, sum, p_f, 1e6);
        CHECK(t < prev);
        prev = t;
    }
    prev = feedback_time(params, sum, 1.0, 1e5);
    for (double b_f : {1e6, 1e7, 5e7}) {
        const double t = feedback_time(params, sum, 1.0, b_f);
        CHECK(t < prev);
        prev = t;
    }
}

TEST_CASE("feedback constraint") {
    OverheadSummary off = bare_summary(1.0, 0.0, 0.0, 0.0, false);
    CHECK(feedback_constraint_ok(off, 0.0, 0.0));

    OverheadSummary on = bare_summary(0.5, 1e6, 1e9, 0.0, true);
    // boundary equality is feasible: pick b_f, p_f with capacity exactly d/beta
    const double b_f = 1e6;
    const double target = on.d / on.beta;  // 2e6 bits/s
    const double p_f = (std::pow(2.0, target / b_f) - 1.0) * b_f / on.a;
    CHECK(feedback_constraint_ok(on, p_f, b_f));
    CHECK(feedback_capacity(on.a, p_f, b_f) == doctest::Approx(target).epsilon(1e-12));
    CHECK_FALSE(feedback_constraint_ok(on, p_f * 0.99, b_f));

    // huge payload, sliver of bandwidth
    OverheadSummary heavy = bare_summary(0.9, 1e12, 1e9, 0.0, true);
    CHECK_FALSE(feedback_constraint_ok(heavy, 1.0, 1e3));
}

TEST_CASE("total_power limits") {
    SystemParams params = table_params();
    Scenario s{1, 1, 100, 110.0, 110.0, 0};
    const OverheadSummary sum =
        make_summary(s, params, PilotProtocol::SequentialPilots, true, 1e-9, cplx{3.16e-6, 0.0});
    const double static_power = 100.0 * params.p_cn + params.p_c0;

    ResourceAllocation idle;  // nothing transmitted
    CHECK(total_power(params, sum, idle) ==
          doctest::Approx(sum.p_e + static_power).epsilon(1e-12));

    ResourceAllocation split{2.0, 2.0, 5e7, 5e7, 0.0};
    // mu == mu_f and p == p_f: the feedback term cancels exactly
    const double want = sum.p_e + params.mu * 2.0 * sum.beta + static_power;
    CHECK(total_power(params, sum, split) == doctest::Approx(want).epsilon(1e-9));

    ResourceAllocation starved{1.0, 1e-9, 9.99e7, 1e4, 0.0};
    CHECK_THROWS_AS(total_power(params, sum, starved), Infeasible);
}

TEST_CASE("total_power without feedback is the plain sum") {
    SystemParams params = table_params();
    params.mu = 1.0;
    params.p_c0 = 1.0;
    params.p_cn = 1e-30;
    OverheadSummary sum = bare_summary(1.0, 0.0, 0.0, 0.0, false);
    sum.n_ris = 1;
    ResourceAllocation alloc{2.0, 0.0, 1.0, 0.0, 0.0};
    CHECK(total_power(params, sum, alloc) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("rate prefactor stays within [0, beta] under the constraint") {
    OverheadSummary sum = bare_summary(0.85, 1.6e6, 2.5e9, 0.0, true);
    const CounterRng rng(808);
    for (int k = 0; k < 2000; ++k) {
        const double p_f = std::exp(std::log(1e-4) + 10.0 * (rng.bits(2 * k) >> 11) * 0x1.0p-53);
        const double b_f = std::exp(std::log(1e4) + 12.0 * (rng.bits(2 * k + 1) >> 11) * 0x1.0p-53);
        if (!feedback_constraint_ok(sum, p_f, b_f)) continue;
        const double prefactor = sum.beta - sum.d / feedback_capacity(sum.a, p_f, b_f);
        CHECK(prefactor >= -1e-12);
        CHECK(prefactor <= sum.beta + 1e-12);
    }
}

TEST_CASE("(1+y)log(1+y) >= y") {
    const CounterRng rng(909);
    for (int k = 0; k < 5000; ++k) {
        const double u = (rng.bits(k) >> 11) * 0x1.0p-53;
        const double y = std::exp(std::log(1e-12) + u * (std::log(1e6) - std::log(1e-12)));
        CHECK((1.0 + y) * std::log1p(y) >= y - 1e-12 * std::max(y, 1.0));
    }
    CHECK((1.0 + 0.0) * std::log1p(0.0) >= 0.0);
}

TEST_CASE("power model folds the estimation energy into the EE constant") {
    SystemParams params = table_params();
    Scenario s{1, 1, 100, 110.0, 110.0, 0};
    const OverheadSummary sum =
        make_summary(s, params, PilotProtocol::SequentialPilots, true, 1e-9, cplx{3.16e-6, 0.0});
    const PowerModel pm = power_model_from(params, sum);
    CHECK(pm.p_c ==
          doctest::Approx(100.0 * params.p_cn + params.p_c0 + sum.p_e).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    SystemParams params = table_params();
    params.t0 = 2.0 * params.t_slot;  // above the slot
    CHECK_THROWS_AS(params.validate(), InvalidInput);
    SystemParams negative = table_params();
    negative.p_max = -1.0;
    CHECK_THROWS_AS(negative.validate(), InvalidInput);
}
