#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qread/secure_design.hpp"
#include "qread/sweep.hpp"

using namespace qread;
using Catch::Approx;

TEST_CASE("reflectivity_for_budget") {
    CHECK(reflectivity_for_budget(1000.0, 1.0) == Approx(0.999).epsilon(1e-15));
    CHECK(reflectivity_for_budget(2.0, 1.0) == 0.5);
    CHECK(reflectivity_for_budget(10.0, 1.0) == Approx(0.9).epsilon(1e-15));
    CHECK_THROWS_AS(reflectivity_for_budget(1.0, 1.0), DesignInfeasibleError);
    CHECK_THROWS_AS(reflectivity_for_budget(10.0, 20.0), DesignInfeasibleError);
    CHECK_THROWS_AS(reflectivity_for_budget(10.0, 0.0), DomainError);
    CHECK_THROWS_AS(reflectivity_for_budget(10.0, -1.0), DomainError);
}

TEST_CASE("asymptotic quantum information constants") {
    const double k1 = asymptotic_quantum_info(1.0);
    CHECK(k1 == Approx(0.23579549349137972).epsilon(1e-12));
    // Same number through the logarithm identity.
    const double identity =
        (std::log(2048.0 / 81.0) - 7.0 * std::log(9.0 / 7.0)) / std::log(512.0);
    CHECK(std::abs(k1 - identity) <= 1e-9);

    CHECK(asymptotic_quantum_info(10.0) == Approx(0.8944089636248047).epsilon(1e-12));
    CHECK(asymptotic_quantum_info(100.0) == Approx(0.9973495949541326).epsilon(1e-12));
    CHECK_THROWS_AS(asymptotic_quantum_info(0.0), DomainError);
}

TEST_CASE("asymptotic quantum information is increasing in K with limits 0 and 1") {
    double prev = 0.0;
    for (const double k : sweep::make_grid(1e-3, 1e4, 60, sweep::GridScale::Log)) {
        const double v = asymptotic_quantum_info(k);
        REQUIRE(v > prev);
        prev = v;
    }
    CHECK(asymptotic_quantum_info(1e-8) < 1e-14);
    CHECK(asymptotic_quantum_info(1e8) > 1.0 - 1e-12);
}

TEST_CASE("asymptotic classical information") {
    CHECK(asymptotic_classical_info(1e6, 1.0) == Approx(1.8033688011112043e-7).epsilon(1e-12));
    CHECK(asymptotic_classical_info(1e12, 1.0) < 1e-11);
    // K^2 scaling is exact in floating point (scaling by 4).
    CHECK(asymptotic_classical_info(77.0, 2.0) == 4.0 * asymptotic_classical_info(77.0, 1.0));
    CHECK_THROWS_AS(asymptotic_classical_info(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(asymptotic_classical_info(10.0, 0.0), DomainError);
}

TEST_CASE("design_report evaluates the full design") {
    const DesignReport rep = design_report({1000.0, 1.0});
    CHECK(rep.r == Approx(0.999).epsilon(1e-15));
    CHECK(rep.info_classical_cap == Approx(1.8041206258385994e-4).epsilon(1e-9));
    CHECK(rep.info_quantum == Approx(0.23586246340771277).epsilon(1e-9));
    CHECK(std::abs(rep.info_quantum - 0.2358) <= 0.1 * 0.2358);
    CHECK(rep.delta == Approx(rep.info_quantum - rep.info_classical_cap).epsilon(1e-15));
    CHECK(rep.asymptotic_quantum == Approx(0.23579549349137972).epsilon(1e-12));

    CHECK(design_report({10.0, 1.0}).r == Approx(0.9).epsilon(1e-15));
    CHECK(design_report({1e8, 1.0}).info_quantum == Approx(0.235795).margin(1e-3));

    CHECK_THROWS_AS(design_report({10.0, 20.0}), DesignInfeasibleError);
    CHECK_THROWS_AS(design_report({0.5, 0.1}), DomainError);
}

TEST_CASE("classical cap is the maximum over budgets up to nbar_max") {
    const DesignReport rep = design_report({1000.0, 1.0});
    const double r = rep.r;
    double best = 0.0;
    for (const double n : sweep::make_grid(1e-3, 1000.0, 120, sweep::GridScale::Log)) {
        best = std::max(best, info_classical(n, r));
    }
    CHECK(best <= rep.info_classical_cap + 1e-18);
}

TEST_CASE("designed-cell quantum information decreases toward its limit") {
    // Strict decrease while the decrement resolves in double; beyond
    // n_bar ~ 1e6 the recovered 1 - r = K/n loses enough bits that only
    // decrease-within-noise can be asserted.
    for (const double k : {1.0, 10.0, 100.0}) {
        double prev = 2.0;
        for (const double n : sweep::make_grid(k + 1.0, 1e6, 60, sweep::GridScale::Log)) {
            const double v = design_rule_quantum_info(n, k);
            REQUIRE(v < prev);
            prev = v;
        }
        // Beyond that, r = 1 - K/n carries at most ~53 + log2(K/n) bits of
        // the gap, so only convergence to the limit inside that noise floor
        // can be asserted.
        const double asy = asymptotic_quantum_info(k);
        for (const double n : sweep::make_grid(1e6, 1e10, 20, sweep::GridScale::Log)) {
            REQUIRE(std::abs(design_rule_quantum_info(n, k) - asy) < 1e-6);
        }
        REQUIRE(std::abs(design_rule_quantum_info(1e8, k) - asy) < 1e-3);
    }
}

TEST_CASE("classical information under the rule stays below twice its leading cap") {
    for (const double k : {0.5, 1.0, 3.0}) {
        for (const double n : sweep::make_grid(10.0 * k, 1e9, 50, sweep::GridScale::Log)) {
            REQUIRE(info_classical(n, 1.0 - k / n) < 2.0 * asymptotic_classical_info(n, k));
        }
    }
}

TEST_CASE("budget_for_target_quantum_info finds the largest feasible budget") {
    SECTION("interior target") {
        const double nstar = budget_for_target_quantum_info(0.27, 1.0);
        CHECK(nstar == Approx(2.4474665590947410).epsilon(1e-7));
        const double at = design_rule_quantum_info(nstar, 1.0);
        CHECK(at >= 0.27);
        CHECK(at < 0.27 + 1e-6);
    }
    SECTION("target just above the asymptote returns a very large finite budget") {
        const double asy = asymptotic_quantum_info(1.0);
        const double nstar = budget_for_target_quantum_info(asy + 1e-12, 1.0);
        CHECK(std::isfinite(nstar));
        CHECK(nstar > 1e9);
        CHECK(design_rule_quantum_info(nstar, 1.0) >= asy + 1e-12);
    }
    SECTION("targets outside the feasible band are rejected") {
        // At or below the asymptote every budget qualifies; above the
        // minimum-budget value none does.
        CHECK_THROWS_AS(budget_for_target_quantum_info(0.20, 1.0), UnreachableTargetError);
        CHECK_THROWS_AS(budget_for_target_quantum_info(0.30, 1.0), UnreachableTargetError);
        CHECK_THROWS_AS(budget_for_target_quantum_info(0.0, 1.0), DomainError);
        CHECK_THROWS_AS(budget_for_target_quantum_info(1.5, 1.0), DomainError);
        CHECK_THROWS_AS(budget_for_target_quantum_info(0.5, 0.0), DomainError);
    }
    SECTION("bisection self-consistency across K") {
        for (const double k : {0.5, 2.0, 10.0}) {
            const double lo = asymptotic_quantum_info(k);
            const double hi = design_rule_quantum_info(k + 1.0, k);
            const double target = lo + 0.5 * (hi - lo);
            const double nstar = budget_for_target_quantum_info(target, k);
            const double at = design_rule_quantum_info(nstar, k);
            REQUIRE(at >= target);
            REQUIRE(at < target + 1e-6);
        }
    }
}
