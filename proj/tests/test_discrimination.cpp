#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qread/discrimination.hpp"

using namespace qread;
using Catch::Approx;

TEST_CASE("helstrom_pure scalar points") {
    CHECK(helstrom_pure(1.0) == 0.5);
    CHECK(helstrom_pure(0.0) == 0.0);
    // (1 - sqrt(5)/3) / 2
    CHECK(helstrom_pure(4.0 / 9.0) == Approx(0.12732200375003505).epsilon(1e-13));
    CHECK_THROWS_AS(helstrom_pure(-0.1), DomainError);
    CHECK_THROWS_AS(helstrom_pure(1.1), DomainError);
    CHECK_THROWS_AS(helstrom_pure(std::nan("")), DomainError);
}

TEST_CASE("helstrom_pure keeps relative accuracy for tiny fidelities") {
    // Nearly orthogonal pair: p ~ F/4, which the naive difference would
    // round to zero.
    const double f = 1e-300;
    CHECK(helstrom_pure(f) == Approx(f / 4.0).epsilon(1e-12));
}

TEST_CASE("trace_distance_pure scalar points") {
    CHECK(trace_distance_pure(1.0) == 0.0);
    CHECK(trace_distance_pure(0.0) == 1.0);
    CHECK(trace_distance_pure(0.75) == 0.5);
    CHECK_THROWS_AS(trace_distance_pure(2.0), DomainError);
}

TEST_CASE("qcb_from_fidelity scalar points") {
    CHECK(qcb_from_fidelity(1.0) == 0.5);
    CHECK(qcb_from_fidelity(0.0) == 0.0);
    CHECK(qcb_from_fidelity(4.0 / 9.0) == Approx(2.0 / 9.0).epsilon(1e-15));
    CHECK_THROWS_AS(qcb_from_fidelity(-1e-9), DomainError);
}

TEST_CASE("binary_entropy scalar points and stability") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(2.0 / 9.0) == Approx(0.7642045065086203).epsilon(1e-13));
    CHECK_THROWS_AS(binary_entropy(-0.1), DomainError);
    CHECK_THROWS_AS(binary_entropy(1.0001), DomainError);

    // Small-probability regime: H(p) ~ p log2(1/p) + p/ln 2.
    const double p = 1e-13;
    CHECK(binary_entropy(p) == Approx(4.4627760274424602e-12).epsilon(1e-10));
    const double expansion = p * std::log2(1.0 / p) + p * std::numbers::log2e_v<double>;
    CHECK(binary_entropy(p) == Approx(expansion).epsilon(1e-10));
}

TEST_CASE("binary_entropy is symmetric") {
    std::mt19937_64 rng(2207);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double p = unit(rng);
        REQUIRE(std::abs(binary_entropy(p) - binary_entropy(1.0 - p)) <= 1e-13);
    }
}

TEST_CASE("readout_information scalar points") {
    CHECK(readout_information(0.5) == 0.0);
    CHECK(readout_information(0.0) == 1.0);
    CHECK(readout_information(2.0 / 9.0) == Approx(0.23579549349137972).epsilon(1e-13));
    CHECK_THROWS_AS(readout_information(0.5000001), DomainError);
    CHECK_THROWS_AS(readout_information(-0.1), DomainError);
}

TEST_CASE("readout_information series and direct paths agree at the crossover") {
    for (double p = 0.30; p <= 0.49; p += 0.001) {
        const double direct = 1.0 - binary_entropy(p);
        REQUIRE(std::abs(readout_information(p) - direct) <= 1e-13);
    }
}

TEST_CASE("readout_information stays accurate next to the guessing point") {
    // 1 - H(1/2 - d) = 2 d^2 / ln 2 + O(d^4); the direct difference dies at
    // d ~ 1e-8 while the series keeps full relative precision. The reference
    // uses the representable offset actually stored in p.
    const double p = 0.5 - 1e-12;
    const double d = 0.5 - p;
    const double expected = 2.0 * d * d * std::numbers::log2e_v<double>;
    CHECK(readout_information(p) == Approx(expected).epsilon(1e-12));
}

TEST_CASE("readout_information is strictly decreasing on (0, 1/2)") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(1e-6, 0.5 - 1e-6);
    for (int i = 0; i < 5000; ++i) {
        double p1 = unit(rng), p2 = unit(rng);
        if (p1 == p2) {
            continue;
        }
        if (p1 > p2) {
            std::swap(p1, p2);
        }
        REQUIRE(readout_information(p1) > readout_information(p2));
    }
}

TEST_CASE("Helstrom never exceeds the Chernoff bound at equal fidelity") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double f = unit(rng);
        REQUIRE(helstrom_pure(f) <= qcb_from_fidelity(f));
    }
    CHECK(helstrom_pure(0.0) == qcb_from_fidelity(0.0));
}

TEST_CASE("make_discrimination_result tags and fills the information") {
    const DiscriminationResult res = make_discrimination_result(2.0 / 9.0, BoundKind::QcbUpper);
    CHECK(res.kind == BoundKind::QcbUpper);
    CHECK(res.p_bar == 2.0 / 9.0);
    CHECK(res.info_bits == Approx(0.23579549349137972).epsilon(1e-13));
}
