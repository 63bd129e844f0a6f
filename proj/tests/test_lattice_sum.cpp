#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pgauss/lattice_sum.hpp"

#include <cmath>
#include <random>

using namespace pgauss;

TEST_CASE("latticeSum1D examples")
{
    const double pre = kPi / 5.0;
    const auto r0 = latticeSum1D(pre, Kappa(1.0), false, 0.0, 5.0);
    CHECK(oracle::relativeError(r0.value, 1.0 + 2.0 * std::exp(-5.0 * kPi)) <= 1e-15);
    CHECK(r0.value == doctest::Approx(1.00000030140345507801).epsilon(1e-15));
    CHECK(r0.value >= 1.0);

    // alpha = 0 and alpha = -1 coincide at x = 0
    const auto rh = latticeSum1D(pre, Kappa(1.0), true, 0.0, 5.0);
    CHECK(rh.value == doctest::Approx(0.039405745973235115510).epsilon(1e-14));
    CHECK(oracle::relativeError(rh.value, oracle::latticeSum1D(pre, 1.0, 0.5, 0.0, 5.0)) <= 1e-15);
}

TEST_CASE("latticeSum2D examples")
{
    const double pre = kPi / 5.0;
    const auto id = latticeSum2D(pre, SigmaMatrix(1, 0, 1), kUnshifted, 0.0, 0.0, 5.0);
    const double one = 1.0 + 2.0 * std::exp(-5.0 * kPi);
    CHECK(oracle::relativeError(id.value, one * one) <= 1e-15);

    const SigmaMatrix s(2, 1, 1);
    CHECK(latticeSum2D(pre, s, kUnshifted, 0.0, 0.0, 5.0).value >= 1.0);

    const double got = latticeSum2D(pre, s, kUnshifted, 1.0, 0.0, 5.0).value;
    CHECK(oracle::relativeError(got, oracle::latticeSum2D(pre, 2, 1, 1, 0, 0, 1.0, 0.0, 5.0)) <= 1e-14);
}

TEST_CASE("reported tail bound covers the true remainder")
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int draw = 0; draw < 50; ++draw) {
        const double a = 0.3 + 3.0 * unit(rng);
        const double c = 0.3 + 3.0 * unit(rng);
        const double b = (2.0 * unit(rng) - 1.0) * 0.9 * std::sqrt(a * c);
        const double P = 3.0 + 2.0 * std::floor(3.0 * unit(rng));
        const double pre = kPi / P;
        const double x1 = 10.0 * unit(rng) - 5.0;
        const double x2 = 10.0 * unit(rng) - 5.0;
        const HalfShift shift = kAllShifts[static_cast<std::size_t>(draw % 4)];
        CAPTURE(draw);

        const auto r2 = latticeSum2D(pre, SigmaMatrix(a, b, c), shift, x1, x2, P);
        const double n2 =
            oracle::latticeSum2D(pre, a, b, c, shift.offset1(), shift.offset2(), x1, x2, P, 30);
        CHECK(std::abs(r2.value - n2) <= r2.tailBound + 1e-15 * n2);
        CHECK(r2.tailBound <= 1e-15 * r2.value);

        const auto r1 = latticeSum1D(pre, Kappa(a), shift.first, x1, P);
        const double n1 = oracle::latticeSum1D(pre, a, shift.offset1(), x1, P, 200);
        CHECK(std::abs(r1.value - n1) <= r1.tailBound + 1e-15 * n1);
        CHECK(r1.tailBound <= 1e-15 * r1.value);
    }
}

TEST_CASE("extra shells change the value by less than the tail bound")
{
    const SigmaMatrix sigmas[] = {{1, 0, 1}, {2, 1, 1}, {3, -1, 2}, {1, 0.9, 1}};
    for (const auto& s : sigmas) {
        for (double x : {0.0, 1.3, -2.7}) {
            TruncationPolicy policy;
            const auto base = latticeSum2D(kPi / 7.0, s, kShiftBoth, x, -x / 2, 7.0, policy);
            policy.minShell = base.shellsUsed + 4;
            policy.maxShell = policy.minShell + 4;
            const auto more = latticeSum2D(kPi / 7.0, s, kShiftBoth, x, -x / 2, 7.0, policy);
            CHECK(std::abs(more.value - base.value) <= base.tailBound + 2e-16 * base.value);
        }
    }
}

TEST_CASE("adding shells never decreases a positive sum")
{
    const SigmaMatrix s(2, 1, 1);
    double previous = 0.0;
    for (int shells = 1; shells <= 8; ++shells) {
        // relativeTail close to 1 stops right at minShell
        const TruncationPolicy policy{0.999, 64, shells};
        const double v = latticeSum2D(kPi / 3.0, s, kUnshifted, 0.4, 0.2, 3.0, policy).value;
        CHECK(v >= previous);
        previous = v;
    }
}

TEST_CASE("b = 0 factorizes into two one-dimensional sums")
{
    const double pre = kPi / 5.0;
    for (const HalfShift shift : kAllShifts) {
        for (double x1 : {0.0, 1.0, -2.5}) {
            for (double x2 : {0.0, 2.0, 0.7}) {
                const double v2 = latticeSum2D(pre, SigmaMatrix(1.5, 0, 0.7), shift, x1, x2, 5.0).value;
                const double v1 = latticeSum1D(pre, Kappa(1.5), shift.first, x1, 5.0).value *
                                  latticeSum1D(pre, Kappa(0.7), shift.second, x2, 5.0).value;
                CHECK(oracle::relativeError(v2, v1) <= 1e-13);
            }
        }
    }
}

TEST_CASE("lattice sums are even in the offset")
{
    const SigmaMatrix sigmas[] = {{2, 1, 1}, {3, -1, 2}, {1, 0.9, 1}};
    for (const auto& s : sigmas) {
        for (const HalfShift shift : kAllShifts) {
            for (double x1 : {1.0, -2.0, 0.3}) {
                const double x2 = 1.7 - x1;
                const double plus = latticeSum2D(kPi / 5.0, s, shift, x1, x2, 5.0).value;
                const double minus = latticeSum2D(kPi / 5.0, s, shift, -x1, -x2, 5.0).value;
                CHECK(oracle::relativeError(plus, minus) <= 1e-15);
            }
        }
    }
}

TEST_CASE("non-convergence is reported")
{
    const TruncationPolicy tight{1e-15, 3, 3};
    CHECK_THROWS_AS(latticeSum1D(1e-4, Kappa(1.0), false, 0.0, 1.0, tight), ConvergenceFailure);
    CHECK_THROWS_AS(latticeSum2D(1e-4, SigmaMatrix(1, 0, 1), kUnshifted, 0.0, 0.0, 1.0, tight),
                    ConvergenceFailure);
}

TEST_CASE("alternating sums match naive signed loops")
{
    const double pre = kPi / 5.0;
    for (double x : {0.0, 1.0, 2.5}) {
        double naive = 0.0;
        for (int a = -40; a <= 40; ++a) {
            const double y = x + a * 5.0;
            naive += (a % 2 ? -1.0 : 1.0) * std::exp(-pre * 0.8 * y * y);
        }
        const double got = alternatingLatticeSum1D(pre, Kappa(0.8), true, x, 5.0).value;
        CHECK(std::abs(got - naive) <= 1e-15);
    }

    const SigmaMatrix s(2, 1, 1);
    for (const Alternation alt : {Alternation{true, false}, Alternation{false, true}, Alternation{true, true}}) {
        double naive = 0.0;
        for (int a1 = -12; a1 <= 12; ++a1) {
            for (int a2 = -12; a2 <= 12; ++a2) {
                const double y1 = 1.0 + a1 * 5.0;
                const double y2 = -2.0 + a2 * 5.0;
                const int parity = (alt.first ? a1 : 0) + (alt.second ? a2 : 0);
                naive += (parity % 2 ? -1.0 : 1.0) * std::exp(-pre * s.quadraticForm(y1, y2));
            }
        }
        const double got = alternatingLatticeSum2D(pre, s, alt, 1.0, -2.0, 5.0).value;
        CHECK(std::abs(got - naive) <= 1e-15);
    }
}

TEST_CASE("collected terms reproduce the sum")
{
    const auto one = collectLatticeTerms1D(kPi / 5.0, Kappa(1.0), 0.5, 2.5);
    double total = 0.0;
    for (const auto& t : one.terms)
        total += t.value;
    CHECK(oracle::relativeError(total, one.sum.value) <= 1e-15);
    CHECK(oracle::relativeError(one.sum.value, oracle::latticeSum1D(kPi / 5.0, 1.0, 0.0, 0.5, 2.5)) <= 1e-15);

    const auto two = collectLatticeTerms2D(kPi / 5.0, SigmaMatrix(2, 1, 1), 0.5, -1.0, 2.5);
    CHECK(oracle::relativeError(two.sum.value,
                                oracle::latticeSum2D(kPi / 5.0, 2, 1, 1, 0, 0, 0.5, -1.0, 2.5, 20)) <= 1e-15);
}
