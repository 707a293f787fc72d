#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "test_util.hpp"
#include "wavejets/wavejet_coeffs.hpp"

using namespace wavejets;
using testutil::kPi;

TEST_SUITE("wavejets") {

TEST_CASE("evaluate examples") {
    WavejetCoeffs monkey(3);
    monkey.set(3, 3, {0.5, 0.0});
    CHECK(monkey.evaluate(1.0, 0.0) == doctest::Approx(1.0));
    for (double r : {0.2, 0.8})
        for (double theta : {0.3, 2.0}) {
            CHECK(monkey.evaluate(r, theta) ==
                  doctest::Approx(r * r * r * std::cos(3.0 * theta)));
        }

    WavejetCoeffs zero(5);
    CHECK(zero.evaluate(0.7, 1.0) == 0.0);

    WavejetCoeffs constant(2);
    constant.set(0, 0, {3.25, 0.0});
    CHECK(constant.evaluate(0.1, 5.0) == 3.25);
}

TEST_CASE("g_k examples") {
    WavejetCoeffs monkey(3);
    monkey.set(3, 3, {0.5, 0.0});
    CHECK(monkey.g(3, 0.0) == doctest::Approx(1.0));
    CHECK(monkey.g(3, kPi / 3.0) == doctest::Approx(-1.0));

    const double k1 = 1.2, k2 = 0.3;
    WavejetCoeffs hess(2);
    hess.set(2, 0, {(k1 + k2) / 4.0, 0.0});
    hess.set(2, 2, {(k1 - k2) / 8.0, 0.0});
    CHECK(hess.g(2, 0.0) == doctest::Approx(k1 / 2.0));
    CHECK(hess.g(2, kPi / 2.0) == doctest::Approx(k2 / 2.0));

    WavejetCoeffs zero(4);
    for (double theta : {0.0, 1.0, 4.0}) CHECK(zero.g(4, theta) == 0.0);

    CHECK_THROWS_AS(zero.g(5, 0.0), std::invalid_argument);
}

TEST_CASE("g derivatives: examples and finite differences") {
    WavejetCoeffs monkey(3);
    monkey.set(3, 3, {0.5, 0.0});
    for (double theta : {0.0, 0.4, 2.5}) {
        CHECK(monkey.g_deriv(3, theta) ==
              doctest::Approx(-3.0 * std::sin(3.0 * theta)).epsilon(1e-12));
    }
    CHECK(monkey.g_deriv(3, kPi / 3.0) == doctest::Approx(0.0).epsilon(1e-12));

    WavejetCoeffs zero(4);
    CHECK(zero.g_deriv(4, 1.3) == 0.0);

    std::mt19937_64 rng(31);
    for (int k = 2; k <= 10; ++k) {
        const auto row = testutil::random_row(k, rng);
        const double h = 1e-6;
        for (double theta : {0.1, 1.9, 3.3, 5.8}) {
            const double fd =
                (row_g(row, theta + h) - row_g(row, theta - h)) / (2.0 * h);
            CHECK(std::abs(row_g_deriv(row, theta) - fd) < 1e-8 * std::max(1.0, std::abs(fd)) + 1e-8);
            const double fd2 = (row_g_deriv(row, theta + h) -
                                row_g_deriv(row, theta - h)) /
                               (2.0 * h);
            CHECK(std::abs(row_g_second(row, theta) - fd2) < 1e-6);
        }
    }
}

TEST_CASE("half-turn parity of g_k") {
    std::mt19937_64 rng(37);
    for (int k = 1; k <= 10; ++k) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto row = testutil::random_row(k, rng);
            for (double theta : {0.0, 0.9, 2.2, 4.4}) {
                const double a = row_g(row, theta);
                const double b = row_g(row, theta + kPi);
                CHECK(std::abs(b - (k % 2 == 0 ? a : -a)) < 1e-12);
            }
        }
    }
}

TEST_CASE("evaluate at r = 1 sums the per-order g_k") {
    std::mt19937_64 rng(41);
    WavejetCoeffs c(6);
    for (int k = 0; k <= 6; ++k) {
        const auto row = testutil::random_row(k, rng);
        for (int n = k & 1; n <= k; n += 2) c.set(k, n, row[n]);
    }
    for (double theta : {0.0, 1.1, 3.9}) {
        double sum = 0.0;
        for (int k = 0; k <= 6; ++k) sum += c.g(k, theta);
        CHECK(c.evaluate(1.0, theta) == doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("g_k is consistent with the tensor route") {
    std::mt19937_64 rng(43);
    for (int k = 1; k <= 8; ++k) {
        const auto row = testutil::random_row(k, rng);
        const auto t = wavejet_row_to_tensor(row, k);
        double kfac = 1.0;
        for (int i = 2; i <= k; ++i) kfac *= i;
        for (double theta : {0.2, 1.8, 4.1}) {
            const double via_tensor =
                apply_full(t, {std::cos(theta), std::sin(theta)}) / kfac;
            CHECK(std::abs(row_g(row, theta) - via_tensor) < 1e-10);
        }
    }
}

TEST_CASE("conjugate reads and parity storage rules") {
    WavejetCoeffs c(4);
    c.set(3, 1, {0.25, -0.5});
    CHECK(c.get(3, -1) == std::complex<double>(0.25, 0.5));
    CHECK(c.get(3, 2) == std::complex<double>(0.0, 0.0)); // off-parity
    CHECK_THROWS_AS(c.set(3, 2, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(c.set(2, 0, {1.0, 0.1}), std::invalid_argument);
}

TEST_CASE("text serialization round trip") {
    std::mt19937_64 rng(47);
    WavejetCoeffs c(5, 0.25);
    for (int k = 0; k <= 5; ++k) {
        const auto row = testutil::random_row(k, rng);
        for (int n = k & 1; n <= k; n += 2) c.set(k, n, row[n]);
    }
    std::stringstream ss;
    c.write_text(ss);
    const auto back = WavejetCoeffs::read_text(ss, 0.25);
    CHECK(back.max_order() == 5);
    for (int k = 0; k <= 5; ++k) {
        for (int n = k & 1; n <= k; n += 2) {
            CHECK(std::abs(back.get(k, n) - c.get(k, n)) == 0.0);
        }
    }
}

TEST_CASE("unnormalized rows divide by scale^k") {
    WavejetCoeffs c(3, 0.5);
    c.set(3, 3, {0.0625, 0.0}); // 0.5 * 0.5^3
    const auto row = c.unnormalized_row(3);
    CHECK(row[3].real() == doctest::Approx(0.5));
}

} // TEST_SUITE
