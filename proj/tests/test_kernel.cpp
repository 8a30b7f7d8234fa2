#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radavg/ext_real.hpp"
#include "radavg/kernel.hpp"
#include "radavg/weight.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace radavg;
using cd = std::complex<double>;

namespace {
double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
} // namespace

TEST_CASE("kernel coefficients: constant weight gives c_n = n + 1") {
    const KernelSeries k =
        build_kernel(RadialWeight::power_log(0, 0), 0.9, 1e-8);
    REQUIRE(k.n_max() >= 50);
    for (std::size_t n = 0; n <= 50; ++n)
        CHECK(k.coeffs[n] == doctest::Approx(double(n + 1)).epsilon(1e-10));
}

TEST_CASE("kernel coefficients: scaled monomial weight") {
    // weight 2s has odd moments 2/(2n+3), so c_n = (2n+3)/4
    const KernelSeries k =
        build_kernel(RadialWeight::monomial(1.0, 2.0), 0.8, 1e-8);
    for (std::size_t n = 0; n <= 40; ++n)
        CHECK(k.coeffs[n] ==
              doctest::Approx((2.0 * n + 3.0) / 4.0).epsilon(1e-10));
}

TEST_CASE("kernel coefficients: (1-s) weight grows quadratically") {
    // exact moments 1/((2n+2)(2n+3)) -> c_n = (n+1)(2n+3)
    const KernelSeries k =
        build_kernel(RadialWeight::power_log(1.0, 0.0), 0.8, 1e-8);
    for (std::size_t n = 0; n <= 40; ++n) {
        const double want = (2.0 * n + 2.0) * (2.0 * n + 3.0) / 2.0;
        CHECK(k.coeffs[n] == doctest::Approx(want).epsilon(1e-9));
    }
    for (std::size_t n = 32; n <= 40; ++n) {
        const double ratio = k.coeffs[n] / double(n * n);
        CHECK(ratio >= 2.0);
        CHECK(ratio <= 2.2);
    }
}

TEST_CASE("kernel coefficients are nondecreasing") {
    for (const auto& w :
         {RadialWeight::power_log(0, 0), RadialWeight::monomial(2.0),
          RadialWeight::power_log(0.5, 1.0)}) {
        const KernelSeries k = build_kernel(w, 0.7, 1e-7);
        for (std::size_t n = 1; n <= k.n_max(); ++n)
            CHECK(k.coeffs[n] >= k.coeffs[n - 1] * (1.0 - 1e-12));
    }
}

TEST_CASE("constant-weight kernel matches its closed form") {
    const KernelSeries k =
        build_kernel(RadialWeight::power_log(0, 0), 0.9, 1e-9);
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 100; ++i) {
        const cd a = std::polar(0.9 * u01(rng), 2 * M_PI * u01(rng));
        const cd z = std::polar(0.95 * u01(rng), 2 * M_PI * u01(rng));
        const cd got = eval_kernel_derivative(k, 0, a, z);
        const cd want = 1.0 / std::pow(1.0 - z * std::conj(a), 2.0);
        CHECK(std::abs(got - want) < 1e-6 * std::max(1.0, std::abs(want)));

        const cd got1 = eval_kernel_derivative(k, 1, a, z);
        const cd want1 =
            2.0 * std::conj(a) / std::pow(1.0 - z * std::conj(a), 3.0);
        CHECK(std::abs(got1 - want1) < 1e-5 * std::max(1.0, std::abs(want1)));
    }
}

TEST_CASE("kernel at the origin reduces to c_0") {
    for (const auto& w :
         {RadialWeight::power_log(0, 0), RadialWeight::power_log(1.0, 0.0)}) {
        const KernelSeries k = build_kernel(w, 0.5, 1e-9);
        const cd v = eval_kernel_derivative(k, 0, cd(0, 0), cd(0.3, 0.1));
        CHECK(v.real() == doctest::Approx(k.coeffs[0]));
        CHECK(v.imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("radius certification errors") {
    const KernelSeries k =
        build_kernel(RadialWeight::power_log(0, 0), 0.6, 1e-8);
    CHECK_THROWS_AS(eval_kernel_derivative(k, 0, cd(0.7, 0), cd(0.1, 0)),
                    KernelError);
    CHECK_THROWS_AS(k.certified_remainder(0.61, 0), KernelError);
    CHECK(k.certified_remainder(0.6, 2) <= 1e-8);
}

TEST_CASE("kernel norm comparison integral: closed forms") {
    const RadialWeight one = RadialWeight::power_log(0, 0);
    for (double a : {0.3, 0.6, 0.9}) {
        const auto b1 = kernel_norm_bound(one, 1.0, 1, a);
        CHECK(b1.integral == doctest::Approx(a / (1.0 - a)).epsilon(1e-8));
        const auto b2 = kernel_norm_bound(one, 2.0, 1, a);
        CHECK(b2.integral ==
              doctest::Approx((std::pow(1.0 - a, -4.0) - 1.0) / 4.0)
                  .epsilon(1e-8));
    }
}

TEST_CASE("kernel norm integral sits below its simplified bound") {
    const RadialWeight one = RadialWeight::power_log(0, 0);
    double lo = kInf;
    for (int j = 4; j <= 30; j += 2) {
        const double a = 1.0 - std::ldexp(1.0, -j);
        const auto b = kernel_norm_bound(one, 2.0, 1, a);
        const double ratio = b.integral / b.upper;
        CHECK(ratio <= 1.0 + 1e-9);
        lo = std::min(lo, ratio);
    }
    CHECK(lo > 0.2); // uniformly bounded below on the probe range
}

TEST_CASE("kernel norm bound: small p requires a decay exponent") {
    const RadialWeight one = RadialWeight::power_log(0, 0);
    CHECK_THROWS_AS(kernel_norm_bound(one, 0.5, 1, 0.5), std::domain_error);
    const auto b = kernel_norm_bound(one, 0.5, 3, 0.5, 1.0);
    CHECK(b.integral > 0.0);
    CHECK(b.upper > 0.0);
}

TEST_CASE("averaged-kernel mean lower bound") {
    const RadialWeight one = RadialWeight::power_log(0, 0);
    const int N = 2;
    const double a = 0.9;
    const KernelSeries k = build_kernel(one, a, 1e-5 * std::pow(1 - a, -4), N);

    SUBCASE("the two branch formulas agree at t = a") {
        const auto at = kernel_mean_lower_bound(k, one, 2.0, N, a, a);
        const double direct = std::pow(one.tail(a), 2.0) /
                              (std::pow(one.tail(a), 2.0) *
                               std::pow(1.0 - a, 2.0 * (N + 1.0) - 1.0));
        CHECK(at.rhs == doctest::Approx(direct).epsilon(1e-12));
    }

    SUBCASE("rhs does not depend on t below a") {
        const auto t1 = kernel_mean_lower_bound(k, one, 2.0, N, a, 0.2);
        const auto t2 = kernel_mean_lower_bound(k, one, 2.0, N, a, 0.7);
        CHECK(t1.rhs == doctest::Approx(t2.rhs));
    }

    SUBCASE("lower bound positive across radii") {
        for (double aa : {0.8, 0.9}) {
            const KernelSeries kk =
                build_kernel(one, aa, 1e-5 * std::pow(1 - aa, -4), N);
            for (double t : {0.0, 0.4 * aa, aa}) {
                const auto b = kernel_mean_lower_bound(kk, one, 2.0, N, aa, t);
                CHECK(b.lhs > 0.0);
                CHECK(b.rhs > 0.0);
                CHECK(b.lhs / b.rhs > 1e-3);
            }
        }
    }

    SUBCASE("radius precondition") {
        CHECK_THROWS_AS(kernel_mean_lower_bound(k, one, 2.0, N, 0.5, 0.1),
                        std::domain_error);
    }
}
