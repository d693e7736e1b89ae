// Copyright 2026 the hetnet-ase authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "hetnet/error.hpp"
#include "hetnet/kernels.hpp"
#include "oracles.hpp"

using namespace hetnet;
using hetnet::kernels::kernel_F;
using hetnet::kernels::kernel_H;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("path-loss exponent must exceed two")
{
    CHECK_THROWS_AS(PathLoss(2.0), DomainError);
    CHECK_THROWS_AS(PathLoss(1.5), DomainError);
    CHECK_THROWS_AS(PathLoss(std::nan("")), DomainError);
    CHECK(PathLoss(4.0).delta() == 0.5);
}

TEST_CASE("F reduces to one at zero geometry or zero shape")
{
    const PathLoss pl(4.0);
    CHECK(kernel_F(0.0, 3.0, pl) == 1.0);
    for (double x : {0.1, 1.0, 17.0}) CHECK(kernel_F(x, 0.0, pl) == 1.0);
}

TEST_CASE("F(1, 1) at alpha 4 is 1 + pi/4")
{
    CHECK(kernel_F(1.0, 1.0, PathLoss(4.0)) == doctest::Approx(1.0 + std::numbers::pi / 4).epsilon(1e-11));
}

TEST_CASE("H at zero and its value at one")
{
    const PathLoss pl(4.0);
    CHECK(kernel_H(0.0, pl) == 1.0);
    CHECK(kernel_H(2.0, pl) > kernel_H(1.0, pl));
    // 1 + int_1^inf 1 - exp(-u^-2) du; trapezoid body on [1, 1e6] plus int u^-2 tail.
    const double trapezoid =
        1.0 + oracle::log_trapezoid([](double u) { return -std::expm1(-1.0 / (u * u)); }, 1.0, 1e6, 400000) + 1e-6;
    const double closed = std::exp(-1.0) + std::sqrt(std::numbers::pi) * std::erf(1.0);
    CHECK(kernel_H(1.0, pl) == doctest::Approx(closed).epsilon(1e-11));
    CHECK(std::abs(trapezoid - closed) < 1e-9);
}

TEST_CASE("kernels agree with the exp-sinh oracle")
{
    struct Point {
        double x, y, alpha;
    };
    for (const Point p : {Point{1.0, 1.0, 4.0}, Point{2.5, 3.0, 3.0}, Point{0.03, 7.0, 4.0}, Point{40.0, 2.0, 4.0},
                          Point{1.7, 2.6, 3.3}, Point{5.0, 10.0, 6.0}, Point{0.8, 1.0, 2.5}}) {
        CAPTURE(p.x);
        CAPTURE(p.y);
        CAPTURE(p.alpha);
        const PathLoss pl(p.alpha);
        CHECK(kernel_F(p.x, p.y, pl) == doctest::Approx(oracle::kernel_F(p.x, p.y, p.alpha)).epsilon(1e-10));
        CHECK(kernel_H(p.x, pl) == doctest::Approx(oracle::kernel_H(p.x, p.alpha)).epsilon(1e-10));
    }
}

TEST_CASE("kernels are at least one and monotone on random grids")
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> log_x(-3.0, 3.0);
    std::uniform_real_distribution<double> shape(0.2, 12.0);
    std::uniform_real_distribution<double> exponent(2.2, 6.0);
    for (int i = 0; i < 60; ++i) {
        const PathLoss pl(exponent(rng));
        const double x = std::pow(10.0, log_x(rng));
        const double y = shape(rng);
        const double f = kernel_F(x, y, pl);
        CAPTURE(x);
        CAPTURE(y);
        CAPTURE(pl.alpha());
        CHECK(f >= 1.0);
        CHECK(kernel_H(x, pl) >= 1.0);
        CHECK(kernel_F(x * 1.3, y, pl) >= f);
        CHECK(kernel_F(x, y + 0.5, pl) >= f);
    }
}

TEST_CASE("H is strictly increasing on a log-spaced grid")
{
    for (double alpha : {2.5, 4.0, 5.0}) {
        const PathLoss pl(alpha);
        double previous = kernel_H(1e-4, pl);
        for (int k = 1; k <= 32; ++k) {
            const double h = kernel_H(1e-4 * std::pow(10.0, k * 0.25), pl);
            CHECK(h > previous);
            previous = h;
        }
    }
}

TEST_CASE("kernels are continuous")
{
    const PathLoss pl(4.0);
    for (double x : {0.05, 1.0, 30.0}) {
        for (double delta : {1e-3, 1e-6}) {
            CHECK(std::abs(kernel_F(x + delta, 3.0, pl) - kernel_F(x, 3.0, pl)) < 10.0 * delta);
            CHECK(std::abs(kernel_H(x + delta, pl) - kernel_H(x, pl)) < 10.0 * delta);
        }
    }
}

TEST_CASE("kernel arguments are validated")
{
    const PathLoss pl(4.0);
    CHECK_THROWS_AS(kernel_F(-1.0, 1.0, pl), DomainError);
    CHECK_THROWS_AS(kernel_F(1.0, -1.0, pl), DomainError);
    CHECK_THROWS_AS(kernel_F(std::nan(""), 1.0, pl), DomainError);
    CHECK_THROWS_AS(kernel_H(INFINITY, pl), DomainError);
}

TEST_CASE("memoization is invisible")
{
    const PathLoss pl(3.7);
    kernels::clear_cache();
    CHECK(kernels::cache_size() == 0);
    kernels::set_cache_enabled(false);
    const double f_cold = kernel_F(1.37, 2.0, pl);
    const double h_cold = kernel_H(0.91, pl);
    CHECK(kernels::cache_size() == 0);
    kernels::set_cache_enabled(true);
    const double f_miss = kernel_F(1.37, 2.0, pl);
    const double h_miss = kernel_H(0.91, pl);
    CHECK(kernels::cache_size() == 2);
    CHECK(same_bits(f_cold, f_miss));
    CHECK(same_bits(h_cold, h_miss));
    CHECK(same_bits(kernel_F(1.37, 2.0, pl), f_cold));
    CHECK(same_bits(kernel_H(0.91, pl), h_cold));
    CHECK(kernels::cache_enabled());
}
