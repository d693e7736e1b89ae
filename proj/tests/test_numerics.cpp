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

#include "hetnet/error.hpp"
#include "hetnet/numerics.hpp"
#include "oracles.hpp"

using namespace hetnet;
using namespace hetnet::numerics;

namespace {

QuadratureSpec tight(double rel) { return {.rel_tol = rel, .abs_tol = 1e-14, .max_subdivisions = 2000}; }

double damped(double z) { return z == 0.0 ? 1.0 : -std::expm1(-z) / (z * (1.0 + z) * (1.0 + z)); }

} // namespace

TEST_CASE("exponential decay integrates to one")
{
    CHECK(integrate_zero_to_inf([](double z) { return std::exp(-z); }, tight(1e-10)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("inverse square of 1+z integrates to one")
{
    CHECK(integrate_zero_to_inf([](double z) { return 1.0 / ((1.0 + z) * (1.0 + z)); }, tight(1e-10)) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("damped integrand agrees with a log-grid trapezoid oracle")
{
    // Head [0, 1e-8] contributes ~1e-8 (integrand -> 1); tail beyond 1e4 is
    // below int z^-3 = 5e-9. Both are added analytically.
    const double body = oracle::log_trapezoid(damped, 1e-8, 1e4, 400000);
    const double reference = body + 1e-8 + 0.5e-8;
    const double value = integrate_zero_to_inf(damped, tight(1e-8));
    CHECK(std::abs(value - reference) < 2e-8);
    CHECK(value == doctest::Approx(oracle::exp_sinh(damped)).epsilon(1e-9));
}

TEST_CASE("arctan tail from a finite lower limit")
{
    CHECK(integrate_lower_to_inf([](double u) { return 1.0 / (1.0 + u * u); }, 1.0, tight(1e-10)) ==
          doctest::Approx(std::numbers::pi / 4).epsilon(1e-9));
}

TEST_CASE("power-law tail from a finite lower limit")
{
    CHECK(integrate_lower_to_inf([](double u) { return 1.0 / (u * u); }, 2.0, tight(1e-10)) ==
          doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("gaussian-type tail agrees with trapezoid oracle and closed form")
{
    const auto f = [](double u) { return -std::expm1(-1.0 / (u * u)); };
    // Integration by parts gives e^-1 - 1 + sqrt(pi) erf(1).
    const double closed = std::exp(-1.0) - 1.0 + std::sqrt(std::numbers::pi) * std::erf(1.0);
    // Trapezoid on [1, 1e6] plus the tail int u^-2 = 1e-6 (next term is O(1e-18)).
    const double trapezoid = oracle::log_trapezoid(f, 1.0, 1e6, 400000) + 1e-6;
    const double value = integrate_lower_to_inf(f, 1.0, tight(1e-10));
    CHECK(value == doctest::Approx(closed).epsilon(1e-10));
    CHECK(std::abs(trapezoid - closed) < 1e-9);
}

TEST_CASE("slowly decaying tails keep their far contribution")
{
    // u^-1.25 from 1: the part beyond 1e16 alone is 4e-4 of the total.
    const double value =
        integrate_lower_to_inf([](double u) { return std::pow(u, -1.25); }, 1.0, tight(1e-10));
    CHECK(value == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("finite interval integration")
{
    CHECK(integrate_finite([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, tight(1e-12)) ==
          doctest::Approx(2.0).epsilon(1e-11));
    CHECK(integrate_finite([](double x) { return x; }, 3.0, 3.0) == 0.0);
    CHECK_THROWS_AS(integrate_finite([](double x) { return x; }, 1.0, 0.0), DomainError);
}

TEST_CASE("integration is linear")
{
    const auto f = [](double z) { return std::exp(-2.0 * z); };
    const auto g = [](double z) { return 1.0 / ((1.0 + z) * (1.0 + z) * (1.0 + z)); };
    const QuadratureSpec spec = tight(1e-10);
    const double a = 2.5;
    const double b = -0.75;
    const double combined = integrate_zero_to_inf([&](double z) { return a * f(z) + b * g(z); }, spec);
    const double separate = a * integrate_zero_to_inf(f, spec) + b * integrate_zero_to_inf(g, spec);
    CHECK(std::abs(combined - separate) <= 2.0 * spec.rel_tol * (std::abs(a) + std::abs(b)));
}

TEST_CASE("lower limit is equivalent to translating the integrand")
{
    const auto f = [](double u) { return std::exp(-u) / (1.0 + u); };
    const QuadratureSpec spec = tight(1e-10);
    for (double lower : {0.5, 2.0, 7.0}) {
        const double direct = integrate_lower_to_inf(f, lower, spec);
        const double shifted = integrate_zero_to_inf([&](double v) { return f(v + lower); }, spec);
        CHECK(direct == doctest::Approx(shifted).epsilon(2e-10));
    }
}

TEST_CASE("repeated integration is bit-identical")
{
    const double first = integrate_zero_to_inf(damped);
    const double second = integrate_zero_to_inf(damped);
    CHECK(std::memcmp(&first, &second, sizeof first) == 0);
}

TEST_CASE("quadrature specifications are validated")
{
    const auto one = [](double z) { return std::exp(-z); };
    CHECK_THROWS_AS(integrate_zero_to_inf(one, {.rel_tol = 0.0}), DomainError);
    CHECK_THROWS_AS(integrate_zero_to_inf(one, {.rel_tol = 1e-8, .abs_tol = -1.0}), DomainError);
    CHECK_THROWS_AS(integrate_zero_to_inf(one, {.rel_tol = 1e-8, .abs_tol = 0.0, .max_subdivisions = 0}), DomainError);
    CHECK_THROWS_AS(integrate_lower_to_inf(one, -1.0), DomainError);
}

TEST_CASE("exhausted subdivision budget reports non-convergence")
{
    const auto rough = [](double z) { return std::abs(std::sin(40.0 * z)) * std::exp(-z); };
    CHECK_THROWS_AS(integrate_zero_to_inf(rough, {.rel_tol = 1e-14, .abs_tol = 0.0, .max_subdivisions = 3}),
                    NonConvergence);
}

TEST_CASE("non-finite integrand values are rejected")
{
    CHECK_THROWS_AS(integrate_finite([](double) { return std::nan(""); }, 0.0, 1.0), DomainError);
}

TEST_CASE("bisection finds a linear root")
{
    const double root = bisect([](double u) { return u - 0.5; }, {.lo = 0.0, .hi = 1.0, .x_tol = 1e-8});
    CHECK(std::abs(root - 0.5) <= 1e-8);
}

TEST_CASE("bisection finds the first zero of cosine")
{
    const double root = bisect([](double u) { return std::cos(u); }, {.lo = 1.0, .hi = 2.0, .x_tol = 1e-10});
    CHECK(std::abs(root - std::numbers::pi / 2) <= 1e-9);
}

TEST_CASE("bisection keeps a sign change in its bracket")
{
    // Decreasing function: the returned point must lie where the sign flips.
    const auto g = [](double u) { return 0.3 - u * u; };
    const double root = bisect(g, {.lo = 0.0, .hi = 1.0, .x_tol = 1e-9});
    CHECK(g(root - 1e-9) > 0.0);
    CHECK(g(root + 1e-9) < 0.0);
}

TEST_CASE("bisection accepts an infinite endpoint value")
{
    const double root = bisect([](double u) { return u >= 1.0 ? -INFINITY : 0.25 - u; }, {.lo = 0.0, .hi = 1.0});
    CHECK(std::abs(root - 0.25) <= 1e-7);
}

TEST_CASE("bisection errors")
{
    CHECK_THROWS_AS(bisect([](double u) { return u + 1.0; }, {.lo = 0.0, .hi = 1.0}), BadBracket);
    CHECK_THROWS_AS(bisect([](double u) { return u; }, {.lo = 0.0, .hi = 1.0}), BadBracket);
    CHECK_THROWS_AS(bisect([](double) { return std::nan(""); }, {.lo = 0.0, .hi = 1.0}), DomainError);
    CHECK_THROWS_AS(bisect([](double u) { return u - 0.5; }, {.lo = 1.0, .hi = 0.0}), DomainError);
    CHECK_THROWS_AS(bisect([](double u) { return u - 0.5; }, {.lo = 0.0, .hi = 1.0, .x_tol = 0.0}), DomainError);
    CHECK_THROWS_AS(bisect([](double u) { return u - 0.3; }, {.lo = 0.0, .hi = 1.0, .x_tol = 1e-12, .max_iters = 5}),
                    NonConvergence);
}
