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
#include "hetnet/numerics.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "hetnet/error.hpp"

namespace hetnet::numerics {

namespace {

// 21-point Kronrod abscissae on [-1, 1] (positive half, descending); the odd
// entries are the 10-point Gauss nodes.
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208067851006, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
};

constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
};

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

struct ByError {
    bool operator()(const Segment& x, const Segment& y) const
    {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a; // deterministic among equal errors
    }
};

double checked(const Integrand& f, double x)
{
    const double v = f(x);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "integrand: non-finite value " << v << " at abscissa " << x;
        throw DomainError(msg.str());
    }
    return v;
}

// One Gauss-Kronrod 10/21 panel with the QUADPACK error heuristic.
Segment gk21(const Integrand& f, double a, double b)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 10> lower{};
    std::array<double, 10> upper{};
    const double fc = checked(f, center);
    double kronrod = fc * kKronrodWeights[10];
    double gauss = 0.0;
    double abs_sum = std::abs(kronrod);

    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        lower[j] = checked(f, center - dx);
        upper[j] = checked(f, center + dx);
        const double pair = lower[j] + upper[j];
        kronrod += kKronrodWeights[j] * pair;
        abs_sum += kKronrodWeights[j] * (std::abs(lower[j]) + std::abs(upper[j]));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }

    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        asc += kKronrodWeights[j] * (std::abs(lower[j] - mean) + std::abs(upper[j] - mean));
    }

    const double result = kronrod * half;
    const double res_abs = abs_sum * std::abs(half);
    const double res_asc = asc * std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    if (res_abs > tiny / (50.0 * eps)) {
        err = std::max(50.0 * eps * res_abs, err);
    }
    return {a, b, result, err};
}

double adaptive(const Integrand& g, double a, double b, const QuadratureSpec& spec)
{
    spec.validate();

    std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
    Segment first = gk21(g, a, b);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);

    auto converged = [&] {
        return total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    };

    while (!converged()) {
        if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
            std::ostringstream msg;
            msg << "quadrature: " << spec.max_subdivisions
                << " subdivisions exhausted (estimate " << total << ", error " << total_err << ")";
            throw NonConvergence(msg.str());
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            std::ostringstream msg;
            msg << "quadrature: subinterval [" << worst.a << ", " << worst.b
                << "] cannot be bisected further (error " << total_err << ")";
            throw NonConvergence(msg.str());
        }
        const Segment left = gk21(g, worst.a, mid);
        const Segment right = gk21(g, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum in a fixed order so the running updates do not leak rounding.
    std::vector<Segment> parts;
    parts.reserve(heap.size());
    while (!heap.empty()) {
        parts.push_back(heap.top());
        heap.pop();
    }
    std::sort(parts.begin(), parts.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    double sum = 0.0;
    for (const Segment& s : parts) sum += s.value;
    return sum;
}

} // namespace

void QuadratureSpec::validate() const
{
    if (!(rel_tol > 0.0)) detail::domain_fail("rel_tol", "> 0");
    if (!(abs_tol >= 0.0)) detail::domain_fail("abs_tol", ">= 0");
    if (max_subdivisions < 1) detail::domain_fail("max_subdivisions", ">= 1");
}

void BracketSpec::validate() const
{
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) detail::domain_fail("bracket", "lo < hi");
    if (!(x_tol > 0.0)) detail::domain_fail("x_tol", "> 0");
    if (max_iters < 1) detail::domain_fail("max_iters", ">= 1");
}

double integrate_finite(const Integrand& f, double a, double b, const QuadratureSpec& spec)
{
    if (!(a <= b)) detail::domain_fail("interval", "a <= b");
    if (a == b) return 0.0;
    return adaptive(f, a, b, spec);
}

double integrate_lower_to_inf(const Integrand& f, double lower, const QuadratureSpec& spec)
{
    if (!std::isfinite(lower) || lower < 0.0) detail::domain_fail("lower", "finite and >= 0");
    // z = lower + t/(1-t), integrated in s = 1 - t so the infinite end sits
    // at s = 0, where doubles resolve s (and hence z) far beyond 1/epsilon.
    const Integrand mapped = [&f, lower](double s) {
        if (s <= 0.0) return 0.0;
        const double z = lower + (1.0 - s) / s;
        if (!std::isfinite(z)) return 0.0;
        return f(z) / s / s;
    };
    return adaptive(mapped, 0.0, 1.0, spec);
}

double integrate_zero_to_inf(const Integrand& f, const QuadratureSpec& spec)
{
    return integrate_lower_to_inf(f, 0.0, spec);
}

double bisect(const std::function<double(double)>& g, const BracketSpec& bracket)
{
    bracket.validate();
    double lo = bracket.lo;
    double hi = bracket.hi;
    const double g_lo = g(lo);
    const double g_hi = g(hi);
    if (std::isnan(g_lo) || std::isnan(g_hi)) {
        throw DomainError("bisect: NaN function value at a bracket endpoint");
    }
    if (g_lo == 0.0 || g_hi == 0.0 || std::signbit(g_lo) == std::signbit(g_hi)) {
        std::ostringstream msg;
        msg << "bisect: g(" << lo << ") = " << g_lo << " and g(" << hi << ") = " << g_hi
            << " do not have opposite nonzero signs";
        throw BadBracket(msg.str());
    }
    const bool lo_negative = g_lo < 0.0;

    for (int iter = 0; iter < bracket.max_iters; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= bracket.x_tol) return mid;
        const double g_mid = g(mid);
        if (!std::isfinite(g_mid)) throw DomainError("bisect: non-finite function value inside bracket");
        if (g_mid == 0.0) return mid;
        if ((g_mid < 0.0) == lo_negative) {
            lo = mid;
        } else {
            hi = mid;
        }
        assert(lo < hi);
    }
    if (hi - lo <= bracket.x_tol) return 0.5 * (lo + hi);
    std::ostringstream msg;
    msg << "bisect: bracket width " << (hi - lo) << " above x_tol after " << bracket.max_iters << " iterations";
    throw NonConvergence(msg.str());
}

} // namespace hetnet::numerics
