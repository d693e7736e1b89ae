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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "hetnet/error.hpp"
#include "hetnet/rate_model.hpp"
#include "oracles.hpp"

using namespace hetnet;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

NetworkModel two_tier()
{
    NetworkModel m;
    m.macro = {1.0, 20.0, 10, 3};
    m.small = {5.0, 1.0, 5, 2};
    m.pl = PathLoss(4.0);
    m.bias = 4.0;
    return m;
}

// Regression bounds measured on the two-tier configuration above.
constexpr double kApproxRelErrorBound = 0.016; // measured max 0.01494
constexpr double kCrossUsersVariationBound = 0.015; // measured 0.01398

std::string failure_message(const NetworkModel& m)
{
    try {
        m.validate();
    } catch (const DomainError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("model validation names the offending field")
{
    NetworkModel m = two_tier();
    m.macro.density = 0.0;
    CHECK(failure_message(m).find("macro.density") == 0);
    m = two_tier();
    m.small.power = -1.0;
    CHECK(failure_message(m).find("small.power") == 0);
    m = two_tier();
    m.small.users = 6;
    CHECK(failure_message(m).find("small.users") == 0);
    m = two_tier();
    m.macro.antennas = 0;
    CHECK(failure_message(m).find("macro.antennas") == 0);
    m = two_tier();
    m.bias = 0.5;
    CHECK(failure_message(m).find("bias") == 0);
    CHECK(failure_message(two_tier()).empty());
}

TEST_CASE("cross weights are reciprocal")
{
    const NetworkModel m = two_tier();
    const double w = 5.0 * std::sqrt(4.0 / 20.0);
    CHECK(m.cross_weight(TierId::Macro) == doctest::Approx(w).epsilon(1e-15));
    CHECK(m.cross_weight(TierId::Small) == doctest::Approx(1.0 / w).epsilon(1e-15));
}

TEST_CASE("identical tiers without bias have identical exact rates")
{
    NetworkModel m;
    m.macro = {2.0, 3.0, 4, 2};
    m.small = m.macro;
    m.bias = 1.0;
    CHECK(same_bits(rate_exact(m, TierId::Macro), rate_exact(m, TierId::Small)));
}

TEST_CASE("rates agree with the exp-sinh oracle")
{
    NetworkModel a = two_tier();
    NetworkModel b = two_tier();
    b.pl = PathLoss(3.3);
    b.bias = 2.5;
    NetworkModel c;
    c.macro = {1.0, 10.0, 4, 4};
    c.small = {0.3, 2.0, 3, 1};
    c.pl = PathLoss(5.0);
    c.bias = 1.0;
    for (const NetworkModel& m : {a, b, c}) {
        for (TierId t : kTiers) {
            CAPTURE(m.pl.alpha());
            CAPTURE(to_string(t));
            CHECK(rate_exact(m, t) == doctest::Approx(oracle::rate_exact(m, t)).epsilon(5e-9));
            CHECK(rate_approx(m, t) == doctest::Approx(oracle::rate_approx(m, t)).epsilon(5e-9));
        }
    }
}

TEST_CASE("exact macro rate grows with the density ratio under bias")
{
    NetworkModel m = two_tier();
    double previous = 0.0;
    for (double ratio : {0.1, 1.0, 10.0}) {
        m.small.density = ratio * m.macro.density;
        const double r = rate_exact(m, TierId::Macro);
        CHECK(r > previous);
        previous = r;
    }
}

TEST_CASE("approximate rate ignores the other tier's antennas and users")
{
    NetworkModel m = two_tier();
    const double approx = rate_approx(m, TierId::Macro);
    const double exact = rate_exact(m, TierId::Macro);
    m.small.antennas = 8;
    m.small.users = 8;
    CHECK(same_bits(rate_approx(m, TierId::Macro), approx));

    m = two_tier();
    m.small.antennas = 9;
    CHECK(same_bits(rate_exact(m, TierId::Macro), exact));
}

TEST_CASE("unbiased approximation reduces to the single-tier form")
{
    NetworkModel m = two_tier();
    m.bias = 1.0;
    for (TierId t : kTiers) {
        const TierParams& p = m.tier(t);
        const double unbiased = rate_approx_unbiased(p.antennas, p.users, m.pl);
        CHECK(same_bits(rate_approx(m, t), unbiased));
        CHECK(detail::rate_approx_general(m, t) == doctest::Approx(unbiased).epsilon(2e-8));
    }
}

TEST_CASE("unbiased approximation orders and invariances")
{
    const PathLoss pl(4.0);
    CHECK(rate_approx_unbiased(10, 3, pl) > rate_approx_unbiased(10, 10, pl));
    NetworkModel m = two_tier();
    m.bias = 1.0;
    m.macro.antennas = 1;
    m.macro.users = 1;
    const double single = rate_approx_unbiased(1, 1, pl);
    m.macro.density = 7.0;
    m.small.density = 0.2;
    m.small.power = 33.0;
    CHECK(same_bits(rate_approx(m, TierId::Macro), single));
    CHECK_THROWS_AS(rate_approx_unbiased(3, 0, pl), DomainError);
    CHECK_THROWS_AS(rate_approx_unbiased(3, 4, pl), DomainError);
}

TEST_CASE("approximation error stays within the recorded bound")
{
    NetworkModel m = two_tier();
    for (double ratio : {0.1, 1.0, 10.0}) {
        for (double bias : {1.0, 4.0}) {
            m.small.density = ratio;
            m.bias = bias;
            for (TierId t : kTiers) {
                const RateReport r = rate_report(m, t);
                CAPTURE(ratio);
                CAPTURE(bias);
                CHECK(r.exact > 0.0);
                CHECK(r.approx > 0.0);
                CHECK(std::abs(r.approx - r.exact) / r.exact <= kApproxRelErrorBound);
            }
        }
    }
}

TEST_CASE("rates depend only on density and power ratios")
{
    const NetworkModel base = two_tier();
    for (double c : {0.01, 3.0, 250.0}) {
        NetworkModel d = base;
        d.macro.density *= c;
        d.small.density *= c;
        NetworkModel p = base;
        p.macro.power *= c;
        p.small.power *= c;
        for (TierId t : kTiers) {
            const double e = rate_exact(base, t);
            const double a = rate_approx(base, t);
            CHECK(std::abs(rate_exact(d, t) - e) <= 2e-8 * e);
            CHECK(std::abs(rate_exact(p, t) - e) <= 2e-8 * e);
            CHECK(std::abs(rate_approx(d, t) - a) <= 2e-8 * a);
            CHECK(std::abs(rate_approx(p, t) - a) <= 2e-8 * a);
        }
    }
}

TEST_CASE("approximate rates move with ratios and bias as expected")
{
    const NetworkModel m = two_tier();
    const MonotonicityReport macro = monotonicity_report(m, TierId::Macro);
    const MonotonicityReport small = monotonicity_report(m, TierId::Small);
    const auto increasing = [](const std::vector<AxisSample>& s) {
        return std::adjacent_find(s.begin(), s.end(), [](auto& a, auto& b) { return !(b.rate > a.rate); }) == s.end();
    };
    const auto decreasing = [](const std::vector<AxisSample>& s) {
        return std::adjacent_find(s.begin(), s.end(), [](auto& a, auto& b) { return !(b.rate < a.rate); }) == s.end();
    };
    CHECK(macro.density_ratio.size() == 5);
    CHECK(increasing(macro.density_ratio));
    CHECK(increasing(macro.power_ratio));
    CHECK(increasing(macro.bias));
    CHECK(increasing(small.density_ratio));
    CHECK(increasing(small.power_ratio));
    CHECK(decreasing(small.bias));
}

TEST_CASE("without bias the approximations ignore both ratios")
{
    NetworkModel m = two_tier();
    m.bias = 1.0;
    const double tol = 2.0 * numerics::QuadratureSpec{}.rel_tol;
    for (TierId t : kTiers) {
        const MonotonicityReport r = monotonicity_report(m, t);
        const double ref = rate_approx(m, t);
        for (const auto* axis : {&r.density_ratio, &r.power_ratio}) {
            for (const AxisSample& s : *axis) CHECK(std::abs(s.rate - ref) <= tol * ref);
        }
    }
}

TEST_CASE("exact macro rate is insensitive to the small-tier user count")
{
    NetworkModel m = two_tier();
    double lo = INFINITY;
    double hi = 0.0;
    for (int k = 1; k <= m.small.antennas; ++k) {
        m.small.users = k;
        const double r = rate_exact(m, TierId::Macro);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK((hi - lo) / lo <= kCrossUsersVariationBound);
}

TEST_CASE("silent tiers are rejected by rate operations")
{
    NetworkModel m = two_tier();
    m.small.users = 0;
    CHECK_NOTHROW(m.validate());
    CHECK_THROWS_AS(rate_exact(m, TierId::Macro), DomainError);
    CHECK_THROWS_AS(rate_exact(m, TierId::Small), DomainError);
    CHECK_THROWS_AS(rate_approx(m, TierId::Small), DomainError);
}
