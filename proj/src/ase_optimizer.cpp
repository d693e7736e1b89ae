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
#include "hetnet/ase_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hetnet/error.hpp"

namespace hetnet {

namespace {

void check_fraction(double u)
{
    if (!std::isfinite(u) || u < 0.0 || u > 1.0) detail::domain_fail("u", "0 <= u <= 1");
}

// Interference denominator shared by the approximate rate and G: H(z) + rho H(z/B)
// for macro users, rho H(zB) + H(z) for small-cell users. Returns rho through `weight`.
struct ApproxDenominator {
    const NetworkModel& model;
    TierId tier;
    double weight;
    double cross_scale;

    ApproxDenominator(const NetworkModel& m, TierId t)
        : model(m), tier(t), weight(m.cross_weight(t)),
          cross_scale(t == TierId::Macro ? 1.0 / m.bias : m.bias)
    {
    }

    double operator()(double z) const
    {
        return kernels::kernel_H(z, model.pl) + weight * kernels::kernel_H(z * cross_scale, model.pl);
    }
};

double tier_term(const NetworkModel& model, TierId tier, const numerics::QuadratureSpec& quad)
{
    const TierParams& p = model.tier(tier);
    if (p.users == 0) return 0.0;
    return p.density * p.users * rate_approx(model, tier, quad);
}

} // namespace

double ase_approx(const NetworkModel& model, const numerics::QuadratureSpec& quad)
{
    model.validate();
    return tier_term(model, TierId::Macro, quad) + tier_term(model, TierId::Small, quad);
}

double ase_exact(const NetworkModel& model, const numerics::QuadratureSpec& quad)
{
    model.validate();
    if (model.macro.users < 1) detail::domain_fail("macro.users", ">= 1 for exact ASE");
    if (model.small.users < 1) detail::domain_fail("small.users", ">= 1 for exact ASE");
    return model.macro.density * model.macro.users * rate_exact(model, TierId::Macro, quad) +
           model.small.density * model.small.users * rate_exact(model, TierId::Small, quad);
}

double g_value(double u, TierId tier, const NetworkModel& model, const numerics::QuadratureSpec& quad)
{
    model.validate();
    check_fraction(u);
    if (u == 0.0 || u == 1.0) return 0.0;
    const ApproxDenominator denom(model, tier);
    const double scale = 1.0 + denom.weight;
    const double c = 1.0 / u - 1.0;
    const numerics::Integrand integrand = [&](double z) {
        if (z == 0.0) return 1.0 - u;
        return u * scale * (-std::expm1(-c * z) / z) / denom(z);
    };
    return numerics::integrate_zero_to_inf(integrand, quad);
}

double g_derivative(double u, TierId tier, const NetworkModel& model, const numerics::QuadratureSpec& quad)
{
    model.validate();
    check_fraction(u);
    if (u == 0.0) detail::domain_fail("u", "> 0 for the derivative");
    // At u = 1 the integrand tends to -(1+rho)/D(z) and D grows like z^{2/alpha},
    // so the integral diverges to -inf.
    if (u == 1.0) return -std::numeric_limits<double>::infinity();
    const ApproxDenominator denom(model, tier);
    const double scale = 1.0 + denom.weight;
    const double c = 1.0 / u - 1.0;
    const numerics::Integrand integrand = [&](double z) {
        if (z == 0.0) return -1.0;
        const double decay = std::exp(-c * z);
        return scale * (-std::expm1(-c * z) / z - decay / u) / denom(z);
    };
    return numerics::integrate_zero_to_inf(integrand, quad);
}

double optimal_fraction(TierId tier, const NetworkModel& model, const OptimizerOptions& opts)
{
    model.validate();
    const auto slope = [&](double u) { return g_derivative(u, tier, model, opts.quad); };
    return numerics::bisect(slope, opts.bracket);
}

Allocation optimal_users(const NetworkModel& model, const OptimizerOptions& opts)
{
    model.validate();
    return round_fractions(model, optimal_fraction(TierId::Macro, model, opts),
                           optimal_fraction(TierId::Small, model, opts), opts);
}

Allocation round_fractions(const NetworkModel& model, double u_macro, double u_small, const OptimizerOptions& opts)
{
    model.validate();
    check_fraction(u_macro);
    check_fraction(u_small);
    Allocation out;
    out.u_macro = u_macro;
    out.u_small = u_small;

    const auto candidates = [](double u, int antennas) {
        const double target = u * (antennas + 1);
        const int lo = std::clamp(static_cast<int>(std::floor(target)), 1, antennas);
        const int hi = std::clamp(static_cast<int>(std::ceil(target)), 1, antennas);
        return hi == lo ? std::vector<int>{lo} : std::vector<int>{lo, hi};
    };
    const std::vector<int> macro_k = candidates(out.u_macro, model.macro.antennas);
    const std::vector<int> small_k = candidates(out.u_small, model.small.antennas);

    // Candidates are visited in increasing K, and a later one must win by more
    // than the tie tolerance, so ties resolve to the smaller count.
    const auto improves = [&](double challenger, double incumbent) {
        return challenger - incumbent > opts.tie_rel_tol * std::max(std::abs(challenger), std::abs(incumbent));
    };

    NetworkModel chosen = model;
    if (opts.rounding == RoundingMetric::Approx) {
        for (TierId tier : kTiers) {
            const auto& ks = tier == TierId::Macro ? macro_k : small_k;
            int best = 0;
            double best_score = 0.0;
            for (int k : ks) {
                NetworkModel m = model;
                m.tier(tier).users = k;
                const double score = m.tier(tier).density * k * rate_approx(m, tier, opts.quad);
                if (best == 0 || improves(score, best_score)) {
                    best = k;
                    best_score = score;
                }
            }
            chosen.tier(tier).users = best;
        }
    } else {
        double best_score = 0.0;
        bool first = true;
        for (int km : macro_k) {
            for (int ks : small_k) {
                NetworkModel m = model;
                m.macro.users = km;
                m.small.users = ks;
                const double score = ase_exact(m, opts.quad);
                if (first || improves(score, best_score)) {
                    chosen = m;
                    best_score = score;
                    first = false;
                }
            }
        }
    }

    out.k_macro = chosen.macro.users;
    out.k_small = chosen.small.users;
    out.ase_approx = ase_approx(chosen, opts.quad);
    out.ase_exact = ase_exact(chosen, opts.quad);
    return out;
}

double relaxed_ase_approx(const NetworkModel& model, const OptimizerOptions& opts)
{
    model.validate();
    return relaxed_ase_approx(model, optimal_fraction(TierId::Macro, model, opts),
                              optimal_fraction(TierId::Small, model, opts), opts.quad);
}

double relaxed_ase_approx(const NetworkModel& model, double u_macro, double u_small,
                          const numerics::QuadratureSpec& quad)
{
    model.validate();
    return model.macro.density * (model.macro.antennas + 1) * g_value(u_macro, TierId::Macro, model, quad) +
           model.small.density * (model.small.antennas + 1) * g_value(u_small, TierId::Small, model, quad);
}

ExhaustiveResult exhaustive_search(const NetworkModel& model, const numerics::QuadratureSpec& quad)
{
    model.validate();
    ExhaustiveResult best;
    bool first = true;
    NetworkModel m = model;
    for (int km = 1; km <= model.macro.antennas; ++km) {
        for (int ks = 1; ks <= model.small.antennas; ++ks) {
            m.macro.users = km;
            m.small.users = ks;
            const double t = ase_exact(m, quad);
            if (first || t > best.ase_exact) {
                best = {km, ks, t};
                first = false;
            }
        }
    }
    return best;
}

} // namespace hetnet
