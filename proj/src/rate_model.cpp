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
#include "hetnet/rate_model.hpp"

#include <cmath>
#include <string>

#include "hetnet/error.hpp"

namespace hetnet {

std::string_view to_string(TierId tier) { return tier == TierId::Macro ? "macro" : "small"; }

TierId other(TierId tier) { return tier == TierId::Macro ? TierId::Small : TierId::Macro; }

void TierParams::validate(std::string_view name) const
{
    const std::string prefix(name);
    if (!std::isfinite(density) || !(density > 0.0)) detail::domain_fail(prefix + ".density", "> 0");
    if (!std::isfinite(power) || !(power > 0.0)) detail::domain_fail(prefix + ".power", "> 0");
    if (antennas < 1) detail::domain_fail(prefix + ".antennas", ">= 1");
    if (users < 0 || users > antennas) detail::domain_fail(prefix + ".users", "0 <= users <= antennas");
}

void NetworkModel::validate() const
{
    macro.validate("macro");
    small.validate("small");
    if (!(pl.alpha() > 2.0)) detail::domain_fail("alpha", "> 2");
    if (!std::isfinite(bias) || !(bias >= 1.0)) detail::domain_fail("bias", ">= 1");
}

double NetworkModel::cross_weight(TierId id) const
{
    const double d = pl.delta();
    if (id == TierId::Macro) {
        return (small.density / macro.density) * std::pow(small.power * bias / macro.power, d);
    }
    return (macro.density / small.density) * std::pow(macro.power / (small.power * bias), d);
}

namespace {

void require_all_users(const NetworkModel& model)
{
    model.validate();
    for (TierId t : kTiers) {
        if (model.tier(t).users < 1) {
            detail::domain_fail(std::string(to_string(t)) + ".users", ">= 1 for rate evaluation");
        }
    }
}

void require_own_users(const NetworkModel& model, TierId tier)
{
    model.validate();
    if (model.tier(tier).users < 1) {
        detail::domain_fail(std::string(to_string(tier)) + ".users", ">= 1 for rate evaluation");
    }
}

// (1 - (1+z)^{-n}) / z with its limit n at z = 0.
double gamma_gain_ratio(double z, double n)
{
    if (z == 0.0) return n;
    return -std::expm1(-n * std::log1p(z)) / z;
}

// (1 - exp(-c z)) / z with its limit c at z = 0.
double mean_gain_ratio(double z, double c)
{
    if (z == 0.0) return c;
    return -std::expm1(-c * z) / z;
}

} // namespace

double rate_exact(const NetworkModel& model, TierId tier, const numerics::QuadratureSpec& quad)
{
    require_all_users(model);
    const PathLoss pl = model.pl;
    const double rho = model.cross_weight(tier);
    const TierParams& own = model.tier(tier);
    const TierParams& cross = model.tier(other(tier));
    const double n = static_cast<double>(own.antennas + 1 - own.users);
    const double k_own = own.users;
    const double k_cross = cross.users;
    // Cross-tier kernel argument: z K_m / (K_s B) for macro users, z K_s B / K_m for small-cell users.
    const double cross_scale = tier == TierId::Macro ? k_own / (k_cross * model.bias) : k_own * model.bias / k_cross;

    const numerics::Integrand integrand = [&](double z) {
        const double denom = kernels::kernel_F(z, k_own, pl) + rho * kernels::kernel_F(z * cross_scale, k_cross, pl);
        return (1.0 + rho) * gamma_gain_ratio(z, n) / denom;
    };
    return numerics::integrate_zero_to_inf(integrand, quad);
}

double detail::rate_approx_general(const NetworkModel& model, TierId tier, const numerics::QuadratureSpec& quad)
{
    require_own_users(model, tier);
    const PathLoss pl = model.pl;
    const double rho = model.cross_weight(tier);
    const TierParams& own = model.tier(tier);
    const double c = static_cast<double>(own.antennas + 1 - own.users) / own.users;
    // Other-tier H is evaluated at z/B for macro users and z B for small-cell users.
    const double cross_scale = tier == TierId::Macro ? 1.0 / model.bias : model.bias;

    const numerics::Integrand integrand = [&](double z) {
        const double denom = kernels::kernel_H(z, pl) + rho * kernels::kernel_H(z * cross_scale, pl);
        return (1.0 + rho) * mean_gain_ratio(z, c) / denom;
    };
    return numerics::integrate_zero_to_inf(integrand, quad);
}

double rate_approx(const NetworkModel& model, TierId tier, const numerics::QuadratureSpec& quad)
{
    require_own_users(model, tier);
    if (model.bias == 1.0) {
        const TierParams& own = model.tier(tier);
        return rate_approx_unbiased(own.antennas, own.users, model.pl, quad);
    }
    return detail::rate_approx_general(model, tier, quad);
}

double rate_approx_unbiased(int antennas, int users, const PathLoss& pl, const numerics::QuadratureSpec& quad)
{
    if (antennas < 1) detail::domain_fail("antennas", ">= 1");
    if (users < 1 || users > antennas) detail::domain_fail("users", "1 <= users <= antennas");
    const double c = static_cast<double>(antennas + 1 - users) / users;
    const numerics::Integrand integrand = [&](double z) {
        return mean_gain_ratio(z, c) / kernels::kernel_H(z, pl);
    };
    return numerics::integrate_zero_to_inf(integrand, quad);
}

RateReport rate_report(const NetworkModel& model, TierId tier, const numerics::QuadratureSpec& quad)
{
    return {tier, rate_exact(model, tier, quad), rate_approx(model, tier, quad)};
}

MonotonicityReport monotonicity_report(const NetworkModel& model, TierId tier, const MonotonicityAxes& axes,
                                       const numerics::QuadratureSpec& quad)
{
    model.validate();
    MonotonicityReport report{tier, {}, {}, {}};

    for (double ratio : axes.density_ratio) {
        NetworkModel m = model;
        m.small.density = ratio * m.macro.density;
        report.density_ratio.push_back({ratio, rate_approx(m, tier, quad)});
    }
    for (double ratio : axes.power_ratio) {
        NetworkModel m = model;
        m.small.power = ratio * m.macro.power;
        report.power_ratio.push_back({ratio, rate_approx(m, tier, quad)});
    }
    for (double b : axes.bias) {
        NetworkModel m = model;
        m.bias = b;
        report.bias.push_back({b, rate_approx(m, tier, quad)});
    }
    return report;
}

} // namespace hetnet
