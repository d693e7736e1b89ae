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
#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "hetnet/kernels.hpp"
#include "hetnet/numerics.hpp"

namespace hetnet {

enum class TierId { Macro, Small };

inline constexpr std::array<TierId, 2> kTiers = {TierId::Macro, TierId::Small};

std::string_view to_string(TierId tier);
TierId other(TierId tier);

/// One tier of base stations. Only the cross-tier ratios of density and power
/// enter any result. users == 0 is representable (a silent tier contributes
/// nothing to the ASE) but every rate operation rejects it.
struct TierParams {
    double density = 1.0;
    double power = 1.0;
    int antennas = 1;
    int users = 1;

    void validate(std::string_view name) const;
    friend bool operator==(const TierParams&, const TierParams&) = default;
};

/// Two-tier downlink with zero-forcing base stations and small-cell range-expansion bias.
struct NetworkModel {
    TierParams macro;
    TierParams small;
    PathLoss pl{4.0};
    double bias = 1.0;

    /// Throws DomainError naming the first violated field.
    void validate() const;

    const TierParams& tier(TierId id) const { return id == TierId::Macro ? macro : small; }
    TierParams& tier(TierId id) { return id == TierId::Macro ? macro : small; }

    /// Relative association weight of the other tier as seen from `id`:
    /// (lambda_s/lambda_m)(P_s B/P_m)^{2/alpha} for Macro and its reciprocal for Small.
    double cross_weight(TierId id) const;

    friend bool operator==(const NetworkModel&, const NetworkModel&) = default;
};

struct RateReport {
    TierId tier;
    double exact;  // nats per channel use
    double approx; // nats per channel use
};

/// Average rate with Gamma(M+1-K) desired gain and Gamma(K) interferer gains
/// (exact interference functional kernel_F). Needs K >= 1 on both tiers.
double rate_exact(const NetworkModel& model, TierId tier, const numerics::QuadratureSpec& quad = {});

/// Mean-gain approximation built on kernel_H. Reads only the requested tier's
/// M and K. At bias == 1 it reduces to rate_approx_unbiased.
double rate_approx(const NetworkModel& model, TierId tier, const numerics::QuadratureSpec& quad = {});

/// int_0^inf (1 - exp(-z (M+1-K)/K)) / (z H(z)) dz; independent of densities and powers.
double rate_approx_unbiased(int antennas, int users, const PathLoss& pl, const numerics::QuadratureSpec& quad = {});

RateReport rate_report(const NetworkModel& model, TierId tier, const numerics::QuadratureSpec& quad = {});

namespace detail {
/// The biased approximation integral evaluated without the bias == 1 reduction.
double rate_approx_general(const NetworkModel& model, TierId tier, const numerics::QuadratureSpec& quad = {});
} // namespace detail

struct AxisSample {
    double axis_value;
    double rate;
};

/// Sampling grids for monotonicity_report. Ratio axes replace the model's
/// lambda_s/lambda_m (by rescaling lambda_s) and P_s/P_m (by rescaling P_s).
struct MonotonicityAxes {
    std::vector<double> density_ratio{0.1, 0.3, 1.0, 3.0, 10.0};
    std::vector<double> power_ratio{1.0 / 40, 1.0 / 20, 1.0 / 10, 1.0 / 5, 1.0 / 2};
    std::vector<double> bias{1.5, 2.0, 4.0, 8.0, 16.0};
};

struct MonotonicityReport {
    TierId tier;
    std::vector<AxisSample> density_ratio;
    std::vector<AxisSample> power_ratio;
    std::vector<AxisSample> bias;
};

/// rate_approx sampled along each axis with the other parameters held at the model's values.
MonotonicityReport monotonicity_report(const NetworkModel& model, TierId tier, const MonotonicityAxes& axes = {},
                                       const numerics::QuadratureSpec& quad = {});

} // namespace hetnet
