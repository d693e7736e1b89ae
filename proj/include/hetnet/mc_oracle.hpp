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

// Monte Carlo estimate of the per-tier average rate of a typical user at the
// origin. Base stations of each tier are a PPP restricted to a disk; gains are
// drawn from the Gamma laws of zero-forcing with equal power split. The SIR law
// is isotropic, so a realization stores squared distances to the origin only.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hetnet/rate_model.hpp"

namespace hetnet::mc {

struct SimSpec {
    NetworkModel model;
    double disk_radius = 0.0;
    std::int64_t replications = 1;
    std::uint64_t seed = 0;

    /// Throws DomainError on an invalid model, replications < 1 or a radius
    /// whose truncated-interference ratio is not below kMaxTruncation.
    void validate() const;
    /// Everything validate() checks except the truncation bound.
    void validate_sampling() const;
};

inline constexpr double kMaxTruncation = 1e-3;
inline constexpr double kMinExpectedCount = 500.0;
inline constexpr double kMaxSkippedFraction = 0.01;

/// Ratio of the expected interference beyond `radius` to the expected
/// interference between the typical nearest-BS distance 1/sqrt(pi (lambda_m + lambda_s))
/// and `radius`. Infinite when radius does not exceed that distance.
double truncation_ratio(const NetworkModel& model, double radius);

/// Smallest radius with lambda_min pi R^2 >= kMinExpectedCount and
/// truncation_ratio < kMaxTruncation. DomainError if that needs an unreasonable
/// number of points (alpha close to 2).
double auto_disk_radius(const NetworkModel& model);

struct TierDraw {
    std::vector<double> dist2; // squared distance of every BS to the origin
    std::vector<double> gain;  // interferer gain h ~ Gamma(K, 1) per BS
    double serving_gain = 0.0; // g ~ Gamma(M + 1 - K, 1), used if this tier serves
};

struct Realization {
    TierDraw macro;
    TierDraw small;

    const TierDraw& tier(TierId id) const { return id == TierId::Macro ? macro : small; }
    bool empty() const { return macro.dist2.empty() && small.dist2.empty(); }
};

/// Deterministic in (spec.seed, replication_index). Checks validate_sampling()
/// only, so windows too small for an unbiased estimate (even empty ones) can be drawn.
Realization sample_realization(const SimSpec& spec, std::int64_t replication_index);

struct Association {
    TierId tier;
    std::size_t index;
};

/// Serving BS maximizing P_l B_l |x|^{-alpha} (B_m = 1, B_s = bias). Ties go to
/// the macro tier, then to the lower index. EmptyWindow if no BS exists.
Association associate(const Realization& realization, const NetworkModel& model);

/// ln(1 + SIR) for the given association; +inf when there is no interferer.
double rate_sample(const Realization& realization, const Association& serving, const NetworkModel& model);

struct SimEstimate {
    TierId tier;
    double mean_rate = 0.0;
    double std_error = 0.0;
    std::int64_t n_effective = 0;
    double association_fraction = 0.0;
};

struct SimResult {
    SimEstimate macro;
    SimEstimate small;
    std::int64_t replications = 0;
    std::int64_t empty_windows = 0;
    std::int64_t interference_free = 0; // single-BS windows, SIR unbounded
    std::uint64_t seed = 0;
    double disk_radius = 0.0;

    const SimEstimate& tier(TierId id) const { return id == TierId::Macro ? macro : small; }
};

/// Runs every replication (on `threads` workers) and returns the per-tier
/// estimates. Replications without any BS or without an interferer are skipped
/// and counted; more than kMaxSkippedFraction of them throws EmptyWindow. Results
/// do not depend on the thread count.
SimResult simulate_rate(const SimSpec& spec, unsigned threads = 1);

/// Closed-form probability that the typical user is served by `tier`.
double association_probability(const NetworkModel& model, TierId tier);

/// Per-replication random stream. Seeded from a SplitMix64 hash of
/// (master seed, replication index), so replications share no state.
class Stream {
public:
    Stream(std::uint64_t master_seed, std::uint64_t index);

    /// Uniform on the open interval (0, 1).
    double uniform()
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::int64_t poisson(double mean);

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Gamma(shape, 1) for integer shape >= 1, as -ln of a product of uniforms.
double sample_erlang(int shape, Stream& stream);

} // namespace hetnet::mc
