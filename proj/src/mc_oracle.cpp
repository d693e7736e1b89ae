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
#include "hetnet/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "hetnet/error.hpp"
#include "hetnet/simd/kernels.hpp"

namespace hetnet::mc {

namespace {

// Products of uniforms are folded into a log once they drop below this.
constexpr double kProductFloor = 1e-200;

enum class Outcome : std::uint8_t { Macro, Small, Empty, InterferenceFree };

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v)
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct Scratch {
    Realization realization;
    std::vector<double> extra;
};

void draw_tier(TierDraw& draw, std::vector<double>& extra, const TierParams& params, double radius2,
               std::int64_t count, Stream& stream)
{
    const auto n = static_cast<std::size_t>(count);
    draw.dist2.resize(n);
    draw.gain.resize(n);
    extra.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) draw.dist2[i] = radius2 * stream.uniform();

    // Interferer gains: Erlang(K) as -ln(prod u), the logs taken in one vector pass.
    bool folded = false;
    for (std::size_t i = 0; i < n; ++i) {
        double product = 1.0;
        for (int j = 0; j < params.users; ++j) {
            product *= stream.uniform();
            if (product < kProductFloor) {
                extra[i] -= std::log(product);
                product = 1.0;
                folded = true;
            }
        }
        draw.gain[i] = product;
    }
    simd::neg_log(draw.gain, draw.gain);
    if (folded) {
        for (std::size_t i = 0; i < n; ++i) draw.gain[i] += extra[i];
    }
    draw.serving_gain = sample_erlang(params.antennas + 1 - params.users, stream);
}

void sample_into(const SimSpec& spec, std::int64_t index, Scratch& scratch)
{
    Stream stream(spec.seed, static_cast<std::uint64_t>(index));
    const double radius2 = spec.disk_radius * spec.disk_radius;
    const double area = std::numbers::pi * radius2;
    const std::int64_t n_macro = stream.poisson(spec.model.macro.density * area);
    const std::int64_t n_small = stream.poisson(spec.model.small.density * area);
    draw_tier(scratch.realization.macro, scratch.extra, spec.model.macro, radius2, n_macro, stream);
    draw_tier(scratch.realization.small, scratch.extra, spec.model.small, radius2, n_small, stream);
}

double tier_interference(const TierDraw& draw, const TierParams& params, double half_alpha,
                         std::ptrdiff_t skip)
{
    const std::span<const double> d(draw.dist2);
    const std::span<const double> g(draw.gain);
    double sum = 0.0;
    if (skip < 0) {
        sum = simd::path_gain_sum(d, g, half_alpha);
    } else {
        const auto k = static_cast<std::size_t>(skip);
        sum = simd::path_gain_sum(d.first(k), g.first(k), half_alpha) +
              simd::path_gain_sum(d.subspan(k + 1), g.subspan(k + 1), half_alpha);
    }
    return params.power / params.users * sum;
}

struct Moments {
    double mean = 0.0;
    double std_error = 0.0;
};

Moments moments(const std::vector<double>& rates, const std::vector<Outcome>& outcomes, Outcome want,
                std::int64_t count)
{
    if (count == 0) return {};
    CompensatedSum sum;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        if (outcomes[i] == want) sum.add(rates[i]);
    }
    const double mean = sum.value() / static_cast<double>(count);
    if (count < 2) return {mean, 0.0};
    CompensatedSum sq;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        if (outcomes[i] == want) {
            const double d = rates[i] - mean;
            sq.add(d * d);
        }
    }
    const double var = sq.value() / static_cast<double>(count - 1);
    return {mean, std::sqrt(var / static_cast<double>(count))};
}

} // namespace

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Stream::Stream(std::uint64_t master_seed, std::uint64_t index)
    : engine_(splitmix64(master_seed ^ splitmix64(index)))
{
}

std::int64_t Stream::poisson(double mean)
{
    if (!(mean > 0.0)) return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(engine_);
}

double sample_erlang(int shape, Stream& stream)
{
    if (shape < 1) detail::domain_fail("shape", ">= 1");
    double product = 1.0;
    double folded = 0.0;
    for (int j = 0; j < shape; ++j) {
        product *= stream.uniform();
        if (product < kProductFloor) {
            folded -= std::log(product);
            product = 1.0;
        }
    }
    return folded - std::log(product);
}

double truncation_ratio(const NetworkModel& model, double radius)
{
    model.validate();
    const double nearest = 1.0 / std::sqrt(std::numbers::pi * (model.macro.density + model.small.density));
    if (!(radius > nearest)) return std::numeric_limits<double>::infinity();
    const double q = std::pow(radius / nearest, 2.0 - model.pl.alpha());
    return q / (1.0 - q);
}

double auto_disk_radius(const NetworkModel& model)
{
    model.validate();
    const double lambda_min = std::min(model.macro.density, model.small.density);
    const double by_count = std::sqrt(kMinExpectedCount / (std::numbers::pi * lambda_min));
    const double nearest = 1.0 / std::sqrt(std::numbers::pi * (model.macro.density + model.small.density));
    // q / (1 - q) < t  <=>  (R / nearest)^{2 - alpha} < t / (1 + t); 1% margin on top.
    const double target = kMaxTruncation / (1.0 + kMaxTruncation);
    const double by_tail = 1.01 * nearest * std::pow(target, 1.0 / (2.0 - model.pl.alpha()));
    const double radius = std::max(by_count, by_tail);

    const double expected = (model.macro.density + model.small.density) * std::numbers::pi * radius * radius;
    if (!(expected <= 5e7)) {
        std::ostringstream msg;
        msg << "disk_radius: auto radius needs " << expected
            << " expected base stations to bound truncated interference; alpha too close to 2";
        throw DomainError(msg.str());
    }
    return radius;
}

void SimSpec::validate_sampling() const
{
    model.validate();
    if (model.macro.users < 1) detail::domain_fail("macro.users", ">= 1 for simulation");
    if (model.small.users < 1) detail::domain_fail("small.users", ">= 1 for simulation");
    if (replications < 1) detail::domain_fail("replications", ">= 1");
    if (!std::isfinite(disk_radius) || !(disk_radius > 0.0)) detail::domain_fail("disk_radius", "> 0");
}

void SimSpec::validate() const
{
    validate_sampling();
    const double ratio = truncation_ratio(model, disk_radius);
    if (!(ratio < kMaxTruncation)) {
        std::ostringstream msg;
        msg << "disk_radius: truncated interference ratio " << ratio << " must be < " << kMaxTruncation;
        throw DomainError(msg.str());
    }
}

Realization sample_realization(const SimSpec& spec, std::int64_t replication_index)
{
    spec.validate_sampling();
    if (replication_index < 0) detail::domain_fail("replication_index", ">= 0");
    Scratch scratch;
    sample_into(spec, replication_index, scratch);
    return std::move(scratch.realization);
}

Association associate(const Realization& realization, const NetworkModel& model)
{
    if (realization.empty()) throw EmptyWindow("associate: no base station in the simulation window");
    // Compare r^2 / (P_l B_l)^{2/alpha}; the smaller one has the larger biased power.
    const double delta = model.pl.delta();
    bool have = false;
    Association best{TierId::Macro, 0};
    double best_metric = 0.0;
    for (TierId tier : kTiers) {
        const TierDraw& draw = realization.tier(tier);
        if (draw.dist2.empty()) continue;
        const std::size_t idx = simd::argmin(draw.dist2);
        const double tier_bias = tier == TierId::Macro ? 1.0 : model.bias;
        const double metric = draw.dist2[idx] / std::pow(model.tier(tier).power * tier_bias, delta);
        if (!have || metric < best_metric) {
            best = {tier, idx};
            best_metric = metric;
            have = true;
        }
    }
    return best;
}

double rate_sample(const Realization& realization, const Association& serving, const NetworkModel& model)
{
    const double half_alpha = 0.5 * model.pl.alpha();
    const TierDraw& own = realization.tier(serving.tier);
    const TierParams& own_params = model.tier(serving.tier);
    const double signal = own_params.power / own_params.users * own.serving_gain *
                          std::pow(own.dist2[serving.index], -half_alpha);

    double interference = 0.0;
    for (TierId tier : kTiers) {
        const std::ptrdiff_t skip = tier == serving.tier ? static_cast<std::ptrdiff_t>(serving.index) : -1;
        interference += tier_interference(realization.tier(tier), model.tier(tier), half_alpha, skip);
    }
    if (interference == 0.0) return std::numeric_limits<double>::infinity();
    return std::log1p(signal / interference);
}

SimResult simulate_rate(const SimSpec& spec, unsigned threads)
{
    spec.validate();
    const auto reps = static_cast<std::size_t>(spec.replications);
    std::vector<double> rates(reps, 0.0);
    std::vector<Outcome> outcomes(reps, Outcome::Empty);

    const auto run_block = [&](std::size_t begin, std::size_t end) {
        Scratch scratch;
        for (std::size_t i = begin; i < end; ++i) {
            sample_into(spec, static_cast<std::int64_t>(i), scratch);
            const Realization& r = scratch.realization;
            if (r.empty()) {
                outcomes[i] = Outcome::Empty;
                continue;
            }
            const Association serving = associate(r, spec.model);
            const double rate = rate_sample(r, serving, spec.model);
            if (std::isinf(rate)) {
                outcomes[i] = Outcome::InterferenceFree;
                continue;
            }
            outcomes[i] = serving.tier == TierId::Macro ? Outcome::Macro : Outcome::Small;
            rates[i] = rate;
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(reps)));
    if (workers == 1) {
        run_block(0, reps);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = reps * w / workers;
            const std::size_t end = reps * (w + 1) / workers;
            pool.emplace_back(run_block, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    SimResult result;
    result.replications = spec.replications;
    result.seed = spec.seed;
    result.disk_radius = spec.disk_radius;
    std::int64_t n_macro = 0;
    std::int64_t n_small = 0;
    for (Outcome o : outcomes) {
        switch (o) {
        case Outcome::Macro: ++n_macro; break;
        case Outcome::Small: ++n_small; break;
        case Outcome::Empty: ++result.empty_windows; break;
        case Outcome::InterferenceFree: ++result.interference_free; break;
        }
    }

    const std::int64_t skipped = result.empty_windows + result.interference_free;
    if (static_cast<double>(skipped) > kMaxSkippedFraction * static_cast<double>(spec.replications)) {
        std::ostringstream msg;
        msg << "simulate: " << skipped << " of " << spec.replications
            << " windows had no base station or no interferer; enlarge disk_radius or the densities";
        throw EmptyWindow(msg.str());
    }

    const double served = static_cast<double>(n_macro + n_small);
    const Moments m = moments(rates, outcomes, Outcome::Macro, n_macro);
    const Moments s = moments(rates, outcomes, Outcome::Small, n_small);
    result.macro = {TierId::Macro, m.mean, m.std_error, n_macro, served > 0 ? n_macro / served : 0.0};
    result.small = {TierId::Small, s.mean, s.std_error, n_small, served > 0 ? n_small / served : 0.0};
    return result;
}

double association_probability(const NetworkModel& model, TierId tier)
{
    model.validate();
    const double small_weight =
        model.small.density * std::pow(model.small.power * model.bias / model.macro.power, model.pl.delta());
    const double p_small = small_weight / (model.macro.density + small_weight);
    return tier == TierId::Small ? p_small : 1.0 - p_small;
}

} // namespace hetnet::mc
