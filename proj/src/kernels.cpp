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
#include "hetnet/kernels.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "hetnet/error.hpp"

namespace hetnet {

PathLoss::PathLoss(double alpha) : alpha_(alpha)
{
    if (!std::isfinite(alpha) || !(alpha > 2.0)) detail::domain_fail("alpha", "> 2");
}

namespace kernels {

namespace {

struct Key {
    std::uint64_t x;
    std::uint64_t y;
    std::uint64_t alpha;
    bool operator==(const Key&) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept
    {
        std::uint64_t h = k.x * 0x9E3779B97F4A7C15ULL;
        h ^= k.y + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        h ^= k.alpha + 0x85EBCA77C2B2AE63ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

constexpr std::size_t kMaxEntries = std::size_t{1} << 21;

class Memo {
public:
    template <class Compute>
    double get(const Key& key, Compute&& compute)
    {
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) return it->second;
        }
        const double value = compute();
        std::unique_lock lock(mutex_);
        if (table_.size() >= kMaxEntries) table_.clear();
        table_.emplace(key, value);
        return value;
    }

    void clear()
    {
        std::unique_lock lock(mutex_);
        table_.clear();
    }

    std::size_t size() const
    {
        std::shared_lock lock(mutex_);
        return table_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, double, KeyHash> table_;
};

std::atomic<bool> g_cache_enabled{true};
Memo g_memo_F;
Memo g_memo_H;

void check_arg(double v, const char* name)
{
    if (!std::isfinite(v) || v < 0.0) detail::domain_fail(name, "finite and >= 0");
}

double compute_F(double x, double y, const PathLoss& pl)
{
    const double half_alpha = 0.5 * pl.alpha();
    const double lower = std::pow(x, -pl.delta());
    const numerics::Integrand tail = [y, half_alpha](double u) {
        if (u == 0.0) return 1.0;
        return -std::expm1(-y * std::log1p(std::pow(u, -half_alpha)));
    };
    return 1.0 + std::pow(x, pl.delta()) * numerics::integrate_lower_to_inf(tail, lower, inner_quadrature());
}

double compute_H(double x, const PathLoss& pl)
{
    const double half_alpha = 0.5 * pl.alpha();
    const double lower = std::pow(x, -pl.delta());
    const numerics::Integrand tail = [half_alpha](double u) {
        if (u == 0.0) return 1.0;
        return -std::expm1(-std::pow(u, -half_alpha));
    };
    return 1.0 + std::pow(x, pl.delta()) * numerics::integrate_lower_to_inf(tail, lower, inner_quadrature());
}

} // namespace

numerics::QuadratureSpec inner_quadrature()
{
    return {.rel_tol = 1e-11, .abs_tol = 1e-15, .max_subdivisions = 2000};
}

double kernel_F(double x, double y, const PathLoss& pl)
{
    check_arg(x, "x");
    check_arg(y, "y");
    if (x == 0.0 || y == 0.0) return 1.0;
    if (!g_cache_enabled.load(std::memory_order_relaxed)) return compute_F(x, y, pl);
    const Key key{std::bit_cast<std::uint64_t>(x), std::bit_cast<std::uint64_t>(y),
                  std::bit_cast<std::uint64_t>(pl.alpha())};
    return g_memo_F.get(key, [&] { return compute_F(x, y, pl); });
}

double kernel_H(double x, const PathLoss& pl)
{
    check_arg(x, "x");
    if (x == 0.0) return 1.0;
    if (!g_cache_enabled.load(std::memory_order_relaxed)) return compute_H(x, pl);
    const Key key{std::bit_cast<std::uint64_t>(x), 0, std::bit_cast<std::uint64_t>(pl.alpha())};
    return g_memo_H.get(key, [&] { return compute_H(x, pl); });
}

void set_cache_enabled(bool enabled) { g_cache_enabled.store(enabled); }

bool cache_enabled() { return g_cache_enabled.load(); }

void clear_cache()
{
    g_memo_F.clear();
    g_memo_H.clear();
}

std::size_t cache_size() { return g_memo_F.size() + g_memo_H.size(); }

} // namespace kernels
} // namespace hetnet
