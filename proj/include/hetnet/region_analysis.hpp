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

// Antenna-count sweeps of the optimized ASE and the (M_m, M_s) map of where
// range-expansion bias helps. Optimal fractions do not depend on M, so every
// sweep bisects once per bias and only rounds per lattice point.

#include <functional>
#include <string_view>
#include <vector>

#include "hetnet/ase_optimizer.hpp"
#include "hetnet/rate_model.hpp"

namespace hetnet {

inline constexpr double kDefaultTieEpsilon = 1e-6;

/// Inclusive integer range.
struct IntRange {
    int lo = 1;
    int hi = 1;

    /// DomainError unless 1 <= lo <= hi.
    void validate(std::string_view name) const;
    int size() const { return hi - lo + 1; }
};

enum class Verdict { Improve, Degrade, Tie };

std::string_view to_string(Verdict verdict);

/// Improve iff biased > unbiased (1 + eps), Degrade iff biased < unbiased (1 - eps).
Verdict classify(double ase_biased, double ase_unbiased, double epsilon_tie);

struct RegionCell {
    int m_macro = 1;
    int m_small = 1;
    double ase_biased = 0.0;   // optimized exact ASE at the map's bias
    double ase_unbiased = 0.0; // optimized exact ASE at the baseline bias
    Verdict verdict = Verdict::Tie;
};

/// Cells in row-major order: M_m outer, M_s inner.
struct RegionMap {
    std::vector<RegionCell> grid;
    NetworkModel model_template; // antennas and users are placeholders
    double bias = 1.0;
    double epsilon_tie = kDefaultTieEpsilon;

    /// nullptr when (m_macro, m_small) is off the lattice.
    const RegionCell* find(int m_macro, int m_small) const;
};

struct RegionOptions {
    OptimizerOptions optimizer{};
    double epsilon_tie = kDefaultTieEpsilon;
    double baseline_bias = 1.0;
    unsigned threads = 1;
};

/// Optimizes users at `bias` and at options.baseline_bias for the given antenna
/// counts and classifies the pair of exact ASE values. Needs bias >= 1.
RegionCell classify_cell(const NetworkModel& model_template, int m_macro, int m_small, double bias,
                         const RegionOptions& options = {});

/// Called once per cell in canonical order as soon as all earlier cells are done.
using CellSink = std::function<void(const RegionCell&)>;

/// One cell per lattice point. A failing cell aborts the sweep; the rethrown
/// error keeps its type and names the cell.
RegionMap sweep_region(const NetworkModel& model_template, IntRange m_macro, IntRange m_small, double bias,
                       const RegionOptions& options = {}, const CellSink& sink = {});

enum class AntennaAxis { Macro, Small };

std::string_view to_string(AntennaAxis axis);

struct AseSweepRow {
    int antennas = 1; // value on the swept axis
    double bias = 1.0;
    double ase_exact = 0.0;  // optimized exact ASE T*
    double ase_approx = 0.0; // relaxed approximate optimum T~*
    int k_macro = 0;
    int k_small = 0;
    double u_macro = 0.0;
    double u_small = 0.0;
};

struct AseSweepOptions {
    OptimizerOptions optimizer{};
    /// Take T* and the user counts from exhaustive_search instead of optimal_users.
    bool exhaustive = false;
    unsigned threads = 1;
};

using AseRowSink = std::function<void(const AseSweepRow&)>;

/// Rows ordered by bias (as given) then antennas ascending. The other tier's
/// antenna count comes from the template.
std::vector<AseSweepRow> sweep_ase(const NetworkModel& model_template, AntennaAxis axis, IntRange range,
                                   const std::vector<double>& biases, const AseSweepOptions& options = {},
                                   const AseRowSink& sink = {});

} // namespace hetnet
