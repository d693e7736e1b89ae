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

#include "hetnet/numerics.hpp"
#include "hetnet/rate_model.hpp"

namespace hetnet {

/// Optimized scheduling for both tiers. u_* are the relaxed fractions
/// K / (M + 1); k_* the rounded user counts; ASE values are evaluated at k_*.
struct Allocation {
    double u_macro = 0.0;
    double u_small = 0.0;
    int k_macro = 0;
    int k_small = 0;
    double ase_exact = 0.0;  // nats per channel use per unit area
    double ase_approx = 0.0; // nats per channel use per unit area
};

/// How optimal_users picks between floor(u*(M+1)) and ceil(u*(M+1)).
enum class RoundingMetric {
    /// Jointly over the (at most four) candidate pairs, by exact ASE.
    Exact,
    /// Per tier, by the separable approximate ASE term lambda K R~.
    Approx,
};

struct OptimizerOptions {
    numerics::QuadratureSpec quad{};
    numerics::BracketSpec bracket{};
    /// Relative gap below which floor/ceil candidates count as tied (smaller K wins).
    double tie_rel_tol = 1e-8;
    RoundingMetric rounding = RoundingMetric::Exact;
};

/// lambda_m K_m R~_m + lambda_s K_s R~_s. A tier with K = 0 contributes nothing.
double ase_approx(const NetworkModel& model, const numerics::QuadratureSpec& quad = {});

/// lambda_m K_m R_m + lambda_s K_s R_s. Both tiers need K >= 1.
double ase_exact(const NetworkModel& model, const numerics::QuadratureSpec& quad = {});

/// Per-antenna ASE share G(u) of one tier as a function of u = K / (M + 1).
/// Defined on [0, 1]; g_value(0) = g_value(1) = 0.
double g_value(double u, TierId tier, const NetworkModel& model, const numerics::QuadratureSpec& quad = {});

/// dG/du. Strictly decreasing in u, positive near 0; diverges to -inf at u = 1.
double g_derivative(double u, TierId tier, const NetworkModel& model, const numerics::QuadratureSpec& quad = {});

/// Unique root of g_derivative in the relaxation interval, by bisection. Does not depend on M.
double optimal_fraction(TierId tier, const NetworkModel& model, const OptimizerOptions& opts = {});

/// Rounds the optimal fractions to integer user counts (floor or ceil of
/// u*(M+1), clamped to [1, M], chosen per opts.rounding; ties keep the smaller
/// K) and evaluates both ASE metrics at the result. Input users are ignored.
Allocation optimal_users(const NetworkModel& model, const OptimizerOptions& opts = {});

/// The rounding step of optimal_users for precomputed fractions. The optimal
/// fractions do not depend on M, so sweeps over antenna counts compute them once.
Allocation round_fractions(const NetworkModel& model, double u_macro, double u_small, const OptimizerOptions& opts = {});

/// Relaxed optimum lambda_m (M_m+1) G_m(u_m*) + lambda_s (M_s+1) G_s(u_s*).
double relaxed_ase_approx(const NetworkModel& model, const OptimizerOptions& opts = {});
double relaxed_ase_approx(const NetworkModel& model, double u_macro, double u_small,
                          const numerics::QuadratureSpec& quad = {});

struct ExhaustiveResult {
    int k_macro = 0;
    int k_small = 0;
    double ase_exact = 0.0;
};

/// Brute-force maximizer of ase_exact over [1, M_m] x [1, M_s].
/// Ties keep the lexicographically smallest (k_macro, k_small).
ExhaustiveResult exhaustive_search(const NetworkModel& model, const numerics::QuadratureSpec& quad = {});

} // namespace hetnet
