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

#include <functional>

namespace hetnet::numerics {

using Integrand = std::function<double(double)>;

/// Accuracy policy for the semi-infinite integrators.
///
/// Integration stops once the summed local error estimate is at most
/// max(abs_tol, rel_tol * |I|). max_subdivisions bounds the number of
/// subintervals kept by the adaptive scheme.
struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    void validate() const;
};

struct BracketSpec {
    double lo = 1e-6;
    double hi = 1.0;
    double x_tol = 1e-7;
    int max_iters = 200;

    void validate() const;
};

/// Integrates f over (0, inf).
///
/// The half-line is mapped onto [0, 1) with z = t / (1 - t) and the result is
/// accumulated by globally adaptive bisection with a 10/21-point Gauss-Kronrod
/// pair. Nodes are interior, so f is never evaluated at z = 0 or at infinity;
/// integrands with a removable singularity at 0 should still return their
/// limit there. Throws NonConvergence when max_subdivisions is exhausted and
/// DomainError when f produces a non-finite value.
double integrate_zero_to_inf(const Integrand& f, const QuadratureSpec& spec = {});

/// Integrates f over [lower, inf) with the same contract as integrate_zero_to_inf.
double integrate_lower_to_inf(const Integrand& f, double lower, const QuadratureSpec& spec = {});

/// Integrates f over the finite interval [a, b] (used by the semi-infinite wrappers).
double integrate_finite(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Root of a monotone function by bisection.
///
/// Requires g(lo) and g(hi) to be nonzero with opposite signs (BadBracket
/// otherwise). Endpoint values may be infinite; interior values must be finite. Returns the midpoint of the final bracket once its width is at
/// most x_tol; an exact zero at a midpoint is returned immediately.
double bisect(const std::function<double(double)>& g, const BracketSpec& bracket = {});

} // namespace hetnet::numerics
