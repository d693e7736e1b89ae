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

#include <cstddef>

#include "hetnet/numerics.hpp"

namespace hetnet {

/// Path-loss exponent. Interference sums over a planar PPP converge only for alpha > 2.
class PathLoss {
public:
    explicit PathLoss(double alpha);

    double alpha() const { return alpha_; }
    /// 2 / alpha, the exponent that turns power ratios into distance-area ratios.
    double delta() const { return 2.0 / alpha_; }

    friend bool operator==(const PathLoss&, const PathLoss&) = default;

private:
    double alpha_;
};

namespace kernels {

/// Tolerance used for the inner integrals. Tighter than the outer default so
/// the rate integrands stay smooth at the outer tolerance.
numerics::QuadratureSpec inner_quadrature();

/// Interference functional for Gamma(y, 1) interferer gains:
///
///   F(x, y) = 1 + x^{2/alpha} * int_{x^{-2/alpha}}^inf 1 - (1 + u^{-alpha/2})^{-y} du
///
/// Accepts real x, y >= 0. F(0, y) = F(x, 0) = 1.
double kernel_F(double x, double y, const PathLoss& pl);

/// Mean-gain counterpart of kernel_F:
///
///   H(x) = 1 + x^{2/alpha} * int_{x^{-2/alpha}}^inf 1 - exp(-u^{-alpha/2}) du
///
/// H(0) = 1 and H is strictly increasing.
double kernel_H(double x, const PathLoss& pl);

/// Kernel memoization. Keys are the exact bit patterns of the arguments, so a
/// hit returns the same double a fresh evaluation would. Thread-safe.
void set_cache_enabled(bool enabled);
bool cache_enabled();
void clear_cache();
std::size_t cache_size();

} // namespace kernels
} // namespace hetnet
