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
#include <cmath>

#include "hetnet/simd/kernels.hpp"

namespace hetnet::simd {

int detail::integer_power(double half_alpha)
{
    if (half_alpha >= 1.0 && half_alpha <= 8.0 && half_alpha == std::floor(half_alpha)) {
        return static_cast<int>(half_alpha);
    }
    return 0;
}

namespace scalar {

std::size_t argmin(std::span<const double> values)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[best]) best = i;
    }
    return best;
}

double path_gain_sum(std::span<const double> dist2, std::span<const double> gains, double half_alpha)
{
    double sum = 0.0;
    const int n = detail::integer_power(half_alpha);
    if (n > 0) {
        for (std::size_t i = 0; i < dist2.size(); ++i) {
            double p = dist2[i];
            for (int j = 1; j < n; ++j) p *= dist2[i];
            sum += gains[i] / p;
        }
        return sum;
    }
    for (std::size_t i = 0; i < dist2.size(); ++i) {
        sum += gains[i] * std::pow(dist2[i], -half_alpha);
    }
    return sum;
}

void neg_log(std::span<const double> in, std::span<double> out)
{
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = -std::log(in[i]);
}

} // namespace scalar
} // namespace hetnet::simd
