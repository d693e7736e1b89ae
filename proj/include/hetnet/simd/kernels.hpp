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

// Data-parallel inner loops of the Monte Carlo oracle. Every kernel has a
// scalar reference in hetnet::simd::scalar and, on x86-64, an AVX2 variant in
// hetnet::simd::avx2. The unqualified entry points dispatch to the active
// backend, picked once from cpuid (override with HETNET_SIMD=scalar|avx2).

#include <cstddef>
#include <span>
#include <string_view>

namespace hetnet::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend);

bool avx2_supported();
Backend active_backend();
/// Throws DomainError if the backend is not available on this CPU.
void set_backend(Backend backend);

/// Index of the first minimum. values must be non-empty and NaN-free.
std::size_t argmin(std::span<const double> values);

/// sum_i gains[i] * dist2[i]^{-half_alpha}, i.e. received power with path-loss
/// exponent alpha = 2 * half_alpha from squared distances. dist2 > 0.
double path_gain_sum(std::span<const double> dist2, std::span<const double> gains, double half_alpha);

/// out[i] = -ln(in[i]) for positive normal inputs.
void neg_log(std::span<const double> in, std::span<double> out);

namespace scalar {
std::size_t argmin(std::span<const double> values);
double path_gain_sum(std::span<const double> dist2, std::span<const double> gains, double half_alpha);
void neg_log(std::span<const double> in, std::span<double> out);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define HETNET_HAVE_AVX2_KERNELS 1
namespace avx2 {
std::size_t argmin(std::span<const double> values);
double path_gain_sum(std::span<const double> dist2, std::span<const double> gains, double half_alpha);
void neg_log(std::span<const double> in, std::span<double> out);
} // namespace avx2
#endif

namespace detail {
/// half_alpha as a small positive integer power, or 0 when it is not one.
int integer_power(double half_alpha);
} // namespace detail

} // namespace hetnet::simd
