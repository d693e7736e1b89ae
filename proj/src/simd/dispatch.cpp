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
#include <atomic>
#include <cstdlib>
#include <string>

#include "hetnet/error.hpp"
#include "hetnet/simd/kernels.hpp"

namespace hetnet::simd {

namespace {

Backend detect()
{
    Backend best = avx2_supported() ? Backend::Avx2 : Backend::Scalar;
    if (const char* env = std::getenv("HETNET_SIMD")) {
        const std::string want(env);
        if (want == "scalar") return Backend::Scalar;
        if (want == "avx2" && best == Backend::Avx2) return Backend::Avx2;
    }
    return best;
}

std::atomic<Backend>& current()
{
    static std::atomic<Backend> backend{detect()};
    return backend;
}

} // namespace

std::string_view to_string(Backend backend) { return backend == Backend::Avx2 ? "avx2" : "scalar"; }

bool avx2_supported()
{
#ifdef HETNET_HAVE_AVX2_KERNELS
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend)
{
    if (backend == Backend::Avx2 && !avx2_supported()) {
        throw DomainError("simd backend: avx2 is not supported by this CPU");
    }
    current().store(backend);
}

std::size_t argmin(std::span<const double> values)
{
    if (values.empty()) throw DomainError("argmin: values must be non-empty");
#ifdef HETNET_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::Avx2) return avx2::argmin(values);
#endif
    return scalar::argmin(values);
}

double path_gain_sum(std::span<const double> dist2, std::span<const double> gains, double half_alpha)
{
    if (dist2.size() != gains.size()) throw DomainError("path_gain_sum: dist2 and gains must have equal length");
#ifdef HETNET_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::Avx2) return avx2::path_gain_sum(dist2, gains, half_alpha);
#endif
    return scalar::path_gain_sum(dist2, gains, half_alpha);
}

void neg_log(std::span<const double> in, std::span<double> out)
{
    if (in.size() != out.size()) throw DomainError("neg_log: in and out must have equal length");
#ifdef HETNET_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::Avx2) {
        avx2::neg_log(in, out);
        return;
    }
#endif
    scalar::neg_log(in, out);
}

} // namespace hetnet::simd
