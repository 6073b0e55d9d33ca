// Copyright 2026 The proxyreg Authors
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

#include "proxyreg/error.hpp"
#include "proxyreg/kernels.hpp"

namespace proxyreg::kernels {

namespace {

constexpr KernelTable kScalarTable{
    &scalar::dot, &scalar::axpy, &scalar::squared_distance, &scalar::abs_sum, &scalar::gram_upper,
};

#if defined(PROXYREG_HAVE_AVX2)
constexpr KernelTable kAvx2Table{
    &avx2::dot, &avx2::axpy, &avx2::squared_distance, &avx2::abs_sum, &avx2::gram_upper,
};
#endif

Isa detect() {
    Isa best = isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    if (const char* env = std::getenv("PROXYREG_SIMD")) {
        const std::string want(env);
        if (want == "scalar") return Isa::scalar;
        if (want == "avx2" && isa_supported(Isa::avx2)) return Isa::avx2;
    }
    return best;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(PROXYREG_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& table_for(Isa isa) {
    if (!isa_supported(isa)) {
        throw InvalidArgument("kernel ISA not supported on this CPU: " + std::string(isa_name(isa)));
    }
#if defined(PROXYREG_HAVE_AVX2)
    if (isa == Isa::avx2) return kAvx2Table;
#endif
    return kScalarTable;
}

const KernelTable& active() noexcept {
#if defined(PROXYREG_HAVE_AVX2)
    if (current().load(std::memory_order_relaxed) == Isa::avx2) return kAvx2Table;
#endif
    return kScalarTable;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    (void)table_for(isa);
    current().store(isa, std::memory_order_relaxed);
}

}  // namespace proxyreg::kernels
