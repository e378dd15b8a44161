#pragma once

// F_p vector kernels used by the echelon reductions. A scalar reference and an
// AVX2 variant implement the same contract bit for bit; the active table is
// picked once at startup from CPUID (override with NCIS_SIMD=scalar|avx2).
//
// Contract for every kernel: p is prime with p < 2^62, c < p, and all vector
// entries are already reduced into [0, p).

#include <cstddef>
#include <cstdint>
#include <span>

namespace ncis::simd {

enum class Isa { scalar, avx2 };

struct ModKernels {
    Isa isa;
    const char* name;
    /// y[i] = (y[i] + c * x[i]) mod p
    void (*axpy)(std::uint64_t* y, const std::uint64_t* x, std::size_t len, std::uint64_t c,
                 std::uint64_t p);
    /// y[i] = (c * y[i]) mod p
    void (*scale)(std::uint64_t* y, std::size_t len, std::uint64_t c, std::uint64_t p);
};

const ModKernels& scalar_kernels();
/// nullptr when the build or the CPU lacks AVX2.
const ModKernels* avx2_kernels();
const ModKernels& active_kernels();

inline void axpy_mod(std::span<std::uint64_t> y, std::span<const std::uint64_t> x, std::uint64_t c,
                     std::uint64_t p) {
    if (c != 0) active_kernels().axpy(y.data(), x.data(), y.size(), c, p);
}

inline void scale_mod(std::span<std::uint64_t> y, std::uint64_t c, std::uint64_t p) {
    active_kernels().scale(y.data(), y.size(), c, p);
}

namespace detail {
/// floor(c * 2^64 / p), the precomputed quotient for Shoup multiplication.
inline std::uint64_t shoup_quotient(std::uint64_t c, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(c) << 64) / p);
}
}  // namespace detail

}  // namespace ncis::simd
