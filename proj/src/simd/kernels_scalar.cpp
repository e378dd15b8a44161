#include "ncis/simd.hpp"

namespace ncis::simd {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Shoup: with c' = floor(c 2^64 / p), c*x - hi(c' x)*p lies in [0, 2p).
inline u64 mul_shoup(u64 x, u64 c, u64 c_shoup, u64 p) {
    const u64 q = static_cast<u64>((static_cast<u128>(c_shoup) * x) >> 64);
    u64 r = c * x - q * p;
    return r >= p ? r - p : r;
}

void axpy_scalar(u64* y, const u64* x, std::size_t len, u64 c, u64 p) {
    const u64 cs = detail::shoup_quotient(c, p);
    for (std::size_t i = 0; i < len; ++i) {
        const u64 s = y[i] + mul_shoup(x[i], c, cs, p);
        y[i] = s >= p ? s - p : s;
    }
}

void scale_scalar(u64* y, std::size_t len, u64 c, u64 p) {
    const u64 cs = detail::shoup_quotient(c, p);
    for (std::size_t i = 0; i < len; ++i) y[i] = mul_shoup(y[i], c, cs, p);
}

constexpr ModKernels kScalar{Isa::scalar, "scalar", axpy_scalar, scale_scalar};

}  // namespace

const ModKernels& scalar_kernels() { return kScalar; }

}  // namespace ncis::simd
