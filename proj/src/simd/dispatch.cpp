#include <cstdlib>
#include <string_view>

#include "ncis/simd.hpp"

namespace ncis::simd {

#if defined(__x86_64__) && defined(NCIS_HAVE_AVX2)
extern const ModKernels kAvx2Kernels;
#endif

const ModKernels* avx2_kernels() {
#if defined(__x86_64__) && defined(NCIS_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2Kernels : nullptr;
#else
    return nullptr;
#endif
}

const ModKernels& active_kernels() {
    static const ModKernels* chosen = [] {
        const char* env = std::getenv("NCIS_SIMD");
        if (env && std::string_view(env) == "scalar") return &scalar_kernels();
        if (const ModKernels* k = avx2_kernels()) return k;
        return &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace ncis::simd
