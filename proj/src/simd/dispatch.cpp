#include <cstdlib>
#include <string_view>

#include "mokw/simd/kernels.hpp"

namespace mokw::simd {

#ifdef MOKW_HAVE_AVX2
const KernelTable& avx2_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(MOKW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? &avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_kernels() {
    static const KernelTable* chosen = [] {
        const char* env = std::getenv("MOKW_SIMD");
        if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
        if (const KernelTable* v = avx2_kernels()) return v;
        return &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace mokw::simd
