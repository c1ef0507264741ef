#include <cstdlib>
#include <cstring>

#include "freelab/kernels.hpp"

namespace freelab::kernels {

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_available() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}
#endif

static const Backend* select() {
    const char* env = std::getenv("FREELAB_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
    if (env && std::strcmp(env, "avx2") == 0) {
        if (!avx2_available()) fail(ErrorCode::BadInput, "FREELAB_KERNELS=avx2 but CPU lacks AVX2");
        return &avx2_backend();
    }
    if (avx2_available()) return &avx2_backend();
#endif
    return &scalar_backend();
}

const Backend& active() {
    static const Backend* chosen = select();
    return *chosen;
}

}  // namespace freelab::kernels
