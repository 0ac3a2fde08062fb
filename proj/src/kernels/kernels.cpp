#include "visus/kernels.hpp"

#include <cstdlib>

namespace visus::kernels {

bool cpu_supports_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {
const Ops* g_active = nullptr;

const Ops* resolve(std::string_view backend) {
    if (backend == "scalar") return &scalar();
    if (backend == "avx2") {
        const Ops* ops = avx2();
        return (ops && cpu_supports_avx2()) ? ops : nullptr;
    }
    if (backend == "auto" || backend.empty()) {
        const Ops* ops = avx2();
        return (ops && cpu_supports_avx2()) ? ops : &scalar();
    }
    return nullptr;  // unknown name
}
}  // namespace

bool select(std::string_view backend) {
    const Ops* ops = resolve(backend);
    if (!ops) return false;
    g_active = ops;
    return true;
}

const Ops& active() {
    if (!g_active) {
        const char* env = std::getenv("VISUS_SIMD");
        if (!env || !select(env)) select("auto");
    }
    return *g_active;
}

}  // namespace visus::kernels
