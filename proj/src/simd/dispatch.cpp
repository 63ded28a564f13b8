#include <atomic>
#include <cstdlib>
#include <cstring>

#include "fdassoc/errors.hpp"
#include "fdassoc/simd/kernels.hpp"

namespace fdassoc::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detected_isa()};
    return isa;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
    const char* env = std::getenv("FDASSOC_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (isa == Isa::Avx2 && !cpu_has_avx2()) throw ConfigError("this CPU does not support AVX2");
    current().store(isa, std::memory_order_relaxed);
}

Nearest nearest_weighted(const double* x, const double* y, const double* w, std::size_t n,
                         double px, double py) {
    if (active_isa() == Isa::Avx2) return avx2::nearest_weighted(x, y, w, n, px, py);
    return scalar::nearest_weighted(x, y, w, n, px, py);
}

double accumulate_interference(const double* x, const double* y, const double* p,
                               const double* h, std::size_t n, double px, double py,
                               double alpha, double min_r2, std::size_t skip) {
    if (active_isa() == Isa::Avx2) {
        return avx2::accumulate_interference(x, y, p, h, n, px, py, alpha, min_r2, skip);
    }
    return scalar::accumulate_interference(x, y, p, h, n, px, py, alpha, min_r2, skip);
}

}  // namespace fdassoc::simd
