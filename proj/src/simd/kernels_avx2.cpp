// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <limits>

#include "fdassoc/simd/kernels.hpp"

namespace fdassoc::simd::avx2 {

Nearest nearest_weighted(const double* x, const double* y, const double* w, std::size_t n,
                         double px, double py) {
    const __m256d vx = _mm256_set1_pd(px);
    const __m256d vy = _mm256_set1_pd(py);
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d best_idx = _mm256_set1_pd(-1.0);
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d step = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vy);
        const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        const __m256d m = _mm256_mul_pd(_mm256_loadu_pd(w + i), r2);
        // Strict less keeps the earliest index within a lane.
        const __m256d better = _mm256_cmp_pd(m, best, _CMP_LT_OQ);
        best = _mm256_blendv_pd(best, m, better);
        best_idx = _mm256_blendv_pd(best_idx, idx, better);
        idx = _mm256_add_pd(idx, step);
    }
    alignas(32) double bv[4];
    alignas(32) double bi[4];
    _mm256_store_pd(bv, best);
    _mm256_store_pd(bi, best_idx);
    Nearest out{n, std::numeric_limits<double>::infinity()};
    for (int l = 0; l < 4; ++l) {
        if (bi[l] < 0.0) continue;
        const auto li = static_cast<std::size_t>(bi[l]);
        if (bv[l] < out.metric || (bv[l] == out.metric && li < out.index)) out = {li, bv[l]};
    }
    for (; i < n; ++i) {
        const double dx = x[i] - px;
        const double dy = y[i] - py;
        const double m = w[i] * (dx * dx + dy * dy);
        if (m < out.metric) out = {i, m};
    }
    return out;
}

double accumulate_interference(const double* x, const double* y, const double* p,
                               const double* h, std::size_t n, double px, double py,
                               double alpha, double min_r2, std::size_t skip) {
    const __m256d vx = _mm256_set1_pd(px);
    const __m256d vy = _mm256_set1_pd(py);
    const __m256d floor = _mm256_set1_pd(min_r2);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d skip_v = _mm256_set1_pd(static_cast<double>(skip));
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d step = _mm256_set1_pd(4.0);
    const bool fourth = alpha == 4.0;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vy);
        const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        __m256d decay;
        if (fourth) {
            decay = _mm256_div_pd(one, _mm256_mul_pd(r2, r2));
        } else {
            alignas(32) double r[4];
            _mm256_store_pd(r, r2);
            for (double& v : r) v = std::pow(v, -0.5 * alpha);
            decay = _mm256_load_pd(r);
        }
        const __m256d term =
            _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(h + i)), decay);
        const __m256d keep = _mm256_and_pd(_mm256_cmp_pd(r2, floor, _CMP_GT_OQ),
                                           _mm256_cmp_pd(idx, skip_v, _CMP_NEQ_OQ));
        acc = _mm256_add_pd(acc, _mm256_and_pd(keep, term));
        idx = _mm256_add_pd(idx, step);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (; i < n; ++i) {
        const double dx = x[i] - px;
        const double dy = y[i] - py;
        const double r2 = dx * dx + dy * dy;
        if (r2 > min_r2 && i != skip) {
            sum += p[i] * h[i] * (fourth ? 1.0 / (r2 * r2) : std::pow(r2, -0.5 * alpha));
        }
    }
    return sum;
}

}  // namespace fdassoc::simd::avx2
