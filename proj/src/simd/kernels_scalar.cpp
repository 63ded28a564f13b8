#include <cmath>
#include <limits>

#include "fdassoc/simd/kernels.hpp"

namespace fdassoc::simd::scalar {

namespace {

constexpr std::size_t kLanes = 4;

inline double decay(double r2, double alpha) {
    if (alpha == 4.0) return 1.0 / (r2 * r2);
    return std::pow(r2, -0.5 * alpha);
}

}  // namespace

Nearest nearest_weighted(const double* x, const double* y, const double* w, std::size_t n,
                         double px, double py) {
    Nearest best{n, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - px;
        const double dy = y[i] - py;
        const double m = w[i] * (dx * dx + dy * dy);
        if (m < best.metric) best = {i, m};
    }
    return best;
}

double accumulate_interference(const double* x, const double* y, const double* p,
                               const double* h, std::size_t n, double px, double py,
                               double alpha, double min_r2, std::size_t skip) {
    double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        for (std::size_t l = 0; l < kLanes; ++l) {
            const std::size_t q = i + l;
            const double dx = x[q] - px;
            const double dy = y[q] - py;
            const double r2 = dx * dx + dy * dy;
            if (r2 > min_r2 && q != skip) lane[l] += p[q] * h[q] * decay(r2, alpha);
        }
    }
    double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (; i < n; ++i) {
        const double dx = x[i] - px;
        const double dy = y[i] - py;
        const double r2 = dx * dx + dy * dy;
        if (r2 > min_r2 && i != skip) sum += p[i] * h[i] * decay(r2, alpha);
    }
    return sum;
}

}  // namespace fdassoc::simd::scalar
