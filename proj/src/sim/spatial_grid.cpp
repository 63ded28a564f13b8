#include "fdassoc/sim/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fdassoc::sim {

namespace {
constexpr int kMaxSide = 2048;
}

SpatialGrid::SpatialGrid(const double* x, const double* y, std::size_t n, double half_width)
    : x_(x), y_(y), n_(n), origin_(-half_width) {
    // About two points per cell.
    const double target = std::sqrt(std::max<double>(1.0, 0.5 * static_cast<double>(n)));
    side_ = std::clamp(static_cast<int>(std::ceil(target)), 1, kMaxSide);
    cell_ = 2.0 * half_width / side_;
    start_.assign(static_cast<std::size_t>(side_) * side_ + 1, 0);
    std::vector<std::uint32_t> cell(n);
    for (std::size_t i = 0; i < n; ++i) {
        cell[i] = static_cast<std::uint32_t>(cell_of(y[i]) * side_ + cell_of(x[i]));
        ++start_[cell[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    items_.resize(n);
    std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
    // Increasing index within each cell.
    for (std::size_t i = 0; i < n; ++i) items_[fill[cell[i]]++] = static_cast<std::uint32_t>(i);
}

int SpatialGrid::cell_of(double v) const {
    return std::clamp(static_cast<int>(std::floor((v - origin_) / cell_)), 0, side_ - 1);
}

simd::Nearest SpatialGrid::nearest_weighted(double qx, double qy, const double* w,
                                            double w_floor) const {
    simd::Nearest best{n_, std::numeric_limits<double>::infinity()};
    if (n_ == 0) return best;
    const int cx = cell_of(qx);
    const int cy = cell_of(qy);
    auto visit = [&](int gx, int gy) {
        const std::size_t c = static_cast<std::size_t>(gy) * side_ + gx;
        for (std::uint32_t p = start_[c]; p < start_[c + 1]; ++p) {
            const std::uint32_t i = items_[p];
            const double dx = x_[i] - qx;
            const double dy = y_[i] - qy;
            const double m = w[i] * (dx * dx + dy * dy);
            if (m < best.metric || (m == best.metric && i < best.index)) best = {i, m};
        }
    };
    for (int ring = 0;; ++ring) {
        const int x0 = cx - ring, x1 = cx + ring, y0 = cy - ring, y1 = cy + ring;
        for (int gy = std::max(y0, 0); gy <= std::min(y1, side_ - 1); ++gy) {
            for (int gx = std::max(x0, 0); gx <= std::min(x1, side_ - 1); ++gx) {
                if (gx != x0 && gx != x1 && gy != y0 && gy != y1) continue;
                visit(gx, gy);
            }
        }
        if (x0 <= 0 && y0 <= 0 && x1 >= side_ - 1 && y1 >= side_ - 1) break;
        // Every unvisited point lies outside the visited block.
        double gap = std::numeric_limits<double>::infinity();
        if (x0 > 0) gap = std::min(gap, qx - (origin_ + x0 * cell_));
        if (x1 < side_ - 1) gap = std::min(gap, origin_ + (x1 + 1) * cell_ - qx);
        if (y0 > 0) gap = std::min(gap, qy - (origin_ + y0 * cell_));
        if (y1 < side_ - 1) gap = std::min(gap, origin_ + (y1 + 1) * cell_ - qy);
        gap = std::max(gap, 0.0);
        if (w_floor * gap * gap > best.metric) break;
    }
    return best;
}

}  // namespace fdassoc::sim
