#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fdassoc/simd/kernels.hpp"

namespace fdassoc::sim {

/// Bucket grid over the square [-half_width, half_width]^2 for exact weighted
/// nearest-point queries.
class SpatialGrid {
public:
    SpatialGrid() = default;
    SpatialGrid(const double* x, const double* y, std::size_t n, double half_width);

    /// argmin_i w[i] |p_i - q|^2, lowest index on ties, same answer as the
    /// brute-force kernel. `w_floor` must not exceed any w[i].
    simd::Nearest nearest_weighted(double qx, double qy, const double* w, double w_floor) const;

private:
    const double* x_ = nullptr;
    const double* y_ = nullptr;
    std::size_t n_ = 0;
    double origin_ = 0.0;
    double cell_ = 1.0;
    int side_ = 0;
    std::vector<std::uint32_t> start_;
    std::vector<std::uint32_t> items_;

    int cell_of(double v) const;
};

}  // namespace fdassoc::sim
