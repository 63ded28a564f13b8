#pragma once

// Hot loops of the simulator. Each kernel has a scalar reference and an AVX2
// variant that returns bit-identical results: the scalar code walks the data
// in the same four-lane order the vector code uses.

#include <cstddef>

namespace fdassoc::simd {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);

/// Best instruction set supported by this CPU, unless FDASSOC_SIMD=scalar.
Isa detected_isa();
/// The set in use; tests may override it.
Isa active_isa();
void set_active_isa(Isa isa);  // throws ConfigError if unsupported here

struct Nearest {
    std::size_t index;  // n when the input is empty
    double metric;
};

/// argmin_i w[i] * |(x[i], y[i]) - (px, py)|^2, lowest index on ties.
Nearest nearest_weighted(const double* x, const double* y, const double* w, std::size_t n,
                         double px, double py);

/// sum_i p[i] h[i] r_i^{-alpha} over points with r_i^2 > min_r2, skipping
/// index `skip` (pass n to skip nothing).
double accumulate_interference(const double* x, const double* y, const double* p,
                               const double* h, std::size_t n, double px, double py,
                               double alpha, double min_r2, std::size_t skip);

namespace scalar {
Nearest nearest_weighted(const double* x, const double* y, const double* w, std::size_t n,
                         double px, double py);
double accumulate_interference(const double* x, const double* y, const double* p,
                               const double* h, std::size_t n, double px, double py,
                               double alpha, double min_r2, std::size_t skip);
}  // namespace scalar

namespace avx2 {
Nearest nearest_weighted(const double* x, const double* y, const double* w, std::size_t n,
                         double px, double py);
double accumulate_interference(const double* x, const double* y, const double* p,
                               const double* h, std::size_t n, double px, double py,
                               double alpha, double min_r2, std::size_t skip);
}  // namespace avx2

}  // namespace fdassoc::simd
