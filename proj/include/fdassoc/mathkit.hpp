#pragma once

// Unit conversions and the gamma-function family used by every closed form.
//
// Conventions follow the integral definitions
//   Gamma(s)       = int_0^inf x^{s-1} e^{-x} dx
//   Gamma(s, a)    = int_a^inf x^{s-1} e^{-x} dx      (upper, any real s when a > 0)
//   gamma(s, b)    = int_0^b   x^{s-1} e^{-x} dx      (lower, s > 0)
//   Gamma(s, a, b) = int_a^b   x^{s-1} e^{-x} dx      (generalized)
// All functions are pure and thread-safe.

#include <limits>

namespace fdassoc::math {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A level in dB or dBm; which one is fixed by the call site.
struct Decibel {
    double value;
};

/// A linear quantity: watts for powers, a plain ratio for gains.
struct Linear {
    double value;
};

Linear dbm_to_watts(Decibel x);
Linear db_to_linear(Decibel x);
Decibel watts_to_dbm(Linear x);
Decibel linear_to_db(Linear x);

/// Euler gamma function. Throws DomainError at s = 0, -1, -2, ...
double gamma_fn(double s);

/// Upper incomplete gamma. Negative orders are reached by downward
/// recurrence from a positive-order evaluation; a = 0 requires s > 0.
double upper_incomplete_gamma(double s, double a);

/// Lower incomplete gamma, s > 0, b in [0, inf].
double lower_incomplete_gamma(double s, double b);

/// int_a^b x^{s-1} e^{-x} dx with 0 <= a <= b <= inf.
double generalized_gamma(double s, double a, double b);

/// 32-point Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
    const double* nodes;
    const double* weights;
    int size;
};
QuadratureRule gauss_legendre_32();

}  // namespace fdassoc::math
