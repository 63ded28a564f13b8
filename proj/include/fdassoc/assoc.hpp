#pragma once

// Association probabilities and serving-distance statistics under weighted
// path-loss association. Tier indices refer to the normalized order
// (U/D ascending), where a UE's UL tier never exceeds its DL tier.

#include <cstddef>
#include <vector>

#include "fdassoc/model.hpp"

namespace fdassoc {

enum class Link { Dl, Ul };

/// Square matrix, row-major.
class Matrix {
public:
    explicit Matrix(std::size_t n = 0, double fill = 0.0) : n_(n), data_(n * n, fill) {}
    std::size_t size() const { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t n_;
    std::vector<double> data_;
};

struct EffectiveDensity {
    double dl;
    double ul;
};

struct TierProbabilities {
    std::vector<double> dl;
    std::vector<double> ul;
};

std::vector<EffectiveDensity> effective_densities(const Scenario& s);
TierProbabilities per_tier_probability(const Scenario& s);

/// psi(j, k): probability of DL tier j and UL tier k.
Matrix joint_association_matrix(const Scenario& s);

/// sum_i max(D_j/D_i, U_j/U_i)^{2/alpha} lambda_i: the density governing the
/// distance to a BS that wins both criteria.
double same_tier_density(const Scenario& s, std::size_t j);

double marginal_distance_cdf(const Scenario& s, std::size_t j, Link link, double r);
double marginal_distance_moment(const Scenario& s, std::size_t j, Link link, int n);
/// Real orders above -2.
double marginal_distance_moment_real(const Scenario& s, std::size_t j, Link link, double order);

/// Density of (R_j, R_k) jointly with the (j, k) association event. For j == k
/// only r_j == r_k is possible and the one-dimensional density is returned.
double joint_distance_pdf(const Scenario& s, std::size_t j, std::size_t k, double r_j, double r_k);

/// E[R^order 1{(j,k)}], R the DL (Link::Dl) or UL serving distance.
double joint_partial_moment(const Scenario& s, std::size_t j, std::size_t k, Link which,
                            double order);

/// E[R^order | (j,k)]. Throws DomainError when psi(j, k) == 0.
double joint_distance_moment(const Scenario& s, std::size_t j, std::size_t k, Link which,
                             int order);
double joint_distance_moment_real(const Scenario& s, std::size_t j, std::size_t k, Link which,
                                  double order);

/// pi Lambda_k^UL (P_max / (rho_k G^eps))^{2/(eps alpha)}: the cap radius in
/// units of the UL serving-distance law. +inf when the cap is never reached.
double tx_cap_argument(const Scenario& s, std::size_t k);

double tx_power_cdf(const Scenario& s, std::size_t k, double t);
/// E[Gamma_k^n] including the point mass at P_max.
double tx_power_moment(const Scenario& s, std::size_t k, int n);
/// E[Gamma_k^n 1{Gamma_k < P_max}].
double tx_power_moment_below_cap(const Scenario& s, std::size_t k, int n);

}  // namespace fdassoc
