#pragma once

// Spherical analysis on GL_n(C)^1.
//
// Conventions: lambda(X) = sum lambda_i X_i, <a, b> = 2n sum a_i b_i, and
// rho is the sum of positive roots (n-1, n-3, ..., 1-n), which is the
// half-sum counted with the root multiplicity 2 of the complex group. With
// this rho the Harish-Chandra integral exp((lambda + rho)(H_0(k e^X))) over
// U(n) reproduces the alternant formula, and the Weyl denominator equals
// prod_{a>0} 2 sinh a(X).

#include "weyllaw/exec.hpp"
#include "weyllaw/root_data.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace wl {

using cplx = std::complex<double>;

// pi(lambda) = prod_{a>0} <a, lambda>
cplx pi_poly(const CVec& lambda);
double pi_rho(int n);

cplx c_function(const CVec& lambda);
double plancherel_density(const CVec& lambda);
double beta_hat(double t, const CVec& lambda);

// det(exp(lambda_i X_j)), the alternating sum over W.
cplx alternant(const CVec& lambda, const Vec& x);

// phi_lambda(e^X). Degenerate inputs go through a small-argument Schur
// expansion or through perturbation with Richardson extrapolation.
cplx spherical_eval(const CVec& lambda, const Vec& x);

// Forces the perturbation path (used to test the degenerate route).
cplx spherical_eval_perturbed(const CVec& lambda, const Vec& x);

// c(lambda)^{-1} phi_lambda(e^X), entire in lambda.
cplx c_inv_phi(const CVec& lambda, const Vec& x);

struct McEstimate {
    cplx mean;
    double std_error;
};

McEstimate spherical_oracle_mc(const CVec& lambda, const Vec& x, std::int64_t samples,
                               std::uint64_t seed, Exec exec = Exec::Parallel);

Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& gen);

// g = u a k with u unit upper triangular, a positive diagonal, k unitary.
struct IwasawaUAK {
    Eigen::MatrixXcd u;
    Vec a;
    Eigen::MatrixXcd k;
};
IwasawaUAK iwasawa_uak(const Eigen::MatrixXcd& g);

// log a from the decomposition above.
Vec iwasawa_H0(const Eigen::MatrixXcd& g);

// Right side of the descent formula for c(lambda)^{-1} phi_lambda(e^X),
// with Levi subgroup generated by the given simple roots (indices 0..n-2).
cplx descent_eval(const CVec& lambda, const Vec& x, const std::vector<int>& simple_subset);

// Levi blocks generated by a set of simple roots, as index ranges [b, e).
std::vector<std::pair<int, int>> levi_blocks(int n, const std::vector<int>& simple_subset);

}  // namespace wl
