#pragma once

// Paley-Wiener legs B (spectral -> group) and H (spherical transform) for
// GL_n(C)^1, and the Weyl-law main term.
//
// Measures: dX and dlambda are Lebesgue measure in the first n-1
// coordinates of a and i a^*. With these, Fourier inversion reads
// h(X) = n (2 pi)^{1-n} int h^(lambda) e^{-lambda(X)} dlambda, and the Cartan
// Jacobian is J(X) = c_J prod_{a>0} sinh^2 a(X) with c_J found by
// calibration.

#include "weyllaw/arch_spherical.hpp"

#include <functional>

namespace wl {

// h(X) = exp(1 - 1/(1 - (|X|_2 / R)^2)), scaled as t^{n-1} h(tX) e^{<mu, X>}.
struct BumpProfile {
    int n = 2;
    double R = 1.0;
    double t = 1.0;
    Vec mu;  // empty means zero shift
};

double bump_value(const BumpProfile& p, const Vec& x);
cplx h_hat(const BumpProfile& p, const CVec& lambda);

// prod_{a>0} d_a h at X (directional derivatives along e_i - e_j), t = 1, mu = 0.
double bump_root_derivative(const BumpProfile& p, const Vec& x);

// Fourier inversion constant n (2 pi)^{1-n}.
double fourier_inversion_constant(int n);

// f = B(h_{mu,t}) evaluated at e^X.
class TestFunction {
public:
    explicit TestFunction(BumpProfile p);
    // Spectral quadrature (n = 2) of |W|^{-1} int h^ beta phi_{-lambda}.
    cplx eval(const Vec& x) const;
    // Closed form through prod d_a h / Weyl denominator (mu = 0, t = 1).
    double eval_derivative(const Vec& x) const;
    double nu_max() const { return nu_max_; }
    double truncation_estimate() const { return tail_; }
    const BumpProfile& profile() const { return p_; }

private:
    BumpProfile p_;
    double nu_max_ = 0, tail_ = 0;
    std::vector<double> nu_;
    std::vector<cplx> weight_;  // h^(lambda) beta(lambda) dnu, both signs folded
};

cplx test_function_eval(const BumpProfile& p, const Vec& x);

double cartan_jacobian_closed_form(int n);
// Calibrated once per n from a single round-trip point, then fixed.
double cartan_jacobian_constant(int n);

struct TransformGrid {
    int panels = 6;  // Gauss-Legendre panels per simple-root coordinate
};

// H(f)(lambda) = int_{a^+} f(e^X) phi_lambda(e^X) J(X) dX for radial f
// supported in |X|_W <= r_max.
std::vector<cplx> spherical_transform(const std::function<cplx(const Vec&)>& f, int n,
                                      const std::vector<CVec>& lambdas, double r_max,
                                      TransformGrid grid = {}, double c_j = 0.0);
cplx spherical_transform(const std::function<cplx(const Vec&)>& f, int n, const CVec& lambda,
                         double r_max, TransformGrid grid = {});

struct DomainOmega {
    enum class Kind { Empty, Ball, Box } kind = Kind::Ball;
    double radius = 1.0;  // Euclidean radius (Ball) or sup bound (Box) of Im lambda
    bool contains(const Vec& nu) const;
};

// int_{t Omega} beta(lambda) dlambda
double plancherel_mass(double t, const DomainOmega& omega, int n);
double lambda0(double t, const DomainOmega& omega, int n, int field_disc);

// Least-squares slope of log Lambda_0 against log t.
double lambda0_slope(const std::vector<double>& ts, const DomainOmega& omega, int n, int field_disc);

}  // namespace wl
