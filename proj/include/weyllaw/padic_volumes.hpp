#pragma once

// Volumes of sublevel sets of integer polynomials over Q_p^d, with
// vol(Z_p^d) = 1 and Gamma_d(rho) = p^{-rho} Z_p^d.

#include "weyllaw/exec.hpp"
#include "weyllaw/padic_hecke.hpp"

#include <string>
#include <vector>

namespace wl {

struct Monomial {
    i64 coef = 0;
    std::vector<int> exp;
};

struct Poly {
    int d = 1;
    std::vector<Monomial> terms;  // merged, nonzero
    int total_degree() const;
    bool is_constant() const;
    // "3*x0^2*x1 - x1 + 7"; variables x0..x{d-1}
    static Poly parse(const std::string& text, int d);
    std::string str() const;
};

Poly translate(const Poly& f, const std::vector<i64>& c);  // f(x + c)

struct PolySystem {
    int d = 1;
    std::vector<Poly> polys;
    std::vector<int> alpha;  // multidegree cap
    double delta = 1;        // coefficient-size floor
    bool in_class() const;   // degree cap and |p_i| > delta
    double A_F(int p) const; // max p-adic absolute value of coefficients
};

// Exact vol{x in Gamma_d(rho) : val f(x) >= j} by counting residues mod
// p^{m + rho}; Unstable if level m + 1 disagrees.
BigRat sublevel_volume(const Poly& f, int p, int j, int m, int rho = 0, Exec exec = Exec::Parallel);
// Same volume by refining cells until the valuation is decided.
BigRat sublevel_volume_tree(const Poly& f, int p, int j, int rho = 0);

struct PowerlawFit {
    double t = 0;
    double C = 0;
    double C_prev = 0;  // C with jmax - 1
    bool stable() const { return C_prev > 0 && std::abs(C / C_prev - 1) <= 0.2; }
};
// Fit vol(j) ~ C vol(Gamma) q^{t rho} eps^t over eps = p^{-j}, j = 1..jmax.
PowerlawFit powerlaw_fit(const Poly& f, int p, int rho, int jmax);

struct LogIntegral {
    double value = 0;  // contribution of cells with decided valuations
    double tail = 0;   // bound on the remaining cells
    bool certified = true;
    int max_depth = 0;
};
// int_{Gamma_d(rho)} prod_i |log |p_i(x)|_p| dx to cell depth m.
LogIntegral log_integral(const PolySystem& ps, int p, int rho, int m, double tail_tol = 0.05);

// q^{rho t} delta^{-t} + log^k q^rho + log^k A_F + 1, times vol(Gamma)
double log_integral_bracket(const PolySystem& ps, int p, int rho, double t);

}  // namespace wl
