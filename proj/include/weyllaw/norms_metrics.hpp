#pragma once

#include "weyllaw/padic_hecke.hpp"
#include "weyllaw/root_data.hpp"

#include <Eigen/Dense>

#include <optional>

namespace wl {

using CMatrix = Eigen::MatrixXcd;

// Where a norm is taken: a finite prime p, or the complex place.
struct Venue {
    bool arch = false;
    int p = 0;
    static Venue nonarch(int p) { return {false, p}; }
    static Venue complex() { return {true, 0}; }
};

// Log of the group norm: |xi|_W for the Cartan type xi of g.
// Non-arch norms are in base q = p, arch norms in base e.
double group_norm(const PAdicMatrix& g, int p);
double group_norm(const CMatrix& g);  // det-normalized internally

struct NormedElement {
    Venue venue;
    std::optional<PAdicMatrix> padic;
    std::optional<CMatrix> complex;
    double log_norm = 0;
    static NormedElement make(const PAdicMatrix& g, int p);
    static NormedElement make(const CMatrix& g);
};

// max_{ij} |u_ij|_p, real scale (not log); at least 1 for unipotent u.
double sup_norm(const PAdicMatrix& u, int p);

double apartment_distance(const Vec& x, const Vec& y);
// H_F(t) = (log_q |t_i|), t diagonal
Vec apartment_H(const PAdicMatrix& t, int p);
// t . X = X - H_F(t)
Vec apartment_act(const PAdicMatrix& t, const Vec& x, int p);

double extension_rescale(double log_norm, int e);

// g = m u k with m diagonal, u unit upper triangular, k in GL_n(Z_p).
struct PAdicIwasawa {
    PAdicMatrix m, u, k;
};
PAdicIwasawa iwasawa_padic(const PAdicMatrix& g, int p);

// g = m u k with m positive diagonal, u unit upper triangular, k unitary.
struct ArchIwasawa {
    CMatrix m, u, k;
};
ArchIwasawa iwasawa_arch(const CMatrix& g);

// Logs of both sides of the Iwasawa inequalities for one sample.
struct IwasawaBounds {
    double log_g = 0;
    double log_m = 0, bound_m = 0;
    double log_u = 0, bound_u = 0;
    double log_uij = 0, bound_uij = 0;  // arch only; normalized |.|_C = |.|^2
    bool holds() const { return log_m <= bound_m + 1e-9 && log_u <= bound_u + 1e-9 && log_uij <= bound_uij + 1e-9; }
};
IwasawaBounds iwasawa_bounds(const PAdicMatrix& g, int p);
IwasawaBounds iwasawa_bounds(const CMatrix& g);

}  // namespace wl
