#include "weyllaw/norms_metrics.hpp"

#include "weyllaw/errors.hpp"

#include <cmath>

namespace wl {

namespace {

constexpr int kArchE = 2;  // ramification index of C over R

CMatrix det_normalized(const CMatrix& g) {
    if (g.rows() != g.cols()) throw LengthMismatch("matrix must be square");
    const double a = std::abs(g.determinant());
    if (!(a > 0) || !std::isfinite(a)) throw SingularMatrix("matrix is not invertible");
    return g / std::pow(a, 1.0 / static_cast<double>(g.rows()));
}

}  // namespace

double group_norm(const PAdicMatrix& g, int p) { return weyl_norm(cartan_decompose(g, p)); }

double group_norm(const CMatrix& g) {
    const CMatrix h = det_normalized(g);
    Eigen::JacobiSVD<CMatrix> svd(h);
    const auto& s = svd.singularValues();
    Vec logs(static_cast<size_t>(s.size()));
    for (Eigen::Index i = 0; i < s.size(); ++i) logs[i] = std::log(s[i]);
    return weyl_norm(logs);
}

NormedElement NormedElement::make(const PAdicMatrix& g, int p) {
    NormedElement e;
    e.venue = Venue::nonarch(p);
    e.padic = g;
    e.log_norm = group_norm(g, p);
    return e;
}

NormedElement NormedElement::make(const CMatrix& g) {
    NormedElement e;
    e.venue = Venue::complex();
    e.complex = g;
    e.log_norm = group_norm(g);
    return e;
}

double sup_norm(const PAdicMatrix& u, int p) {
    int v = kInfiniteValuation;
    for (const auto& x : u.a) v = std::min(v, valuation(x, p));
    return std::pow(static_cast<double>(p), -v);
}

double apartment_distance(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw LengthMismatch("apartment points differ in length");
    Vec d(x.size());
    for (size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    return weyl_norm(d);
}

Vec apartment_H(const PAdicMatrix& t, int p) {
    Vec h(t.n);
    for (int i = 0; i < t.n; ++i) {
        for (int j = 0; j < t.n; ++j)
            if (i != j && t(i, j) != 0) throw PreconditionViolated("torus element must be diagonal");
        if (t(i, i) == 0) throw SingularMatrix("torus element has a zero entry");
        h[i] = -valuation(t(i, i), p);
    }
    return h;
}

Vec apartment_act(const PAdicMatrix& t, const Vec& x, int p) {
    const Vec h = apartment_H(t, p);
    if (h.size() != x.size()) throw LengthMismatch("apartment point and torus differ in rank");
    Vec y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] - h[i];
    return y;
}

double extension_rescale(double log_norm, int e) {
    if (e < 1) throw PreconditionViolated("ramification index must be at least 1");
    return log_norm * e;
}

PAdicIwasawa iwasawa_padic(const PAdicMatrix& g, int p) {
    const int n = g.n;
    PAdicMatrix b = g, kp = PAdicMatrix::identity(n);
    auto swap_cols = [n](PAdicMatrix& a, int c1, int c2) {
        for (int r = 0; r < n; ++r) std::swap(a(r, c1), a(r, c2));
    };
    // column operations over Z_p, bottom row first, until b = g k' is upper triangular
    for (int r = n - 1; r >= 0; --r) {
        int best = kInfiniteValuation, bc = -1;
        for (int c = 0; c <= r; ++c) {
            const int v = valuation(b(r, c), p);
            if (v < best) {
                best = v;
                bc = c;
            }
        }
        if (bc < 0) throw SingularMatrix("matrix is not invertible");
        swap_cols(b, bc, r);
        swap_cols(kp, bc, r);
        for (int c = 0; c < r; ++c) {
            if (b(r, c) == 0) continue;
            const BigRat f = b(r, c) / b(r, r);
            for (int i = 0; i < n; ++i) {
                b(i, c) -= f * b(i, r);
                kp(i, c) -= f * kp(i, r);
            }
        }
    }
    PAdicIwasawa out{PAdicMatrix(n), PAdicMatrix(n), kp.inverse()};
    for (int i = 0; i < n; ++i) {
        out.m(i, i) = b(i, i);
        for (int j = 0; j < n; ++j) out.u(i, j) = b(i, j) / b(i, i);
    }
    for (const auto& x : out.k.a)
        if (valuation(x, p) < 0) throw AssertionFailed("Iwasawa factor k is not integral");
    if (valuation(out.k.det(), p) != 0) throw AssertionFailed("Iwasawa factor k is not a unit");
    return out;
}

ArchIwasawa iwasawa_arch(const CMatrix& g) {
    const Eigen::Index n = g.rows();
    if (g.cols() != n) throw LengthMismatch("matrix must be square");
    // g^* J = Q R  =>  g = (J R^* J)(J Q^*) with J the reversal
    CMatrix J = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) J(i, n - 1 - i) = 1;
    Eigen::HouseholderQR<CMatrix> qr(g.adjoint() * J);
    const CMatrix Q = qr.householderQ();
    const CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    const CMatrix B = J * R.adjoint() * J;
    CMatrix K = J * Q.adjoint();
    ArchIwasawa out{CMatrix::Zero(n, n), CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
    CMatrix phase = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = std::abs(B(i, i));
        if (!(a > 0)) throw SingularMatrix("matrix is not invertible");
        out.m(i, i) = a;
        phase(i, i) = B(i, i) / a;
    }
    // B = m phase u0 = m (phase u0 phase^-1) phase
    const CMatrix u0 = (B.diagonal().asDiagonal().inverse() * B);
    out.u = phase * u0 * phase.adjoint();
    out.k = phase * K;
    return out;
}

IwasawaBounds iwasawa_bounds(const PAdicMatrix& g, int p) {
    const auto d = iwasawa_padic(g, p);
    IwasawaBounds b;
    b.log_g = group_norm(g, p);
    b.log_m = group_norm(d.m, p);
    b.bound_m = b.log_g;
    b.log_u = group_norm(d.u, p);
    b.bound_u = 2 * b.log_g;
    return b;
}

IwasawaBounds iwasawa_bounds(const CMatrix& g0) {
    const CMatrix g = det_normalized(g0);
    const auto d = iwasawa_arch(g);
    const double n = static_cast<double>(g.rows());
    IwasawaBounds b;
    b.log_g = group_norm(g);
    b.log_m = group_norm(d.m);
    b.bound_m = kArchE * (std::log(n) + b.log_g);
    double umax = 0;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = i + 1; j < g.rows(); ++j) umax = std::max(umax, std::abs(d.u(i, j)));
    b.log_uij = umax > 0 ? kArchE * std::log(umax) : 0;
    b.bound_uij = 2 * kArchE * (std::log(n) + b.log_g);
    b.log_u = group_norm(d.u);
    b.bound_u = 4 * (n - 1) * std::log(n) + 3 * (n - 1) * b.log_g;
    return b;
}

}  // namespace wl
