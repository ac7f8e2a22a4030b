#include "weyllaw/paley_wiener.hpp"

#include "weyllaw/errors.hpp"
#include "weyllaw/field_arith.hpp"
#include "weyllaw/quadrature.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace wl {

namespace {

constexpr double kPi = std::numbers::pi;

double euclid(const Vec& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double bump_profile(double s) {  // s = |X|_2 / R
    if (s >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

int num_pos(int n) { return n * (n - 1) / 2; }

// Truncated multivariate dual numbers: one nilpotent eps_k per positive
// root with eps_k^2 = 0; the coefficient of a bitmask is the mixed
// derivative along the corresponding roots.
struct Jet {
    std::vector<double> c;
    explicit Jet(int nvars) : c(size_t{1} << nvars, 0.0) {}
    int mask() const { return static_cast<int>(c.size()) - 1; }
};

Jet jet_mul(const Jet& x, const Jet& y) {
    Jet r(0);
    r.c.assign(x.c.size(), 0.0);
    const int full = x.mask();
    for (int m = 0; m <= full; ++m)
        for (int s = m;; s = (s - 1) & m) {
            r.c[m] += x.c[s] * y.c[m ^ s];
            if (s == 0) break;
        }
    return r;
}

// f(x0 + d) = sum_k f^(k)(x0) d^k / k! for nilpotent d (no constant term)
Jet jet_apply(const Jet& d, const std::vector<double>& taylor) {
    Jet r(0), pw(0);
    r.c.assign(d.c.size(), 0.0);
    pw.c.assign(d.c.size(), 0.0);
    pw.c[0] = 1.0;
    for (size_t k = 0; k < taylor.size(); ++k) {
        for (size_t m = 0; m < r.c.size(); ++m) r.c[m] += taylor[k] * pw.c[m];
        pw = jet_mul(pw, d);
    }
    return r;
}

// Orthonormal basis of {sum x_i = 0} (Helmert), rows are vectors in R^n.
std::vector<Vec> helmert(int n) {
    std::vector<Vec> b;
    for (int k = 1; k < n; ++k) {
        Vec v(n, 0.0);
        const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
        for (int i = 0; i < k; ++i) v[i] = s;
        v[k] = -k * s;
        b.push_back(v);
    }
    return b;
}

// Gauss-Hermite nodes for the weight exp(-y^2 / 2), by Golub-Welsch.
std::vector<Node> gauss_hermite_prob(int m) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    std::vector<Node> out;
    const double mass = std::sqrt(2.0 * kPi);
    for (int k = 0; k < m; ++k) {
        const double v = es.eigenvectors()(0, k);
        out.push_back({es.eigenvalues()(k), mass * v * v});
    }
    return out;
}

CVec imaginary(const Vec& nu) {
    CVec l(nu.size());
    for (size_t i = 0; i < nu.size(); ++i) l[i] = cplx(0.0, nu[i]);
    return l;
}

// Gauss nodes on [0, 1] with weights times b(s), cached per resolution
// level (2^level panels).
struct UnitBumpNodes {
    std::vector<long double> s, wb;
};

const UnitBumpNodes& unit_bump_nodes(int level) {
    static std::mutex mu;
    static std::map<int, UnitBumpNodes> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(level);
    if (it != cache.end()) return it->second;
    using G = boost::math::quadrature::gauss<long double, 20>;
    UnitBumpNodes u;
    const int panels = 1 << level;
    const long double h = 1.0L / panels;
    for (int k = 0; k < panels; ++k) {
        const long double c = (k + 0.5L) * h, r = 0.5L * h;
        for (size_t i = 0; i < G::abscissa().size(); ++i)
            for (int sgn : {1, -1}) {
                if (sgn < 0 && G::abscissa()[i] == 0) continue;
                const long double x = c + sgn * r * G::abscissa()[i];
                if (x >= 1) continue;
                u.s.push_back(x);
                u.wb.push_back(r * G::weights()[i] * std::exp(1 - 1 / (1 - x * x)));
            }
    }
    return cache.emplace(level, std::move(u)).first->second;
}

// 2 int_0^1 b(s) cosh(z s) ds; long double accumulation and argument
// reduction keep the oscillatory sum clean far into the decay tail.
cplx unit_bump_cosh(cplx z) {
    const long double w = std::abs(z.imag());
    int level = 2;
    while ((1 << level) < 4 + w / 8.0L) ++level;
    const auto& u = unit_bump_nodes(level);
    constexpr long double two_pi = 6.283185307179586476925286766559L;
    if (z.real() == 0.0) {
        long double acc = 0;
        for (size_t k = 0; k < u.s.size(); ++k) {
            long double th = w * u.s[k];
            th -= two_pi * std::floor(th / two_pi);
            acc += u.wb[k] * std::cos(static_cast<double>(th));
        }
        return {static_cast<double>(2 * acc), 0.0};
    }
    const std::complex<long double> zl(z.real(), z.imag());
    std::complex<long double> acc = 0;
    for (size_t k = 0; k < u.s.size(); ++k) acc += u.wb[k] * std::cosh(zl * u.s[k]);
    return {static_cast<double>(2 * acc.real()), static_cast<double>(2 * acc.imag())};
}

cplx h_hat_line(const BumpProfile& p, const CVec& lambda) {
    // n = 2, X = (x, -x): lambda(X) = (lambda_1 - lambda_2) x, <mu, X> = 4 (mu_1 - mu_2) x,
    // support |x| <= half; substitute x = half * s.
    const double half = p.R / (std::sqrt(2.0) * p.t);
    cplx ex = lambda[0] - lambda[1];
    if (!p.mu.empty()) ex += 4.0 * (p.mu[0] - p.mu[1]);
    return p.t * half * unit_bump_cosh(ex * half);
}

// Radial Fourier transform in r = n - 1 dimensions:
// (2 pi)^{r/2} xi^{1-r/2} int_0^R b(s/R) J_{r/2-1}(xi s) s^{r/2} ds / sqrt(n).
double h_hat_radial(int n, double R, double xi) {
    const int r = n - 1;
    const double nu = r / 2.0 - 1.0;
    const int panels = std::max(8, static_cast<int>(std::ceil(xi * R / 2.0)));
    CompensatedSum<double> acc;
    for (const auto& nd : gauss_panels(0.0, R, panels)) {
        const double s = nd.x, b = bump_profile(s / R);
        if (b == 0.0) continue;
        double kern;
        if (xi * s < 1e-8)
            kern = std::pow(s / 2.0, nu) / std::tgamma(nu + 1.0) * std::pow(s, r / 2.0);
        else
            kern = std::pow(xi, -nu) * std::cyl_bessel_j(nu, xi * s) * std::pow(s, r / 2.0);
        acc.add(nd.w * b * kern);
    }
    return std::pow(2.0 * kPi, r / 2.0) * acc.value() / std::sqrt(static_cast<double>(n));
}

}  // namespace

double bump_value(const BumpProfile& p, const Vec& x) {
    const int n = static_cast<int>(x.size());
    double v = std::pow(p.t, n - 1) * bump_profile(p.t * euclid(x) / p.R);
    if (!p.mu.empty() && v != 0.0) {
        double e = 0;
        for (int i = 0; i < n; ++i) e += p.mu[i] * x[i];
        v *= std::exp(2.0 * n * e);
    }
    return v;
}

cplx h_hat(const BumpProfile& p, const CVec& lambda) {
    if (static_cast<int>(lambda.size()) != p.n) throw LengthMismatch("lambda length differs from n");
    if (p.n == 2) return h_hat_line(p, lambda);
    const bool shifted = std::any_of(p.mu.begin(), p.mu.end(), [](double m) { return m != 0.0; });
    if (shifted) throw PreconditionViolated("shifted bumps are supported for n = 2 only");
    double xi2 = 0;
    for (const auto& l : lambda) {
        if (std::abs(l.real()) > 1e-14) throw PreconditionViolated("radial route needs imaginary lambda");
        xi2 += l.imag() * l.imag();
    }
    return h_hat_radial(p.n, p.R, std::sqrt(xi2) / p.t);
}

double bump_root_derivative(const BumpProfile& p, const Vec& x) {
    const int n = static_cast<int>(x.size());
    const RootSystem rs(n);
    const int N = rs.num_positive();
    if (euclid(x) >= p.R) return 0.0;
    // s = sum_i (x_i + sum_k eps_k (e_{i_k} - e_{j_k})_i)^2 as a jet
    Jet s(N);
    for (int i = 0; i < n; ++i) {
        Jet y(N);
        y.c[0] = x[i];
        for (int k = 0; k < N; ++k) {
            const auto [a, b] = rs.positive_roots[k];
            if (a == i) y.c[size_t{1} << k] = 1.0;
            if (b == i) y.c[size_t{1} << k] = -1.0;
        }
        const Jet y2 = jet_mul(y, y);
        for (size_t m = 0; m < s.c.size(); ++m) s.c[m] += y2.c[m];
    }
    // u = 1 - s / R^2, v = 1 / u, h = exp(1 - v)
    const double R2 = p.R * p.R;
    Jet du = s;
    for (auto& c : du.c) c = -c / R2;
    const double u0 = 1.0 - s.c[0] / R2;
    du.c[0] = 0.0;
    std::vector<double> inv(N + 1);
    for (int k = 0; k <= N; ++k) inv[k] = ((k % 2) ? -1.0 : 1.0) / std::pow(u0, k + 1);
    Jet v = jet_apply(du, inv);
    const double w0 = 1.0 - v.c[0];
    Jet dw = v;
    for (auto& c : dw.c) c = -c;
    dw.c[0] = 0.0;
    std::vector<double> ex(N + 1);
    double fact = 1;
    for (int k = 0; k <= N; ++k) {
        if (k > 0) fact *= k;
        ex[k] = std::exp(w0) / fact;
    }
    return jet_apply(dw, ex).c.back();
}

double fourier_inversion_constant(int n) { return n / std::pow(2.0 * kPi, n - 1); }

TestFunction::TestFunction(BumpProfile p) : p_(std::move(p)) {
    if (p_.n != 2) return;  // n >= 3 evaluates through the derivative route only
    const bool shifted = std::any_of(p_.mu.begin(), p_.mu.end(), [](double m) { return m != 0.0; });
    auto weight_at = [&](double nu) {
        const CVec lam{cplx(0, nu), cplx(0, -nu)};
        return h_hat(p_, lam) * plancherel_density(lam);
    };
    // cutoff where |h^| beta stays below 3e-11 over [nu, 1.5 nu]; the
    // boundary contribution is bounded by that envelope times the window
    auto envelope = [&](double a, double b) {
        double m = 0;
        for (double nu = a; nu <= b; nu += 1.0) {
            m = std::max(m, std::abs(weight_at(nu)));
            if (shifted) m = std::max(m, std::abs(weight_at(-nu)));
        }
        return m;
    };
    double cut = 8.0 * p_.t / p_.R;
    double env;
    while ((env = envelope(cut, 1.5 * cut)) >= 3e-11) {
        cut *= 1.25;
        if (cut > 1e5) throw TruncationTooCoarse("spectral cutoff did not settle below 1e5");
    }
    nu_max_ = cut;
    tail_ = env * 0.5 * cut;
    if (tail_ > 1e-6) throw TruncationTooCoarse("boundary contribution above 1e-6");
    // integrand oscillates at most like exp(i nu (2|x| + support)), panels of width 2
    const int panels = static_cast<int>(std::ceil(cut / 2.0));
    for (const auto& nd : gauss_panels(0.0, cut, panels)) {
        // |W| = 2; fold nu -> -nu when h is W-invariant
        nu_.push_back(nd.x);
        weight_.push_back(weight_at(nd.x) * nd.w * (shifted ? 0.5 : 1.0));
        if (shifted) {
            nu_.push_back(-nd.x);
            weight_.push_back(weight_at(-nd.x) * nd.w * 0.5);
        }
    }
}

cplx TestFunction::eval(const Vec& x) const {
    if (p_.n != 2) return eval_derivative(x);
    CompensatedSum<double> sr, si;
    for (size_t k = 0; k < nu_.size(); ++k) {
        const CVec ml{cplx(0, -nu_[k]), cplx(0, nu_[k])};
        const cplx v = weight_[k] * spherical_eval(ml, x);
        sr.add(v.real());
        si.add(v.imag());
    }
    return {sr.value(), si.value()};
}

double TestFunction::eval_derivative(const Vec& x) const {
    const bool shifted = std::any_of(p_.mu.begin(), p_.mu.end(), [](double m) { return m != 0.0; });
    if (shifted || p_.t != 1.0) throw PreconditionViolated("derivative route needs mu = 0 and t = 1");
    const int n = p_.n, N = num_pos(n);
    const RootSystem rs(n);
    // (-2n)^N prod d_a h / (C_F pi(rho) prod 2 sinh a(X)); on walls take the
    // limit through a symmetric offset in the degenerate root directions.
    double den = 1;
    bool wall = false;
    for (const auto& [i, j] : rs.positive_roots) {
        const double d = x[i] - x[j];
        if (std::abs(d) < 1e-7) wall = true;
        den *= 2.0 * std::sinh(d);
    }
    if (wall) {
        Vec y = x;
        for (int i = 0; i < n; ++i) y[i] += 1e-4 * (n - 1 - 2 * i) / n;
        Vec z = x;
        for (int i = 0; i < n; ++i) z[i] += 5e-5 * (n - 1 - 2 * i) / n;
        const double f1 = eval_derivative(y), f2 = eval_derivative(z);
        return (4 * f2 - f1) / 3;
    }
    const double num = std::pow(-2.0 * n, N) * bump_root_derivative(p_, x);
    return num / (fourier_inversion_constant(n) * pi_rho(n) * den);
}

cplx test_function_eval(const BumpProfile& p, const Vec& x) { return TestFunction(p).eval(x); }

double cartan_jacobian_closed_form(int n) {
    return std::pow(4.0, num_pos(n)) * fourier_inversion_constant(n);
}

namespace {

// simple-root coordinates a_k = X_k - X_{k+1} -> X with sum zero
Vec from_simple(const std::vector<double>& a) {
    const int n = static_cast<int>(a.size()) + 1;
    Vec x(n, 0.0);
    for (int i = n - 2; i >= 0; --i) x[i] = x[i + 1] + a[i];
    double m = 0;
    for (double v : x) m += v;
    m /= n;
    for (double& v : x) v -= m;
    return x;
}

double simple_jacobian(int n) {
    // |det d(X_1..X_{n-1}) / d(a_1..a_{n-1})|
    Eigen::MatrixXd J(n - 1, n - 1);
    for (int k = 0; k < n - 1; ++k) {
        std::vector<double> a(n - 1, 0.0);
        a[k] = 1.0;
        const Vec x = from_simple(a);
        for (int i = 0; i < n - 1; ++i) J(i, k) = x[i];
    }
    return std::abs(J.determinant());
}

std::mutex g_cj_mutex;
std::map<int, double> g_cj;

}  // namespace

std::vector<cplx> spherical_transform(const std::function<cplx(const Vec&)>& f, int n,
                                      const std::vector<CVec>& lambdas, double r_max,
                                      TransformGrid grid, double c_j) {
    if (n < 2) throw PreconditionViolated("n >= 2 required");
    if (c_j == 0.0) c_j = cartan_jacobian_constant(n);
    const RootSystem rs(n);
    const auto nodes = gauss_panels(0.0, 2.0 * r_max, grid.panels);
    const double jac = simple_jacobian(n);
    const int r = n - 1;
    std::vector<CompensatedSum<double>> re(lambdas.size()), im(lambdas.size());
    std::vector<size_t> idx(r, 0);
    for (;;) {
        std::vector<double> a(r);
        double w = jac * c_j;
        for (int k = 0; k < r; ++k) {
            a[k] = nodes[idx[k]].x;
            w *= nodes[idx[k]].w;
        }
        const Vec x = from_simple(a);
        if (weyl_norm(x) <= r_max) {
            double J = 1;
            for (const auto& [i, j] : rs.positive_roots) {
                const double s = std::sinh(x[i] - x[j]);
                J *= s * s;
            }
            const cplx fx = f(x);
            if (fx != cplx(0.0))
                for (size_t l = 0; l < lambdas.size(); ++l) {
                    const cplx v = w * J * fx * spherical_eval(lambdas[l], x);
                    re[l].add(v.real());
                    im[l].add(v.imag());
                }
        }
        int k = 0;
        while (k < r && ++idx[k] == nodes.size()) idx[k++] = 0;
        if (k == r) break;
    }
    std::vector<cplx> out;
    for (size_t l = 0; l < lambdas.size(); ++l) out.emplace_back(re[l].value(), im[l].value());
    return out;
}

cplx spherical_transform(const std::function<cplx(const Vec&)>& f, int n, const CVec& lambda,
                         double r_max, TransformGrid grid) {
    return spherical_transform(f, n, std::vector<CVec>{lambda}, r_max, grid)[0];
}

double cartan_jacobian_constant(int n) {
    std::lock_guard<std::mutex> lock(g_cj_mutex);
    if (auto it = g_cj.find(n); it != g_cj.end()) return it->second;
    BumpProfile p;
    p.n = n;
    p.R = 1.0;
    const TestFunction f(p);
    CVec lam(n);
    for (int i = 0; i < n; ++i) lam[i] = cplx(0.0, 0.7 * (n - 1 - 2 * i) / (i + 1.5));
    cplx mean = 0;
    for (auto& l : lam) mean += l;
    for (auto& l : lam) l -= mean / static_cast<double>(n);
    auto fx = [&](const Vec& x) { return n == 2 ? f.eval(x) : cplx(f.eval_derivative(x)); };
    const cplx raw = spherical_transform(fx, n, std::vector<CVec>{lam}, p.R, n == 2 ? TransformGrid{8} : TransformGrid{6}, 1.0)[0];
    const double cj = (h_hat(p, lam) / raw).real();
    g_cj[n] = cj;
    return cj;
}

bool DomainOmega::contains(const Vec& nu) const {
    switch (kind) {
        case Kind::Empty: return false;
        case Kind::Ball: return euclid(nu) <= radius;
        case Kind::Box: return weyl_norm(nu) <= radius;
    }
    return false;
}

namespace {

// int_{Omega} beta for the unit-scale domain
double mass_unit_ball(int n, int extra_nodes) {
    const int r = n - 1, N = num_pos(n);
    const auto gh = gauss_hermite_prob(N + 1 + extra_nodes);
    const auto basis = helmert(n);
    CompensatedSum<double> acc;
    std::vector<size_t> idx(r, 0);
    for (;;) {
        Vec nu(n, 0.0);
        double w = 1;
        for (int k = 0; k < r; ++k) {
            w *= gh[idx[k]].w;
            for (int i = 0; i < n; ++i) nu[i] += gh[idx[k]].x * basis[k][i];
        }
        acc.add(w * plancherel_density(imaginary(nu)));
        int k = 0;
        while (k < r && ++idx[k] == gh.size()) idx[k++] = 0;
        if (k == r) break;
    }
    // gaussian integral = sphere integral * 2^{N + r/2 - 1} Gamma(N + r/2)
    const double sphere = acc.value() / (std::pow(2.0, N + r / 2.0 - 1) * std::tgamma(N + r / 2.0));
    return sphere / (r + 2 * N) / std::sqrt(static_cast<double>(n));
}

double mass_unit_box(int n, int extra_nodes) {
    const int pts = 4 + extra_nodes;
    if (n == 2) {
        // beta(i(v, -v)) = v^2 on |v| <= 1
        double s = 0;
        for (const auto& nd : gauss_panels(-1.0, 1.0, 1 + extra_nodes)) s += nd.w * plancherel_density(imaginary({nd.x, -nd.x}));
        return s;
    }
    if (n != 3) throw PreconditionViolated("box domains are implemented for n = 2, 3");
    CompensatedSum<double> acc;
    for (auto [lo, hi] : {std::pair{-1.0, 0.0}, std::pair{0.0, 1.0}})
        for (const auto& a : gauss_panels(lo, hi, pts / 4)) {
            const double b0 = std::max(-1.0, -1.0 - a.x), b1 = std::min(1.0, 1.0 - a.x);
            for (const auto& b : gauss_panels(b0, b1, pts / 4))
                acc.add(a.w * b.w * plancherel_density(imaginary({a.x, b.x, -a.x - b.x})));
        }
    return acc.value();
}

double mass_unit(const DomainOmega& omega, int n, int extra) {
    switch (omega.kind) {
        case DomainOmega::Kind::Empty: return 0.0;
        case DomainOmega::Kind::Ball: return mass_unit_ball(n, extra);
        case DomainOmega::Kind::Box: return mass_unit_box(n, extra);
    }
    return 0.0;
}

}  // namespace

double plancherel_mass(double t, const DomainOmega& omega, int n) {
    if (n < 2) throw PreconditionViolated("n >= 2 required");
    // beta is a homogeneous polynomial of degree n(n-1), so the integral over
    // t Omega is (t r)^{n^2 - 1} times the unit-domain value; the unit value
    // uses rules exact for its degree, confirmed by adding nodes.
    const double m0 = mass_unit(omega, n, 0), m1 = mass_unit(omega, n, 4);
    if (std::abs(m0 - m1) > 1e-10 * std::max(1.0, std::abs(m1)))
        throw NonConvergent("domain quadrature not stable under refinement");
    return std::pow(t * omega.radius, n * n - 1) * m1;
}

double lambda0(double t, const DomainOmega& omega, int n, int field_disc) {
    if (t < 1.0) throw PreconditionViolated("t >= 1 required");
    const QuadField F(field_disc);
    return vol_GFGA1(n, F) / std::tgamma(n + 1.0) * plancherel_mass(t, omega, n);
}

double lambda0_slope(const std::vector<double>& ts, const DomainOmega& omega, int n, int field_disc) {
    if (ts.size() < 2) throw PreconditionViolated("slope fit needs two t values");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double t : ts) {
        const double x = std::log(t), y = std::log(lambda0(t, omega, n, field_disc));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(ts.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace wl
