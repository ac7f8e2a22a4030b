#include "weyllaw/arch_spherical.hpp"

#include "weyllaw/errors.hpp"
#include "weyllaw/quadrature.hpp"
#include "weyllaw/rng.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <optional>

namespace wl {

namespace {

constexpr double kRatioDouble = 1e-4;   // accept double alternant above this
constexpr double kRatioQuad = 1e-20;    // accept quad alternant above this
constexpr double kSeriesArg = 0.5;      // small-argument expansion radius

int dim(const CVec& lambda, const Vec& x) {
    if (lambda.size() != x.size()) throw LengthMismatch("lambda and X differ in length");
    return static_cast<int>(x.size());
}

template <class V>
auto vandermonde(const V& v) {
    typename V::value_type p = 1;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) p *= (v[i] - v[j]);
    return p;
}

double vandermonde_rho(int n) {
    double p = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) p *= 2.0 * (j - i);
    return p;
}

// G(rho, X) = A_rho(X) / (V(rho) V(X)) = prod 2 sinh(d)/d / V(rho).
double g_rho(const Vec& x) {
    const int n = static_cast<int>(x.size());
    double p = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = x[i] - x[j];
            p *= (std::abs(d) < 1e-8) ? 2.0 * (1.0 + d * d / 6.0) : 2.0 * std::sinh(d) / d;
        }
    return p / vandermonde_rho(n);
}

struct QC {
    __float128 re = 0, im = 0;
};

// G(lambda, X) = A_lambda(X) / (V(lambda) V(X)) from the alternant, if the
// cancellation ratio |A| / sum|terms| leaves enough digits.
std::optional<cplx> g_direct_double(const CVec& lambda, const Vec& x) {
    const int n = static_cast<int>(x.size());
    const cplx vl = vandermonde(lambda);
    const double vx = vandermonde(x);
    if (vl == cplx(0) || vx == 0.0) return std::nullopt;
    CompensatedSum<double> sr, si;
    double scale = 0;
    for (const auto& sp : permutations(n)) {
        cplx e = 0;
        for (int i = 0; i < n; ++i) e += lambda[sp.perm[i]] * x[i];
        const cplx t = std::exp(e);
        scale += std::abs(t);
        sr.add(sp.sign * t.real());
        si.add(sp.sign * t.imag());
    }
    const cplx a(sr.value(), si.value());
    if (!(std::abs(a) >= kRatioDouble * scale)) return std::nullopt;
    return a / (vl * vx);
}

std::optional<cplx> g_direct_quad(const CVec& lambda, const Vec& x) {
    const int n = static_cast<int>(x.size());
    QC vl{1, 0};
    __float128 vx = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const __float128 dr = (__float128)lambda[i].real() - lambda[j].real();
            const __float128 di = (__float128)lambda[i].imag() - lambda[j].imag();
            const QC t{vl.re * dr - vl.im * di, vl.re * di + vl.im * dr};
            vl = t;
            vx *= (__float128)x[i] - x[j];
        }
    if ((vl.re == 0 && vl.im == 0) || vx == 0) return std::nullopt;
    QC a;
    __float128 scale = 0;
    for (const auto& sp : permutations(n)) {
        __float128 er = 0, ei = 0;
        for (int i = 0; i < n; ++i) {
            er += (__float128)lambda[sp.perm[i]].real() * x[i];
            ei += (__float128)lambda[sp.perm[i]].imag() * x[i];
        }
        const __float128 m = expq(er);
        scale += m;
        a.re += sp.sign * m * cosq(ei);
        a.im += sp.sign * m * sinq(ei);
    }
    const __float128 mag = sqrtq(a.re * a.re + a.im * a.im);
    if (!(mag >= (__float128)kRatioQuad * scale)) return std::nullopt;
    // a / (vl * vx)
    const __float128 dre = vl.re * vx, dim_ = vl.im * vx;
    const __float128 den = dre * dre + dim_ * dim_;
    const __float128 rr = (a.re * dre + a.im * dim_) / den;
    const __float128 ri = (a.im * dre - a.re * dim_) / den;
    return cplx(static_cast<double>(rr), static_cast<double>(ri));
}

using lcplx = std::complex<long double>;

lcplx small_det(std::vector<std::vector<lcplx>> m) {
    const int n = static_cast<int>(m.size());
    lcplx d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (std::abs(m[piv][c]) == 0.0L) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            const lcplx f = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

// complete homogeneous symmetric polynomials h_0..h_K
std::vector<lcplx> complete_h(const std::vector<lcplx>& v, int K) {
    std::vector<lcplx> h(K + 1, 0);
    h[0] = 1;
    for (const auto& xj : v)
        for (int k = 1; k <= K; ++k) h[k] += xj * h[k - 1];
    return h;
}

lcplx schur(const std::vector<int>& mu, const std::vector<lcplx>& h) {
    const int n = static_cast<int>(mu.size());
    std::vector<std::vector<lcplx>> m(n, std::vector<lcplx>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int k = mu[i] - i + j;
            m[i][j] = (k < 0) ? lcplx(0) : h[k];
        }
    return small_det(m);
}

void partitions_of(int total, int parts, int maxpart, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int p = std::min(total, maxpart); p >= 0; --p) {
        if (p * parts < total) break;
        cur.push_back(p);
        partitions_of(total - p, parts - 1, p, cur, out);
        cur.pop_back();
    }
}

// G(lambda, X) = sum_mu s_mu(lambda) s_mu(X) / prod_m (mu_m + n - m)!
std::optional<cplx> g_series(const CVec& lambda, const Vec& x) {
    const int n = static_cast<int>(x.size());
    const double arg = weyl_norm(x) * [&] {
        double m = 0;
        for (const auto& l : lambda) m = std::max(m, std::abs(l));
        return m;
    }();
    if (arg > kSeriesArg) return std::nullopt;
    constexpr int K = 48;
    std::vector<lcplx> lv(lambda.begin(), lambda.end()), xv(x.begin(), x.end());
    const auto hl = complete_h(lv, K + n), hx = complete_h(xv, K + n);
    lcplx total = 0;
    int quiet = 0;
    for (int deg = 0; deg <= K; ++deg) {
        std::vector<std::vector<int>> mus;
        std::vector<int> cur;
        partitions_of(deg, n, deg, cur, mus);
        lcplx layer = 0;
        for (const auto& mu : mus) {
            long double fac = 1;
            for (int m = 0; m < n; ++m) fac *= std::tgamma(static_cast<long double>(mu[m] + n - 1 - m + 1));
            layer += schur(mu, hl) * schur(mu, hx) / fac;
        }
        total += layer;
        if (deg > 2 && std::abs(layer) <= 1e-19L * std::abs(total)) {
            if (++quiet >= 2) return cplx(static_cast<double>(total.real()), static_cast<double>(total.imag()));
        } else {
            quiet = 0;
        }
    }
    return std::nullopt;
}

std::optional<cplx> g_eval(const CVec& lambda, const Vec& x) {
    if (auto v = g_direct_double(lambda, x)) return v;
    if (x.size() <= 6)
        if (auto v = g_direct_quad(lambda, x)) return v;
    return g_series(lambda, x);
}

bool is_zero(const Vec& x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
}

std::optional<cplx> phi_try(const CVec& lambda, const Vec& x) {
    if (is_zero(x)) return cplx(1.0);
    auto g = g_eval(lambda, x);
    if (!g) return std::nullopt;
    return *g / g_rho(x);
}

struct Directions {
    std::vector<CVec> dl;
    std::vector<Vec> dx;
};

Directions perturbation_directions(int n, bool imaginary) {
    auto gen = make_stream(0x5eedULL, "spherical-perturbation", static_cast<std::uint64_t>(n));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Directions d;
    for (int k = 0; k < 4; ++k) {
        CVec l(n);
        Vec x(n);
        for (int i = 0; i < n; ++i) {
            const double re = u(gen), im = u(gen);
            l[i] = imaginary ? cplx(0, im) : cplx(re, im);
            x[i] = u(gen);
        }
        cplx ml = 0;
        double mx = 0;
        for (int i = 0; i < n; ++i) {
            ml += l[i];
            mx += x[i];
        }
        for (int i = 0; i < n; ++i) {
            l[i] -= ml / static_cast<double>(n);
            x[i] -= mx / n;
        }
        d.dl.push_back(l);
        d.dx.push_back(x);
    }
    return d;
}

cplx perturbed(const CVec& lambda, const Vec& x) {
    const int n = static_cast<int>(x.size());
    const bool imaginary = std::all_of(lambda.begin(), lambda.end(),
                                       [](const cplx& l) { return l.real() == 0.0; });
    const auto dirs = perturbation_directions(n, imaginary);
    double sl = 1, sx = 1;
    for (const auto& l : lambda) sl = std::max(sl, std::abs(l));
    sx = std::max(sx, weyl_norm(x));
    auto average = [&](double eps) {
        cplx acc = 0;
        for (size_t k = 0; k < dirs.dl.size(); ++k)
            for (int s : {1, -1}) {
                CVec l = lambda;
                Vec y = x;
                for (int i = 0; i < n; ++i) {
                    l[i] += static_cast<double>(s) * eps * sl * dirs.dl[k][i];
                    y[i] += s * eps * sx * dirs.dx[k][i];
                }
                auto v = phi_try(l, y);
                if (!v) throw NonConvergent("perturbed point still too degenerate");
                acc += *v;
            }
        return acc / static_cast<double>(2 * dirs.dl.size());
    };
    const double eps = 1e-4;
    const cplx f1 = average(eps), f2 = average(eps / 2);
    const cplx rich = (4.0 * f2 - f1) / 3.0;
    if (std::abs(rich - f2) > 1e-6 * std::max(1.0, std::abs(rich)))
        throw NonConvergent("Richardson extrapolation disagrees beyond 1e-6");
    return rich;
}

}  // namespace

cplx pi_poly(const CVec& lambda) {
    const int n = static_cast<int>(lambda.size());
    cplx p = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) p *= 2.0 * n * (lambda[i] - lambda[j]);
    return p;
}

double pi_rho(int n) {
    double p = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) p *= 2.0 * n * 2.0 * (j - i);
    return p;
}

cplx c_function(const CVec& lambda) {
    const int n = static_cast<int>(lambda.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(2.0 * n * (lambda[i] - lambda[j])) < 1e-12)
                throw SingularParameter("<alpha, lambda> vanishes");
    return pi_rho(n) / pi_poly(lambda);
}

double plancherel_density(const CVec& lambda) {
    const int n = static_cast<int>(lambda.size());
    double p = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double num = std::norm(2.0 * n * (lambda[i] - lambda[j]));
            const double den = 2.0 * n * 2.0 * (j - i);
            p *= num / (den * den);
        }
    return p;
}

double beta_hat(double t, const CVec& lambda) {
    const int n = static_cast<int>(lambda.size());
    double p = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = t + std::abs(2.0 * n * (lambda[i] - lambda[j]));
            p *= v * v;
        }
    return p;
}

cplx alternant(const CVec& lambda, const Vec& x) {
    const int n = dim(lambda, x);
    cplx a = 0;
    for (const auto& sp : permutations(n)) {
        cplx e = 0;
        for (int i = 0; i < n; ++i) e += lambda[sp.perm[i]] * x[i];
        a += static_cast<double>(sp.sign) * std::exp(e);
    }
    return a;
}

cplx spherical_eval(const CVec& lambda, const Vec& x) {
    dim(lambda, x);
    if (auto v = phi_try(lambda, x)) return *v;
    return perturbed(lambda, x);
}

cplx spherical_eval_perturbed(const CVec& lambda, const Vec& x) {
    dim(lambda, x);
    return perturbed(lambda, x);
}

cplx c_inv_phi(const CVec& lambda, const Vec& x) {
    const int n = dim(lambda, x);
    return vandermonde(lambda) / vandermonde_rho(n) * spherical_eval(lambda, x);
}

Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& gen) {
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = cplx(nd(gen), nd(gen));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const auto& r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        const cplx d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

namespace {

// g g^* = u a^2 u^*; reversing rows and columns turns this into an LL^*
// factorization whose diagonal gives a in reverse order.
Eigen::MatrixXcd reversed_cholesky(const Eigen::MatrixXcd& g) {
    const Eigen::MatrixXcd m = (g * g.adjoint()).reverse();
    Eigen::LLT<Eigen::MatrixXcd> llt(m);
    if (llt.info() != Eigen::Success) throw NearSingular("Gram matrix not positive definite");
    return llt.matrixL();
}

void check_conditioning(const Eigen::MatrixXcd& g) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) == 0.0 || s(0) / s(s.size() - 1) > 1e12)
        throw NearSingular("condition number above 1e12");
}

Vec h0_unchecked(const Eigen::MatrixXcd& g) {
    const int n = static_cast<int>(g.rows());
    const Eigen::MatrixXcd l = reversed_cholesky(g);
    Vec h(n);
    for (int i = 0; i < n; ++i) h[i] = std::log(l(n - 1 - i, n - 1 - i).real());
    return h;
}

}  // namespace

Vec iwasawa_H0(const Eigen::MatrixXcd& g) {
    check_conditioning(g);
    return h0_unchecked(g);
}

IwasawaUAK iwasawa_uak(const Eigen::MatrixXcd& g) {
    check_conditioning(g);
    const int n = static_cast<int>(g.rows());
    const Eigen::MatrixXcd l = reversed_cholesky(g);
    Eigen::MatrixXcd lunit = l;
    Vec a(n);
    for (int j = 0; j < n; ++j) {
        const double d = l(j, j).real();
        lunit.col(j) /= d;
        a[n - 1 - j] = d;
    }
    IwasawaUAK out;
    out.u = lunit.reverse();
    out.a = a;
    Eigen::MatrixXcd ainv_uinv = out.u.triangularView<Eigen::UnitUpper>().solve(g);
    for (int i = 0; i < n; ++i) ainv_uinv.row(i) /= a[i];
    out.k = ainv_uinv;
    return out;
}

McEstimate spherical_oracle_mc(const CVec& lambda, const Vec& x, std::int64_t samples,
                               std::uint64_t seed, Exec exec) {
    const int n = dim(lambda, x);
    if (samples < 1000) throw PreconditionViolated("at least 10^3 samples required");
    const Vec rho = rho_sum(n);
    CVec shift(n);
    for (int i = 0; i < n; ++i) shift[i] = lambda[i] + rho[i];
    Eigen::VectorXcd ex(n);
    for (int i = 0; i < n; ++i) ex(i) = std::exp(x[i]);

    constexpr std::int64_t kChunk = 2048;
    const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
    struct Partial {
        double re = 0, im = 0, sq = 0;
    };
    std::vector<Partial> parts(static_cast<size_t>(chunks));

    auto run_chunk = [&](std::int64_t c) {
        auto gen = make_stream(seed, "haar-mc", static_cast<std::uint64_t>(c));
        const std::int64_t begin = c * kChunk, end = std::min(samples, begin + kChunk);
        CompensatedSum<double> sr, si, sq;
        for (std::int64_t s = begin; s < end; ++s) {
            const Eigen::MatrixXcd k = haar_unitary(n, gen);
            const Eigen::MatrixXcd g = k * ex.asDiagonal();
            const Vec h = h0_unchecked(g);
            cplx e = 0;
            for (int i = 0; i < n; ++i) e += shift[i] * h[i];
            const cplx v = std::exp(e);
            sr.add(v.real());
            si.add(v.imag());
            sq.add(std::norm(v));
        }
        parts[static_cast<size_t>(c)] = {sr.value(), si.value(), sq.value()};
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
    }

    CompensatedSum<double> tr, ti, tq;
    for (const auto& p : parts) {
        tr.add(p.re);
        ti.add(p.im);
        tq.add(p.sq);
    }
    const double N = static_cast<double>(samples);
    const cplx mean(tr.value() / N, ti.value() / N);
    const double var = std::max(0.0, (tq.value() / N - std::norm(mean)) * N / (N - 1));
    return {mean, std::sqrt(var / N)};
}

std::vector<std::pair<int, int>> levi_blocks(int n, const std::vector<int>& simple_subset) {
    std::vector<bool> in(static_cast<size_t>(std::max(n - 1, 0)), false);
    for (int k : simple_subset) {
        if (k < 0 || k >= n - 1) throw PreconditionViolated("simple root index out of range");
        in[static_cast<size_t>(k)] = true;
    }
    std::vector<std::pair<int, int>> blocks;
    int b = 0;
    for (int k = 0; k < n - 1; ++k)
        if (!in[static_cast<size_t>(k)]) {
            blocks.emplace_back(b, k + 1);
            b = k + 1;
        }
    blocks.emplace_back(b, n);
    return blocks;
}

cplx descent_eval(const CVec& lambda, const Vec& x, const std::vector<int>& simple_subset) {
    const int n = dim(lambda, x);
    const auto blocks = levi_blocks(n, simple_subset);
    std::vector<int> block_of(n);
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int i = blocks[b].first; i < blocks[b].second; ++i) block_of[i] = static_cast<int>(b);

    // prod over Phi_1^+ of 1 / sinh a(X); the prefactor is 2^{-|Phi_1^+|}
    double pref = 1;
    int phi1 = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (block_of[i] != block_of[j]) {
                const double s = std::sinh(x[i] - x[j]);
                if (std::abs(s) <= 1e-10) throw PreconditionViolated("a root of Phi_1^+ vanishes on X");
                pref /= 2.0 * s;
                ++phi1;
            }
    double wtilde = 1;
    for (const auto& [b, e] : blocks) wtilde *= std::tgamma(e - b + 1.0);
    pref /= wtilde;

    const Vec rho = rho_sum(n);
    // block-centred X and block means of X
    Vec xt(n), xm(blocks.size());
    for (size_t b = 0; b < blocks.size(); ++b) {
        double m = 0;
        for (int i = blocks[b].first; i < blocks[b].second; ++i) m += x[i];
        m /= blocks[b].second - blocks[b].first;
        xm[b] = m;
        for (int i = blocks[b].first; i < blocks[b].second; ++i) xt[i] = x[i] - m;
    }

    CompensatedSum<double> sr, si;
    for (const auto& sp : permutations(n)) {
        CVec mu(n);
        for (int i = 0; i < n; ++i) mu[i] = lambda[sp.perm[i]];
        cplx term = static_cast<double>(sp.sign);
        cplx e1 = 0;
        for (size_t b = 0; b < blocks.size(); ++b) {
            const int lo = blocks[b].first, hi = blocks[b].second, m = hi - lo;
            cplx mean = 0;
            for (int i = lo; i < hi; ++i) mean += mu[i];
            mean /= static_cast<double>(m);
            e1 += static_cast<double>(m) * mean * xm[b];
            if (m == 1) continue;
            CVec lb(m);
            Vec xb(xt.begin() + lo, xt.begin() + hi);
            cplx ctilde_inv = 1;
            for (int i = lo; i < hi; ++i) {
                lb[i - lo] = mu[i] - mean;
                for (int j = i + 1; j < hi; ++j) ctilde_inv *= (mu[i] - mu[j]) / (rho[i] - rho[j]);
            }
            term *= ctilde_inv * spherical_eval(lb, xb);
        }
        term *= std::exp(e1);
        sr.add(term.real());
        si.add(term.imag());
    }
    (void)phi1;
    return pref * cplx(sr.value(), si.value());
}

}  // namespace wl
