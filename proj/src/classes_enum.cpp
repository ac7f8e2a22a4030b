#include "weyllaw/classes_enum.hpp"

#include "weyllaw/errors.hpp"
#include "weyllaw/padic_hecke.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace wl {

namespace {

constexpr double kMaxClasses = 1e6;

using cld = std::complex<long double>;

FElem f_add(const FElem& x, const FElem& y) { return {x.a + y.a, x.b + y.b}; }
FElem f_sub(const FElem& x, const FElem& y) { return {x.a - y.a, x.b - y.b}; }
FElem f_neg(const FElem& x) { return {-x.a, -x.b}; }

FElem f_mul(const QuadField& F, const FElem& x, const FElem& y) {
    const FRat bd = x.b * y.b;
    return {x.a * y.a + bd * F.c0, x.a * y.b + x.b * y.a + bd * F.t};
}

FRat f_norm(const QuadField& F, const FElem& x) { return x.a * x.a + x.a * x.b * F.t - x.b * x.b * F.c0; }

FElem f_inv(const QuadField& F, const FElem& x) {
    const FRat n = f_norm(F, x);
    if (n == 0) throw SingularParameter("division by zero in F");
    return {(x.a + x.b * F.t) / n, -x.b / n};
}

std::complex<double> f_embed(const QuadField& F, const FElem& x) {
    return x.a.convert_to<double>() + x.b.convert_to<double>() * F.omega();
}

void trim(FPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const FPoly& p) { return static_cast<int>(p.size()) - 1; }

FPoly make_monic(const QuadField& F, FPoly p) {
    trim(p);
    if (p.empty()) return p;
    const FElem inv = f_inv(F, p.back());
    for (auto& c : p) c = f_mul(F, c, inv);
    return p;
}

FPoly fpoly_sub(FPoly x, const FPoly& y) {
    if (x.size() < y.size()) x.resize(y.size());
    for (size_t i = 0; i < y.size(); ++i) x[i] = f_sub(x[i], y[i]);
    trim(x);
    return x;
}

bool is_integral(const FElem& x) {
    return boost::multiprecision::denominator(x.a) == 1 && boost::multiprecision::denominator(x.b) == 1;
}

// ---- residue field at the first prime above p --------------------------

struct ResidueField {
    i64 p = 0;
    bool inert = false;
    i64 t = 0, c0 = 0;
    i64 r = 0;  // image of w when p splits
};

struct RElem {
    i64 x = 0, y = 0;  // x + y w (y = 0 when split)
    bool is_zero() const { return x == 0 && y == 0; }
    friend bool operator==(const RElem&, const RElem&) = default;
};

i64 md(i64 a, i64 p) {
    a %= p;
    return a < 0 ? a + p : a;
}

i64 inv_mod(i64 a, i64 p) {
    i64 g = p, x = 0, x1 = 1, aa = md(a, p);
    while (aa) {
        const i64 q = g / aa;
        std::tie(g, aa) = std::make_pair(aa, g - q * aa);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw SingularParameter("element not invertible mod p");
    return md(x, p);
}

ResidueField residue_field(const QuadField& F, i64 p) {
    if (!is_prime(p)) throw BadPlace("p must be prime");
    ResidueField k;
    k.p = p;
    k.t = md(F.t, p);
    k.c0 = md(F.c0, p);
    const int s = kronecker(F.D, p);
    if (s == 0) throw BadPlace("p ramifies in F");
    k.inert = s == -1;
    if (!k.inert) {
        const auto primes = primes_above(F, p);
        // first prime: p Z + (b + w) Z, so w = -b there
        k.r = md(-primes.front().ideal.b, p);
    }
    return k;
}

RElem r_add(const ResidueField& k, const RElem& u, const RElem& v) { return {md(u.x + v.x, k.p), md(u.y + v.y, k.p)}; }
RElem r_sub(const ResidueField& k, const RElem& u, const RElem& v) { return {md(u.x - v.x, k.p), md(u.y - v.y, k.p)}; }

RElem r_mul(const ResidueField& k, const RElem& u, const RElem& v) {
    const i64 p = k.p;
    if (!k.inert) return {md(u.x * v.x, p), 0};
    const i64 yy = md(u.y * v.y, p);
    return {md(u.x * v.x + yy * k.c0, p), md(u.x * v.y + u.y * v.x + yy * k.t, p)};
}

RElem r_inv(const ResidueField& k, const RElem& u) {
    const i64 p = k.p;
    if (!k.inert) return {inv_mod(u.x, p), 0};
    const i64 n = md(u.x * u.x + md(u.x * u.y, p) * k.t - md(u.y * u.y, p) * k.c0, p);
    const i64 ni = inv_mod(n, p);
    return {md((u.x + u.y * k.t) % p * ni, p), md(-u.y * ni, p)};
}

i64 rat_mod(const FRat& q, i64 p) {
    const auto den = boost::multiprecision::denominator(q);
    if (den % p == 0) throw BadPlace("coefficient not integral at p");
    const i64 nm = static_cast<i64>(boost::multiprecision::numerator(q) % p);
    const i64 dm = static_cast<i64>(den % p);
    return md(md(nm, p) * inv_mod(dm, p), p);
}

RElem reduce(const ResidueField& k, const FElem& e) {
    const i64 a = rat_mod(e.a, k.p), b = rat_mod(e.b, k.p);
    if (k.inert) return {a, b};
    return {md(a + md(b * k.r, k.p), k.p), 0};
}

using RPoly = std::vector<RElem>;

void rtrim(RPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

RPoly rp_mod(const ResidueField& k, RPoly a, const RPoly& b) {
    rtrim(a);
    const RElem li = r_inv(k, b.back());
    while (a.size() >= b.size()) {
        const RElem c = r_mul(k, a.back(), li);
        const size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] = r_sub(k, a[off + i], r_mul(k, c, b[i]));
        rtrim(a);
    }
    return a;
}

RPoly rp_mul(const ResidueField& k, const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = r_add(k, c[i + j], r_mul(k, a[i], b[j]));
    rtrim(c);
    return c;
}

RPoly rp_div(const ResidueField& k, RPoly a, const RPoly& b) {
    rtrim(a);
    const RElem li = r_inv(k, b.back());
    RPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    while (a.size() >= b.size()) {
        const RElem c = r_mul(k, a.back(), li);
        const size_t off = a.size() - b.size();
        q[off] = c;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] = r_sub(k, a[off + i], r_mul(k, c, b[i]));
        rtrim(a);
    }
    return q;
}

RPoly rp_gcd(const ResidueField& k, RPoly a, RPoly b) {
    rtrim(a);
    rtrim(b);
    while (!b.empty()) {
        RPoly r = rp_mod(k, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const RElem li = r_inv(k, a.back());
        for (auto& c : a) c = r_mul(k, c, li);
    }
    return a;
}

RPoly rp_powmod(const ResidueField& k, RPoly base, i64 e, const RPoly& m) {
    RPoly r{{1, 0}};
    base = rp_mod(k, base, m);
    while (e > 0) {
        if (e & 1) r = rp_mod(k, rp_mul(k, r, base), m);
        base = rp_mod(k, rp_mul(k, base, base), m);
        e >>= 1;
    }
    return r;
}

RPoly rp_derivative(const ResidueField& k, const RPoly& f) {
    RPoly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(r_mul(k, {md(static_cast<i64>(i), k.p), 0}, f[i]));
    rtrim(d);
    return d;
}

// degrees of the irreducible factors of a squarefree monic f over the residue field
std::vector<int> ddf_degrees(const ResidueField& k, RPoly f) {
    const i64 q = k.inert ? k.p * k.p : k.p;
    std::vector<int> out;
    const RPoly x{{0, 0}, {1, 0}};
    RPoly h = x;
    for (int d = 1; static_cast<int>(f.size()) - 1 >= 2 * d; ++d) {
        h = rp_powmod(k, h, q, f);
        RPoly hx = h;
        if (hx.size() < 2) hx.resize(2);
        hx[1] = r_sub(k, hx[1], {1, 0});
        rtrim(hx);
        const RPoly g = rp_gcd(k, f, hx);
        const int gd = static_cast<int>(g.size()) - 1;
        for (int i = 0; i < gd / d; ++i) out.push_back(d);
        if (gd > 0) {
            f = rp_div(k, f, g);
            h = rp_mod(k, h, f);
        }
    }
    if (f.size() > 1) out.push_back(static_cast<int>(f.size()) - 1);
    return out;
}

RPoly reduce_poly(const ResidueField& k, const FPoly& f) {
    RPoly r;
    for (const auto& c : f) r.push_back(reduce(k, c));
    rtrim(r);
    return r;
}

// local splitting degrees of a squarefree global polynomial; BadPlace if it
// is not squarefree mod p
std::vector<int> local_degrees(const ResidueField& k, const FPoly& s) {
    const RPoly r = reduce_poly(k, s);
    if (static_cast<int>(r.size()) != static_cast<int>(s.size())) throw BadPlace("leading coefficient vanishes mod p");
    const RPoly g = rp_gcd(k, r, rp_derivative(k, r));
    if (g.size() > 1) throw BadPlace("p divides a discriminant");
    return ddf_degrees(k, r);
}

// ---- numerics ------------------------------------------------------------

std::vector<std::complex<double>> poly_roots(const QuadField& F, const FPoly& f) {
    const int d = deg(f);
    if (d <= 0) return {};
    std::vector<cld> c(d + 1);
    for (int i = 0; i <= d; ++i) {
        const auto z = f_embed(F, f[i]);
        c[i] = cld(z.real(), z.imag());
    }
    std::vector<cld> z(d);
    if (d == 1) {
        z[0] = -c[0] / c[1];
    } else {
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
        for (int i = 0; i < d; ++i) {
            const cld v = -c[i] / c[d];
            comp(i, d - 1) = std::complex<double>(static_cast<double>(v.real()), static_cast<double>(v.imag()));
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        for (int i = 0; i < d; ++i) z[i] = cld(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    }
    // Newton polish on the squarefree polynomial, simple roots
    for (auto& r : z)
        for (int it = 0; it < 8; ++it) {
            cld p = c[d], dp = 0;
            for (int i = d - 1; i >= 0; --i) {
                dp = dp * r + p;
                p = p * r + c[i];
            }
            if (std::abs(dp) == 0) break;
            const cld step = p / dp;
            r -= step;
            if (std::abs(step) <= 1e-18L * (1 + std::abs(r))) break;
        }
    std::vector<std::complex<double>> out;
    for (const auto& r : z) out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
    std::sort(out.begin(), out.end(), [](auto x, auto y) {
        return std::make_pair(x.real(), x.imag()) < std::make_pair(y.real(), y.imag());
    });
    return out;
}

// round a complex number to the nearest element of O_F
std::optional<OFElem> round_to_OF(const QuadField& F, std::complex<double> z) {
    const auto w = F.omega();
    const double b = std::round(z.imag() / w.imag());
    const double a = std::round(z.real() - b * w.real());
    const auto e = a + b * w;
    if (std::abs(e - z) > 1e-6 * (1 + std::abs(z))) return std::nullopt;
    return OFElem{static_cast<i64>(a), static_cast<i64>(b)};
}

}  // namespace

FPoly fpoly_mul(const QuadField& F, const FPoly& x, const FPoly& y) {
    if (x.empty() || y.empty()) return {};
    FPoly c(x.size() + y.size() - 1);
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) c[i + j] = f_add(c[i + j], f_mul(F, x[i], y[j]));
    trim(c);
    return c;
}

std::pair<FPoly, FPoly> fpoly_divmod(const QuadField& F, const FPoly& x, const FPoly& y) {
    FPoly r = x, yy = y;
    trim(r);
    trim(yy);
    if (yy.empty()) throw SingularParameter("polynomial division by zero");
    const FElem li = f_inv(F, yy.back());
    FPoly q(r.size() >= yy.size() ? r.size() - yy.size() + 1 : 0);
    while (r.size() >= yy.size()) {
        const FElem c = f_mul(F, r.back(), li);
        const size_t off = r.size() - yy.size();
        q[off] = c;
        for (size_t i = 0; i < yy.size(); ++i) r[off + i] = f_sub(r[off + i], f_mul(F, c, yy[i]));
        trim(r);
    }
    trim(q);
    return {q, r};
}

FPoly fpoly_gcd(const QuadField& F, FPoly x, FPoly y) {
    trim(x);
    trim(y);
    while (!y.empty()) {
        FPoly r = fpoly_divmod(F, x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(F, x);
}

FPoly fpoly_derivative(const FPoly& x) {
    FPoly d;
    for (size_t i = 1; i < x.size(); ++i) d.push_back({x[i].a * static_cast<long>(i), x[i].b * static_cast<long>(i)});
    trim(d);
    return d;
}

std::vector<std::pair<FPoly, int>> squarefree_decomposition(const QuadField& F, const FPoly& chi) {
    const FPoly f = make_monic(F, chi);
    std::vector<std::pair<FPoly, int>> out;
    if (deg(f) <= 0) return out;
    const FPoly fp = fpoly_derivative(f);
    const FPoly a0 = fpoly_gcd(F, f, fp);
    FPoly b = fpoly_divmod(F, f, a0).first;
    FPoly c = fpoly_divmod(F, fp, a0).first;
    FPoly d = fpoly_sub(c, fpoly_derivative(b));
    for (int i = 1; deg(b) > 0; ++i) {
        const FPoly a = fpoly_gcd(F, b, d);
        b = fpoly_divmod(F, b, a).first;
        c = fpoly_divmod(F, d, a).first;
        d = fpoly_sub(c, fpoly_derivative(b));
        if (deg(a) > 0) out.emplace_back(a, i);
    }
    return out;
}

CharPolyClass::CharPolyClass(const QuadField& F, std::vector<OFElem> coeffs) : F_(F), a_(std::move(coeffs)) {
    if (a_.empty()) throw PreconditionViolated("characteristic polynomial must have degree at least 1");
    sqf_ = squarefree_decomposition(F_, poly());
    int g = 0;
    for (const auto& [s, m] : sqf_) {
        const auto rs = poly_roots(F_, s);
        for (const auto& r : rs) {
            for (int k = 0; k < m; ++k) {
                roots_.push_back(r);
                group_.push_back(g);
            }
            ++g;
        }
    }
    // roots known to be distinct must also be numerically separated
    double scale = 1;
    for (const auto& r : roots_) scale = std::max(scale, std::abs(r));
    for (size_t i = 0; i < roots_.size(); ++i)
        for (size_t j = i + 1; j < roots_.size(); ++j)
            if (group_[i] != group_[j] && std::abs(roots_[i] - roots_[j]) < 1e-12 * scale)
                throw RootPrecisionLoss("distinct roots coincide numerically");
}

FPoly CharPolyClass::poly() const {
    FPoly p;
    for (const auto& c : a_) p.emplace_back(c);
    p.push_back({1, 0});
    return p;
}

std::vector<OFElem> elements_of_norm_le(const QuadField& F, double bound) {
    std::vector<std::pair<i64, OFElem>> v;
    if (bound >= 0) {
        const double absD = static_cast<double>(-F.D);
        const i64 bmax = static_cast<i64>(std::floor(2 * std::sqrt(bound / absD))) + 1;
        const double sb = std::sqrt(bound);
        for (i64 b = -bmax; b <= bmax; ++b) {
            const double centre = -0.5 * static_cast<double>(b * F.t);
            for (i64 a = static_cast<i64>(std::floor(centre - sb)) - 1; a <= static_cast<i64>(std::ceil(centre + sb)) + 1; ++a) {
                const OFElem x{a, b};
                const i64 nrm = of_norm(F, x);
                if (static_cast<double>(nrm) <= bound) v.emplace_back(nrm, x);
            }
        }
    }
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        return std::make_tuple(x.first, x.second.a, x.second.b) < std::make_tuple(y.first, y.second.a, y.second.b);
    });
    std::vector<OFElem> out;
    for (const auto& [n, x] : v) out.push_back(x);
    return out;
}

ClassEnumeration enumerate_classes(int n, const QuadField& F, double pi_kappa, double c_r, bool require_invertible,
                                   Exec exec) {
    if (n < 1) throw PreconditionViolated("degree must be positive");
    const double bound = c_r * pi_kappa;
    if (bound > 1e4) throw ScaleExceeded("coefficient bound above 1e4");
    const auto cand = elements_of_norm_le(F, bound);
    const double total = std::pow(static_cast<double>(cand.size()), n);
    if (total > kMaxClasses) throw ScaleExceeded("more than 1e6 candidate polynomials");
    const auto N = static_cast<std::int64_t>(total);
    const auto K = static_cast<std::int64_t>(cand.size());
    std::vector<std::optional<CharPolyClass>> slot(static_cast<size_t>(N));
    std::vector<char> singular(static_cast<size_t>(N), 0);
    auto build = [&](std::int64_t idx) {
        std::vector<OFElem> a(n);
        std::int64_t r = idx;
        for (int i = 0; i < n; ++i) {
            a[i] = cand[static_cast<size_t>(r % K)];
            r /= K;
        }
        if (require_invertible && a[0] == OFElem{0, 0}) {
            singular[idx] = 1;
            return;
        }
        slot[idx].emplace(F, std::move(a));
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 256)
        for (std::int64_t i = 0; i < N; ++i) build(i);
    } else {
        for (std::int64_t i = 0; i < N; ++i) build(i);
    }
    ClassEnumeration out;
    out.candidates_per_coeff = cand.size();
    for (std::int64_t i = 0; i < N; ++i) {
        if (singular[i]) ++out.excluded_singular;
        if (slot[i]) out.classes.push_back(std::move(*slot[i]));
    }
    return out;
}

namespace {

void require_invertible(const CharPolyClass& chi) {
    if (chi.coeffs().front() == OFElem{0, 0}) throw PreconditionViolated("class must be invertible (a_0 != 0)");
}

double abs_c(std::complex<double> z) { return std::norm(z); }

}  // namespace

double weyl_discriminant(const CharPolyClass& chi) {
    require_invertible(chi);
    const auto& z = chi.roots();
    const auto& g = chi.root_group();
    double prod = 1;
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = 0; j < z.size(); ++j)
            if (g[i] != g[j]) prod *= abs_c(1.0 - z[i] / z[j]);
    return prod;
}

double weyl_discriminant_n2(const CharPolyClass& chi) {
    if (chi.degree() != 2) throw PreconditionViolated("second route is for n = 2");
    require_invertible(chi);
    const QuadField& F = chi.field();
    const OFElem a0 = chi.coeffs()[0], a1 = chi.coeffs()[1];
    const OFElem disc = of_sub(of_mul(F, a1, a1), of_mul(F, {4, 0}, a0));
    if (disc == OFElem{0, 0}) return 1;
    return static_cast<double>(of_norm(F, disc)) / static_cast<double>(of_norm(F, a0));
}

double delta_minus(const CharPolyClass& chi) {
    require_invertible(chi);
    const auto& z = chi.roots();
    const auto& g = chi.root_group();
    double prod = 1;
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = 0; j < z.size(); ++j)
            if (g[i] != g[j]) prod *= std::max(1.0, 1.0 / abs_c(1.0 - z[i] / z[j]));
    return prod;
}

bool is_almost_unipotent(const CharPolyClass& chi) {
    const auto& z = chi.roots();
    double lo = std::abs(z.front()), hi = lo;
    for (const auto& r : z) {
        lo = std::min(lo, std::abs(r));
        hi = std::max(hi, std::abs(r));
    }
    return hi - lo <= 1e-9 * std::max(1.0, hi);
}

SpacingReport spacing_lower_bound_check(const CharPolyClass& chi) {
    require_invertible(chi);
    if (is_almost_unipotent(chi)) throw PreconditionViolated("class is almost unipotent");
    const auto& z = chi.roots();
    const double n = static_cast<double>(z.size());
    double log_det = 0, sum = 0, smax = 0;
    for (const auto& r : z) {
        log_det += std::log(abs_c(r));
        sum += abs_c(r);
        smax = std::max(smax, abs_c(r));
    }
    SpacingReport rep;
    rep.lhs = std::exp(-log_det / (2 * n)) * std::sqrt(sum / n);
    rep.rhs = 1 + std::pow(smax, -2 * n - 4) / (8 * n * n);
    if (!(rep.lhs >= rep.rhs)) throw AssertionFailed("eigenvalue spacing lower bound violated");
    return rep;
}

std::vector<double> newton_root_valuations(const CharPolyClass& chi, i64 p) {
    require_invertible(chi);
    const QuadField& F = chi.field();
    const auto primes = primes_above(F, p);
    const IdealRep P = primes.front().ideal;
    auto val = [&](const OFElem& x) {
        const i64 nrm = of_norm(F, x);
        int k = 0;
        IdealRep pk = P;
        // v_P(x) <= v_p(N x), which bounds the loop
        while (k < valuation(nrm, static_cast<int>(p)) && ideal_contains(pk, x)) {
            ++k;
            pk = ideal_mul(F, pk, P);
        }
        return k;
    };
    const int n = chi.degree();
    std::vector<int> v(n + 1);
    for (int i = 0; i < n; ++i) v[i] = val(chi.coeffs()[i]);
    v[n] = 0;
    // lower convex hull from (0, v_0) to (n, 0)
    std::vector<double> out;
    int i = 0;
    while (i < n) {
        int best = i + 1;
        double slope = static_cast<double>(v[i + 1] - v[i]);
        for (int j = i + 2; j <= n; ++j) {
            const double s = static_cast<double>(v[j] - v[i]) / (j - i);
            if (s <= slope) {
                slope = s;
                best = j;
            }
        }
        for (int k = i; k < best; ++k) out.push_back(-slope);
        i = best;
    }
    return out;
}

int BasedRootDatumClass::dimension() const {
    int d = 0;
    for (const auto& f : factors) d += f.degree * f.multiplicity;
    return d;
}

std::vector<std::pair<FPoly, int>> factor_over_F(const CharPolyClass& chi) {
    if (chi.degree() > 4) throw ScaleExceeded("global factorization supports n <= 4");
    const QuadField& F = chi.field();
    std::vector<std::pair<FPoly, int>> out;
    for (const auto& [s0, m] : chi.squarefree_parts()) {
        FPoly s = s0;
        std::vector<std::complex<double>> roots = poly_roots(F, s);
        while (deg(s) > 0) {
            const int d = deg(s);
            bool found = false;
            // the smallest factor containing roots[0] is irreducible
            for (int k = 1; k < d && !found; ++k) {
                std::vector<int> pick(static_cast<size_t>(d), 0);
                std::fill(pick.begin() + 1, pick.begin() + k, 1);
                pick[0] = 1;
                do {
                    std::vector<std::complex<double>> g{1.0};
                    for (int i = 0; i < d; ++i) {
                        if (!pick[i]) continue;
                        std::vector<std::complex<double>> h(g.size() + 1, 0.0);
                        for (size_t j = 0; j < g.size(); ++j) {
                            h[j + 1] += g[j];
                            h[j] -= roots[i] * g[j];
                        }
                        g = h;
                    }
                    FPoly cand;
                    bool ok = true;
                    for (const auto& c : g) {
                        const auto r = round_to_OF(F, c);
                        if (!r) {
                            ok = false;
                            break;
                        }
                        cand.emplace_back(*r);
                    }
                    if (ok) {
                        auto [q, rem] = fpoly_divmod(F, s, cand);
                        if (rem.empty()) {
                            out.emplace_back(cand, m);
                            s = q;
                            std::vector<std::complex<double>> rest;
                            for (int i = 0; i < d; ++i)
                                if (!pick[i]) rest.push_back(roots[i]);
                            roots = rest;
                            found = true;
                            break;
                        }
                    }
                } while (std::prev_permutation(pick.begin() + 1, pick.end()));
            }
            if (!found) {
                out.emplace_back(s, m);
                break;
            }
        }
    }
    for (const auto& [f, m] : out)
        for (const auto& c : f)
            if (!is_integral(c)) throw AssertionFailed("monic factor with non-integral coefficient");
    return out;
}

namespace {

BasedRootDatumClass sorted(BasedRootDatumClass b) {
    std::sort(b.factors.begin(), b.factors.end());
    return b;
}

}  // namespace

BasedRootDatumClass localize(const CharPolyClass& chi, i64 p) {
    const ResidueField k = residue_field(chi.field(), p);
    BasedRootDatumClass b;
    for (const auto& [f, m] : factor_over_F(chi))
        for (int d : local_degrees(k, f)) b.factors.push_back({d, m});
    return sorted(b);
}

BasedRootDatumClass omega_brd(const CharPolyClass& chi, std::optional<i64> p) {
    BasedRootDatumClass b;
    if (!p) {
        for (const auto& [f, m] : factor_over_F(chi)) b.factors.push_back({deg(f), m});
        return sorted(b);
    }
    const ResidueField k = residue_field(chi.field(), *p);
    for (const auto& [s, m] : chi.squarefree_parts())
        for (int d : local_degrees(k, s)) b.factors.push_back({d, m});
    return sorted(b);
}

nlohmann::json class_record(const CharPolyClass& chi, std::optional<i64> p) {
    nlohmann::json j;
    j["coeffs"] = nlohmann::json::array();
    i64 nmax = 0;
    for (const auto& c : chi.coeffs()) {
        j["coeffs"].push_back({c.a, c.b});
        nmax = std::max(nmax, of_norm(chi.field(), c));
    }
    int bucket = 0;
    while ((i64{1} << bucket) < nmax) ++bucket;
    j["count_bucket"] = bucket;
    j["D_G"] = weyl_discriminant(chi);
    j["delta_minus"] = delta_minus(chi);
    j["almost_unipotent"] = is_almost_unipotent(chi);
    j["brd"] = nlohmann::json::array();
    for (const auto& f : omega_brd(chi, p).factors) j["brd"].push_back({f.degree, f.multiplicity});
    if (p) j["place"] = *p;
    else j["place"] = nullptr;
    return j;
}

}  // namespace wl
