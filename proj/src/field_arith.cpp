#include "weyllaw/field_arith.hpp"

#include "weyllaw/errors.hpp"

#include <boost/integer/common_factor.hpp>
#include <boost/math/special_functions/bernoulli.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace wl {

namespace {

i64 mod(i64 x, i64 m) {
    i64 r = x % m;
    return r < 0 ? r + m : r;
}

bool squarefree(i64 m) {
    m = std::abs(m);
    for (i64 p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0) return false;
    return true;
}

// extended gcd: returns g = gcd(x, y) >= 0 and u, v with u x + v y = g
i64 egcd(i64 x, i64 y, i64& u, i64& v) {
    i64 r0 = x, r1 = y, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
    while (r1 != 0) {
        const i64 q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(u0, u1) = std::make_pair(u1, u0 - q * u1);
        std::tie(v0, v1) = std::make_pair(v1, v0 - q * v1);
    }
    if (r0 < 0) {
        r0 = -r0;
        u0 = -u0;
        v0 = -v0;
    }
    u = u0;
    v = v0;
    return r0;
}

}  // namespace

bool is_fundamental_discriminant(i64 D) {
    if (D >= 0) return false;
    if (mod(D, 4) == 1) return squarefree(D);
    if (mod(D, 4) != 0) return false;
    const i64 m = D / 4;
    const i64 r = mod(m, 4);
    return (r == 2 || r == 3) && squarefree(m);
}

QuadField::QuadField(i64 D_) : D(D_) {
    if (!is_fundamental_discriminant(D)) throw PreconditionViolated("not a negative fundamental discriminant");
    t = mod(D, 4) == 1 ? 1 : 0;
    c0 = t == 1 ? (D - 1) / 4 : D / 4;
}

std::complex<double> QuadField::omega() const {
    return {static_cast<double>(t) / 2.0, std::sqrt(static_cast<double>(-D)) / 2.0};
}

OFElem of_add(const OFElem& x, const OFElem& y) { return {x.a + y.a, x.b + y.b}; }
OFElem of_sub(const OFElem& x, const OFElem& y) { return {x.a - y.a, x.b - y.b}; }

OFElem of_mul(const QuadField& F, const OFElem& x, const OFElem& y) {
    const i64 bd = x.b * y.b;
    return {x.a * y.a + bd * F.c0, x.a * y.b + x.b * y.a + bd * F.t};
}

OFElem of_conj(const QuadField& F, const OFElem& x) {
    // conj(w) = t - w
    return {x.a + x.b * F.t, -x.b};
}

i64 of_norm(const QuadField& F, const OFElem& x) {
    return x.a * x.a + F.t * x.a * x.b - F.c0 * x.b * x.b;
}

std::complex<double> of_embed(const QuadField& F, const OFElem& x) {
    return static_cast<double>(x.a) + static_cast<double>(x.b) * F.omega();
}

IdealRep ideal_from_generators(const QuadField& F, const std::vector<OFElem>& gens) {
    std::vector<OFElem> v;
    for (const auto& g : gens) {
        v.push_back(g);
        v.push_back(of_mul(F, g, {0, 1}));
    }
    // Euclid on the w-coordinates
    OFElem piv{0, 0};
    std::vector<OFElem> rest;
    for (const auto& x : v) {
        if (x.b == 0) {
            rest.push_back(x);
            continue;
        }
        if (piv.b == 0) {
            piv = x;
            continue;
        }
        i64 u, w;
        const i64 g = egcd(piv.b, x.b, u, w);
        const OFElem np{u * piv.a + w * x.a, g};
        const i64 s = piv.b / g, r = x.b / g;
        // the complementary combination has zero w-coordinate
        rest.push_back({r * piv.a - s * x.a, 0});
        piv = np;
    }
    i64 a = 0;
    for (const auto& x : rest) a = std::gcd(a, std::abs(x.a));
    if (a == 0 || piv.b == 0) throw PreconditionViolated("generators do not span a full lattice");
    if (piv.b < 0) piv = {-piv.a, -piv.b};
    IdealRep I{a, mod(piv.a, a), piv.b};
    return I;
}

IdealRep ideal_principal(const QuadField& F, const OFElem& g) { return ideal_from_generators(F, {g}); }

IdealRep ideal_mul(const QuadField& F, const IdealRep& x, const IdealRep& y) {
    const OFElem xs[2] = {{x.a, 0}, {x.b, x.c}};
    const OFElem ys[2] = {{y.a, 0}, {y.b, y.c}};
    std::vector<OFElem> g;
    for (const auto& u : xs)
        for (const auto& w : ys) g.push_back(of_mul(F, u, w));
    return ideal_from_generators(F, g);
}

IdealRep ideal_pow(const QuadField& F, const IdealRep& x, int k) {
    IdealRep r{1, 0, 1};
    for (int i = 0; i < k; ++i) r = ideal_mul(F, r, x);
    return r;
}

bool ideal_contains(const IdealRep& I, const OFElem& z) {
    if (z.b % I.c != 0) return false;
    const i64 q = z.b / I.c;
    return (z.a - q * I.b) % I.a == 0;
}

bool ideal_contains(const IdealRep& I, const IdealRep& J) {
    return ideal_contains(I, OFElem{J.a, 0}) && ideal_contains(I, OFElem{J.b, J.c});
}

QuadForm reduce(QuadForm f) {
    const i64 D = f.b * f.b - 4 * f.a * f.c;
    if (f.a <= 0 || D >= 0) throw PreconditionViolated("reduce expects a positive definite form");
    for (;;) {
        if (f.b > f.a || f.b <= -f.a) {
            const i64 two_a = 2 * f.a;
            const i64 k = static_cast<i64>(std::floor(static_cast<double>(f.a - f.b) / two_a));
            f.b += k * two_a;
            f.c = (f.b * f.b - D) / (4 * f.a);
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

QuadForm ideal_to_form(const QuadField& F, const IdealRep& I) {
    const i64 A = I.a / I.c, bp = I.b / I.c;
    const i64 num = bp * bp + F.t * bp - F.c0;
    return {A, 2 * bp + F.t, num / A};
}

IdealRep form_to_ideal(const QuadField& F, const QuadForm& f) {
    const i64 bp = (f.b - F.t) / 2;
    return ideal_from_generators(F, {{f.a, 0}, {bp, 1}});
}

QuadForm compose(const QuadField& F, const QuadForm& f, const QuadForm& g) {
    return reduce(ideal_to_form(F, ideal_mul(F, form_to_ideal(F, f), form_to_ideal(F, g))));
}

bool is_principal(const QuadField& F, const IdealRep& I) { return reduce(ideal_to_form(F, I)).a == 1; }

std::vector<QuadForm> class_group(const QuadField& F) {
    const i64 D = F.D;
    if (-D > 1000000) throw ScaleExceeded("|D| above 10^6");
    std::vector<QuadForm> out;
    for (i64 a = 1; 3 * a * a <= -D; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            if (mod(b - D, 2) != 0) continue;
            const i64 num = b * b - D;
            if (num % (4 * a) != 0) continue;
            const i64 c = num / (4 * a);
            if (c < a) continue;
            if ((a == c || std::abs(b) == a) && b < 0) continue;
            out.push_back({a, b, c});
        }
    return out;
}

int class_number(const QuadField& F) { return static_cast<int>(class_group(F).size()); }

int unit_count(const QuadField& F) {
    if (F.D == -4) return 4;
    if (F.D == -3) return 6;
    return 2;
}

int kronecker(i64 D, i64 m) {
    if (m <= 0) throw PreconditionViolated("kronecker symbol needs m >= 1");
    int result = 1;
    while (m % 2 == 0) {
        m /= 2;
        const i64 r = mod(D, 8);
        if (r % 2 == 0) return 0;
        if (r == 3 || r == 5) result = -result;
    }
    // Jacobi symbol (D | m), m odd
    i64 a = mod(D, m), n = m;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const i64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::vector<PrimeIdeal> primes_above(const QuadField& F, i64 p) {
    const int k = kronecker(F.D, p);
    if (k == -1) return {{IdealRep{p, 0, p}, p, 2}};
    std::vector<i64> roots;
    for (i64 r = 0; r < p && roots.size() < 2; ++r)
        if (mod(r * r - F.t * r - F.c0, p) == 0) roots.push_back(r);
    if (roots.empty()) throw PreconditionViolated("kronecker symbol and root search disagree");
    std::vector<PrimeIdeal> out;
    for (i64 r : roots) out.push_back({IdealRep{p, mod(-r, p), 1}, p, 1});
    if (k == 0 && out.size() > 1) out.resize(1);
    return out;
}

std::vector<IdealFactor> factor_ideal(const QuadField& F, const IdealRep& I) {
    i64 N = I.norm();
    if (N > 1000000000000LL) throw FactorizationTooLarge("ideal norm above 10^12");
    std::vector<i64> ps;
    for (i64 p = 2; p * p <= N; ++p)
        if (N % p == 0) {
            ps.push_back(p);
            while (N % p == 0) N /= p;
        }
    if (N > 1) ps.push_back(N);
    std::vector<IdealFactor> out;
    for (i64 p : ps)
        for (const auto& P : primes_above(F, p)) {
            int e = 0;
            IdealRep Pk = P.ideal;
            while (ideal_contains(Pk, I)) {
                ++e;
                Pk = ideal_mul(F, Pk, P.ideal);
            }
            if (e > 0) out.push_back({P, e});
        }
    IdealRep check{1, 0, 1};
    for (const auto& f : out) check = ideal_mul(F, check, ideal_pow(F, f.prime.ideal, f.e));
    if (!(check == I)) throw AssertionFailed("prime factorization does not reproduce the ideal");
    return out;
}

int delta_n(const IdealRep& I, int n, const QuadField& F) {
    if (n < 1) throw PreconditionViolated("n must be positive");
    IdealRep root{1, 0, 1};
    for (const auto& f : factor_ideal(F, I)) {
        if (f.e % n != 0) return 0;
        root = ideal_mul(F, root, ideal_pow(F, f.prime.ideal, f.e / n));
    }
    return is_principal(F, root) ? 1 : 0;
}

namespace {

// Hurwitz zeta by Euler-Maclaurin with M direct terms.
double hurwitz_zeta(int s, double x, int M) {
    double sum = 0;
    for (int m = 0; m < M; ++m) sum += std::pow(m + x, -s);
    const double y = M + x;
    sum += std::pow(y, 1 - s) / (s - 1) + 0.5 * std::pow(y, -s);
    double rising = s;  // s (s+1) ... (s + 2j - 2)
    double ypow = std::pow(y, -s - 1);
    double fact = 2;  // (2j)!
    for (int j = 1; j <= 10; ++j) {
        sum += boost::math::bernoulli_b2n<double>(j) / fact * rising * ypow;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        ypow /= y * y;
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return sum;
}

}  // namespace

double dirichlet_l(const QuadField& F, int k, int tail_terms) {
    if (k < 2) throw PreconditionViolated("L(k, chi) needs k >= 2");
    const i64 q = -F.D;
    double sum = 0;
    for (i64 a = 1; a < q; ++a) {
        const int chi = kronecker(F.D, a);
        if (chi != 0) sum += chi * hurwitz_zeta(k, static_cast<double>(a) / q, tail_terms);
    }
    return sum * std::pow(static_cast<double>(q), -k);
}

ZetaData zeta_data(const QuadField& F, int kmax) {
    if (kmax > 6) throw PreconditionViolated("kmax above 6");
    ZetaData z;
    z.residue = 2.0 * std::numbers::pi * class_number(F) /
                (unit_count(F) * std::sqrt(static_cast<double>(-F.D)));
    z.values.assign(static_cast<size_t>(std::max(kmax + 1, 2)), 0.0);
    for (int k = 2; k <= kmax; ++k) z.values[k] = std::riemann_zeta(static_cast<double>(k)) * dirichlet_l(F, k);
    return z;
}

double vol_GFGA1(int n, const QuadField& F) {
    if (n < 1 || n > 4) throw PreconditionViolated("vol_GFGA1 supports 1 <= n <= 4");
    const auto z = zeta_data(F, std::max(n, 2));
    double v = std::pow(static_cast<double>(-F.D), n * (n - 1) / 4.0) * z.residue;
    for (int k = 2; k <= n; ++k) v *= z.values[k];
    return v;
}

}  // namespace wl
