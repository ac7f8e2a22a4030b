#include "weyllaw/padic_hecke.hpp"

#include "weyllaw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <tuple>

namespace wl {

namespace {

constexpr double kEnumerationCap = 5e7;

using i128 = __int128;

i64 ipow(i64 p, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

int val128(i128 x, int p) {
    if (x == 0) return kInfiniteValuation;
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

i128 det128(const IntMat& A, const std::vector<int>& rows, const std::vector<int>& cols) {
    const size_t k = rows.size();
    if (k == 1) return A(rows[0], cols[0]);
    if (k == 2)
        return static_cast<i128>(A(rows[0], cols[0])) * A(rows[1], cols[1]) -
               static_cast<i128>(A(rows[0], cols[1])) * A(rows[1], cols[0]);
    i128 d = 0;
    std::vector<int> sub(rows.begin() + 1, rows.end());
    for (size_t c = 0; c < k; ++c) {
        std::vector<int> sc;
        for (size_t j = 0; j < k; ++j)
            if (j != c) sc.push_back(cols[j]);
        const i128 m = det128(A, sub, sc);
        const i128 t = static_cast<i128>(A(rows[0], cols[c])) * m;
        d += (c % 2 == 0) ? t : -t;
    }
    return d;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

const std::vector<std::vector<int>>& subsets_cached(int n, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& v = cache[{n, k}];
    if (v.empty()) {
        std::vector<int> cur;
        subsets(n, k, 0, cur, v);
    }
    return v;
}

// shift xi so that its smallest entry is zero; returns the shift
int normalize_shift(Cochar& xi) {
    const int c = *std::min_element(xi.begin(), xi.end());
    for (int& v : xi) v -= c;
    return c;
}

Cochar plus_central(Cochar xi, int c) {
    for (int& v : xi) v += c;
    return xi;
}

// diagonal exponent vectors a with entries in [0, top] and sum s
void diagonals(int n, int top, int s, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n - 1) {
        if (s >= 0 && s <= top) {
            cur.push_back(s);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int a = 0; a <= std::min(top, s); ++a) {
        cur.push_back(a);
        diagonals(n, top, s - a, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> all_diagonals(const Cochar& xi_shifted) {
    const int n = static_cast<int>(xi_shifted.size());
    const int s = std::accumulate(xi_shifted.begin(), xi_shifted.end(), 0);
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    diagonals(n, xi_shifted.front(), s, cur, out);
    return out;
}

double hermite_count(const std::vector<int>& a, int p, CosetSide side) {
    const int n = static_cast<int>(a.size());
    double c = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c *= std::pow(p, side == CosetSide::Left ? a[j] : a[i]);
    return c;
}

// All Hermite forms with diagonal p^a of the given Cartan type.
void enumerate_diagonal(const std::vector<int>& a, const Cochar& type, int p, CosetSide side,
                        std::vector<IntMat>& out) {
    const int n = static_cast<int>(a.size());
    IntMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = ipow(p, a[i]);
    std::vector<std::pair<int, int>> slots;
    std::vector<i64> mods;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            slots.emplace_back(i, j);
            mods.push_back(ipow(p, side == CosetSide::Left ? a[j] : a[i]));
        }
    std::vector<i64> ctr(slots.size(), 0);
    for (;;) {
        for (size_t k = 0; k < slots.size(); ++k) m(slots[k].first, slots[k].second) = ctr[k];
        if (cartan_type(m, p) == type) out.push_back(m);
        size_t k = 0;
        while (k < ctr.size() && ++ctr[k] == mods[k]) ctr[k++] = 0;
        if (k == ctr.size()) break;
    }
}

}  // namespace

PrimeContext::PrimeContext(int p_, int m_) : p(p_), m(m_) {
    if (!is_prime(p)) throw PreconditionViolated("p must be prime");
    if (m < 1) throw PreconditionViolated("truncation level m must be at least 1");
}

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int valuation(i64 x, int p) { return val128(x, p); }

int valuation(const BigRat& x, int p) {
    if (x == 0) return kInfiniteValuation;
    BigInt num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
    int v = 0;
    while (num % p == 0) {
        num /= p;
        ++v;
    }
    while (den % p == 0) {
        den /= p;
        --v;
    }
    return v;
}

PAdicMatrix PAdicMatrix::identity(int n) {
    PAdicMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

PAdicMatrix PAdicMatrix::diag_power(int p, const Cochar& xi) {
    const int n = static_cast<int>(xi.size());
    PAdicMatrix m(n);
    for (int i = 0; i < n; ++i) {
        BigRat v = 1;
        for (int k = 0; k < std::abs(xi[i]); ++k) v *= p;
        m(i, i) = xi[i] >= 0 ? v : BigRat(1) / v;
    }
    return m;
}

PAdicMatrix PAdicMatrix::operator*(const PAdicMatrix& o) const {
    if (n != o.n) throw LengthMismatch("matrix sizes differ");
    PAdicMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if ((*this)(i, k) == 0) continue;
            for (int j = 0; j < n; ++j) r(i, j) += (*this)(i, k) * o(k, j);
        }
    return r;
}

PAdicMatrix PAdicMatrix::inverse() const {
    PAdicMatrix m = *this, inv = identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw SingularMatrix("matrix is not invertible");
        for (int j = 0; j < n; ++j) {
            std::swap(m(c, j), m(piv, j));
            std::swap(inv(c, j), inv(piv, j));
        }
        const BigRat d = m(c, c);
        for (int j = 0; j < n; ++j) {
            m(c, j) /= d;
            inv(c, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            const BigRat f = m(r, c);
            for (int j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

BigRat PAdicMatrix::det() const {
    PAdicMatrix m = *this;
    BigRat d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
            d = -d;
        }
        d *= m(c, c);
        for (int r = c + 1; r < n; ++r) {
            const BigRat f = m(r, c) / m(c, c);
            for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return d;
}

IntMat IntMat::operator*(const IntMat& o) const {
    IntMat r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const i64 v = (*this)(i, k);
            if (v == 0) continue;
            for (int j = 0; j < n; ++j) r(i, j) += v * o(k, j);
        }
    return r;
}

PAdicMatrix IntMat::to_padic() const {
    PAdicMatrix m(n);
    for (size_t k = 0; k < a.size(); ++k) m.a[k] = a[k];
    return m;
}

Cochar cartan_decompose(const PAdicMatrix& A, int p) {
    const int n = A.n;
    PAdicMatrix m = A;
    std::vector<int> rows(n), cols(n);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    Cochar xi;
    for (int step = 0; step < n; ++step) {
        int best = kInfiniteValuation, bi = -1, bj = -1;
        for (int i = step; i < n; ++i)
            for (int j = step; j < n; ++j) {
                const int v = valuation(m(rows[i], cols[j]), p);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) throw SingularMatrix("matrix is singular");
        std::swap(rows[step], rows[bi]);
        std::swap(cols[step], cols[bj]);
        const int pr = rows[step], pc = cols[step];
        // clear the pivot's column; the multipliers are p-integral
        for (int i = step + 1; i < n; ++i) {
            const int r = rows[i];
            if (m(r, pc) == 0) continue;
            const BigRat f = m(r, pc) / m(pr, pc);
            for (int j = step; j < n; ++j) m(r, cols[j]) -= f * m(pr, cols[j]);
        }
        xi.push_back(best);
    }
    std::sort(xi.begin(), xi.end(), std::greater<>());
    return xi;
}

Cochar cartan_type(const IntMat& A, int p) {
    const int n = A.n;
    if (n > 4) return cartan_decompose(A.to_padic(), p);
    std::vector<int> d(n + 1, 0);
    for (int k = 1; k <= n; ++k) {
        // invariant factors ascend, so d_k >= 2 d_{k-1} - d_{k-2} bounds the search
        const int floor_k = k == 1 ? 0 : 2 * d[k - 1] - (k >= 2 ? d[k - 2] : 0);
        int best = kInfiniteValuation;
        const auto& ss = subsets_cached(n, k);
        for (size_t a = 0; a < ss.size() && best > floor_k; ++a)
            for (size_t b = 0; b < ss.size() && best > floor_k; ++b)
                best = std::min(best, val128(det128(A, ss[a], ss[b]), p));
        if (best >= kInfiniteValuation) throw SingularMatrix("matrix is singular");
        d[k] = best;
    }
    Cochar xi(n);
    for (int k = 1; k <= n; ++k) xi[k - 1] = d[k] - d[k - 1];
    std::sort(xi.begin(), xi.end(), std::greater<>());
    return xi;
}

double enumeration_size(const Cochar& xi_in, int p) {
    Cochar xi = dominant_rep(xi_in);
    normalize_shift(xi);
    double total = 0;
    for (const auto& a : all_diagonals(xi)) total += hermite_count(a, p, CosetSide::Left);
    return total;
}

std::vector<IntMat> coset_reps(const Cochar& xi_in, const PrimeContext& ctx, CosetSide side, Exec exec) {
    if (!is_dominant(xi_in)) throw PreconditionViolated("coset_reps expects dominant xi");
    Cochar xi = xi_in;
    const int shift = normalize_shift(xi);
    if (shift < 0) throw PreconditionViolated("coset_reps expects xi_n >= 0");
    const int p = ctx.p;
    const auto diags = all_diagonals(xi);
    double total = 0;
    for (const auto& a : diags) total += hermite_count(a, p, side);
    if (total > kEnumerationCap) throw ScaleExceeded("Hermite enumeration above 5e7 candidates");
    std::vector<std::vector<IntMat>> parts(diags.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(diags.size()); ++k)
            enumerate_diagonal(diags[k], xi, p, side, parts[k]);
    } else {
        for (size_t k = 0; k < diags.size(); ++k) enumerate_diagonal(diags[k], xi, p, side, parts[k]);
    }
    std::vector<IntMat> out;
    const i64 scale = ipow(p, shift);
    for (auto& part : parts)
        for (auto& m : part) {
            for (auto& v : m.a) v *= scale;
            out.push_back(std::move(m));
        }
    return out;
}

i64 degree_closed_form(const Cochar& xi_in, int p) {
    const Cochar xi = dominant_rep(xi_in);
    const int n = static_cast<int>(xi.size());
    // W(t) = prod_{k=1}^n (1 - t^k) / (1 - t); evaluate at t = 1/q exactly
    auto poincare = [&](int m) {
        BigRat w = 1;
        const BigRat t = BigRat(1) / p;
        for (int k = 1; k <= m; ++k) {
            BigRat num = 0, pw = 1;
            for (int e = 0; e < k; ++e) {
                num += pw;
                pw *= t;
            }
            w *= num;
        }
        return w;
    };
    BigRat deg = poincare(n);
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && xi[j] == xi[i]) ++j;
        deg /= poincare(j - i);
        i = j;
    }
    int e = 0;
    for (int i = 0; i < n; ++i) e += (n - 1 - 2 * i) * xi[i];
    for (int k = 0; k < std::abs(e); ++k) if (e > 0) deg *= p; else deg /= p;
    if (boost::multiprecision::denominator(deg) != 1) throw AssertionFailed("degree formula not integral");
    return static_cast<i64>(boost::multiprecision::numerator(deg));
}

i64 degree(const Cochar& xi_in, const PrimeContext& ctx) {
    Cochar xi = dominant_rep(xi_in);
    normalize_shift(xi);
    if (enumeration_size(xi, ctx.p) > kEnumerationCap) return degree_closed_form(xi, ctx.p);
    static std::mutex mu;
    static std::map<std::pair<Cochar, int>, i64> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find({xi, ctx.p}); it != cache.end()) return it->second;
    }
    const i64 d = static_cast<i64>(coset_reps(xi, ctx).size());
    std::lock_guard<std::mutex> lock(mu);
    cache[{xi, ctx.p}] = d;
    return d;
}

HeckeElement HeckeElement::tau(const Cochar& xi) {
    HeckeElement h;
    h.add(dominant_rep(xi), 1);
    return h;
}

void HeckeElement::add(const Cochar& xi, const Rat& c) {
    if (c.numerator() == 0) return;
    auto& v = coeffs[xi];
    v += c;
    if (v.numerator() == 0) coeffs.erase(xi);
}

HeckeElement HeckeElement::operator+(const HeckeElement& o) const {
    HeckeElement r = *this;
    for (const auto& [k, v] : o.coeffs) r.add(k, v);
    return r;
}

HeckeElement convolve(const Cochar& xi_in, const Cochar& zeta_in, const PrimeContext& ctx, Exec exec) {
    Cochar xi = dominant_rep(xi_in), zeta = dominant_rep(zeta_in);
    if (xi.size() != zeta.size()) throw LengthMismatch("cocharacters differ in length");
    const int sx = normalize_shift(xi), sz = normalize_shift(zeta);
    const int p = ctx.p;

    // keyed on the execution mode too, so the two paths never share results
    using Key = std::tuple<Cochar, Cochar, int, Exec>;
    static std::mutex mu;
    static std::map<Key, HeckeElement> cache;
    const Key key{xi, zeta, p, exec};
    HeckeElement base;
    bool hit = false;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) {
            base = it->second;
            hit = true;
        }
    }
    if (!hit) {
        const auto r = coset_reps(xi, ctx, CosetSide::Left, exec);
        const auto s = coset_reps(zeta, ctx, CosetSide::Left, exec);
        // classify every product r_i s_j; partial tallies per r_i, merged in order
        std::vector<std::map<Cochar, i64>> parts(r.size());
        auto classify = [&](size_t i) {
            for (const auto& sj : s) ++parts[i][cartan_type(r[i] * sj, p)];
        };
        if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(r.size()); ++i) classify(static_cast<size_t>(i));
        } else {
            for (size_t i = 0; i < r.size(); ++i) classify(i);
        }
        std::map<Cochar, i64> counts;
        for (const auto& part : parts)
            for (const auto& [nu, c] : part) counts[nu] += c;
        for (const auto& [nu, c] : counts) {
            const i64 d = degree(nu, ctx);
            if (c % d != 0) throw DivisibilityViolation("pair count not divisible by deg tau_nu");
            base.add(nu, Rat(c / d));
        }
        std::lock_guard<std::mutex> lock(mu);
        cache[key] = base;
    }
    HeckeElement out;
    for (const auto& [nu, c] : base.coeffs) out.add(plus_central(nu, sx + sz), c);
    return out;
}

HeckeElement convolve(const HeckeElement& f, const HeckeElement& g, const PrimeContext& ctx) {
    HeckeElement out;
    for (const auto& [a, ca] : f.coeffs)
        for (const auto& [b, cb] : g.coeffs)
            for (const auto& [nu, c] : convolve(a, b, ctx).coeffs) out.add(nu, ca * cb * c);
    return out;
}

double HalfPow::value(int p) const {
    return boost::rational_cast<double>(coeff) * std::pow(static_cast<double>(p), half_exp / 2.0);
}

int modulus_exponent(const Cochar& mu) {
    const int n = static_cast<int>(mu.size());
    int s = 0;
    for (int i = 0; i < n; ++i) s += (n - 1 - 2 * i) * mu[i];
    return s;
}

HalfPow SatakePoly::coefficient(const Cochar& mu) const {
    auto it = N.find(mu);
    if (it == N.end()) return {0, 0};
    return {it->second, -modulus_exponent(mu)};
}

SatakePoly SatakePoly::operator*(const SatakePoly& o) const {
    SatakePoly r;
    r.p = p;
    for (const auto& [a, ca] : N)
        for (const auto& [b, cb] : o.N) {
            Cochar c(a.size());
            for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
            r.N[c] += ca * cb;
        }
    std::erase_if(r.N, [](const auto& kv) { return kv.second.numerator() == 0; });
    return r;
}

SatakePoly SatakePoly::operator+(const SatakePoly& o) const {
    SatakePoly r = *this;
    for (const auto& [k, v] : o.N) r.N[k] += v;
    std::erase_if(r.N, [](const auto& kv) { return kv.second.numerator() == 0; });
    return r;
}

bool SatakePoly::is_w_invariant() const {
    // c_{w mu} = c_mu  <=>  N_{w mu} = N_mu p^{(s(w mu) - s(mu)) / 2}, an integer power
    for (const auto& [mu, c] : N)
        for (const auto& w : weyl_orbit(mu)) {
            const int d = modulus_exponent(w) - modulus_exponent(mu);
            if (d % 2 != 0) return false;
            Rat expect = c;
            for (int k = 0; k < std::abs(d / 2); ++k) expect = d > 0 ? expect * p : expect / p;
            auto it = N.find(w);
            if (it == N.end() || it->second != expect) return false;
        }
    return true;
}

std::complex<double> SatakePoly::eval(const std::vector<std::complex<double>>& z) const {
    std::complex<double> s = 0;
    for (const auto& [mu, c] : N) {
        std::complex<double> t = coefficient(mu).value(p);
        for (size_t i = 0; i < mu.size(); ++i) t *= std::pow(z[i], mu[i]);
        s += t;
    }
    return s;
}

SatakePoly satake(const Cochar& xi_in, const PrimeContext& ctx) {
    Cochar xi = dominant_rep(xi_in);
    const int shift = normalize_shift(xi);
    SatakePoly s;
    s.p = ctx.p;
    for (const auto& r : coset_reps(xi, ctx, CosetSide::Right)) {
        Cochar mu(xi.size());
        for (int i = 0; i < r.n; ++i) mu[i] = valuation(r(i, i), ctx.p) + shift;
        s.N[mu] += 1;
    }
    return s;
}

SatakePoly satake(const HeckeElement& f, const PrimeContext& ctx) {
    SatakePoly s;
    s.p = ctx.p;
    for (const auto& [xi, c] : f.coeffs) {
        SatakePoly t = satake(xi, ctx);
        for (auto& [k, v] : t.N) v *= c;
        s = s + t;
    }
    return s;
}

namespace {

std::vector<int> block_index(const std::vector<int>& blocks, int n) {
    std::vector<int> b;
    for (size_t k = 0; k < blocks.size(); ++k)
        for (int i = 0; i < blocks[k]; ++i) b.push_back(static_cast<int>(k));
    if (static_cast<int>(b.size()) != n) throw PreconditionViolated("Levi blocks must sum to n");
    return b;
}

bool levi_dominant(const Cochar& zeta, const std::vector<int>& bidx) {
    for (size_t i = 0; i + 1 < zeta.size(); ++i)
        if (bidx[i] == bidx[i + 1] && zeta[i] < zeta[i + 1]) return false;
    return true;
}

// #{u in U_P(p^{-m} Z / Z) : p^zeta u in K p^xi K}
i64 unipotent_count(const Cochar& xi, const Cochar& zeta, const std::vector<int>& bidx, int p, int m) {
    const int n = static_cast<int>(xi.size());
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (bidx[i] != bidx[j]) slots.emplace_back(i, j);
    const double size = std::pow(static_cast<double>(p), m * static_cast<double>(slots.size()));
    if (size > kEnumerationCap) throw ScaleExceeded("unipotent residue count above 5e7");
    const int zmin = *std::min_element(zeta.begin(), zeta.end());
    // M = p^{m - zmin} p^zeta u is integral; its type is xi + (m - zmin)
    const Cochar target = plus_central(xi, m - zmin);
    const i64 pm = ipow(p, m);
    IntMat M(n);
    std::vector<i64> rowscale(n);
    for (int i = 0; i < n; ++i) {
        rowscale[i] = ipow(p, zeta[i] - zmin);
        M(i, i) = pm * rowscale[i];
    }
    std::vector<i64> ctr(slots.size(), 0);
    i64 count = 0;
    for (;;) {
        for (size_t k = 0; k < slots.size(); ++k) M(slots[k].first, slots[k].second) = ctr[k] * rowscale[slots[k].first];
        if (cartan_type(M, p) == target) ++count;
        size_t k = 0;
        while (k < ctr.size() && ++ctr[k] == pm) ctr[k++] = 0;
        if (k == ctr.size()) break;
    }
    return count;
}

}  // namespace

HalfPow constant_term_coeff(const Cochar& xi_in, const Cochar& zeta, const std::vector<int>& blocks,
                            const PrimeContext& ctx) {
    const Cochar xi = dominant_rep(xi_in);
    const int n = static_cast<int>(xi.size());
    if (static_cast<int>(zeta.size()) != n) throw LengthMismatch("zeta length differs from n");
    const auto bidx = block_index(blocks, n);
    if (!levi_dominant(zeta, bidx)) throw PreconditionViolated("zeta must be dominant for the Levi");
    if (std::accumulate(zeta.begin(), zeta.end(), 0) != std::accumulate(xi.begin(), xi.end(), 0)) return {0, 0};
    // support: u_ij has valuation >= xi_n - zeta_i, so level m0 sees every u
    int m0 = 0;
    for (int v : zeta) m0 = std::max(m0, v - xi.back());
    const int m = std::max(m0, ctx.m);
    const i64 c = unipotent_count(xi, zeta, bidx, ctx.p, m);
    if (unipotent_count(xi, zeta, bidx, ctx.p, m + 1) != c)
        throw AssertionFailed("unipotent count changed between levels m and m + 1");
    int half = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (bidx[i] != bidx[j]) half -= zeta[i] - zeta[j];
    if (c == 0) return {0, 0};
    return {Rat(c), half};
}

std::map<Cochar, HalfPow> constant_term(const Cochar& xi_in, const std::vector<int>& blocks,
                                        const PrimeContext& ctx) {
    const Cochar xi = dominant_rep(xi_in);
    const int n = static_cast<int>(xi.size());
    const auto bidx = block_index(blocks, n);
    const int B = weyl_norm(xi) + 1;
    const int total = std::accumulate(xi.begin(), xi.end(), 0);
    std::map<Cochar, HalfPow> out;
    Cochar z(n, -B);
    for (;;) {
        if (std::accumulate(z.begin(), z.end(), 0) == total && levi_dominant(z, bidx)) {
            const HalfPow c = constant_term_coeff(xi, z, blocks, ctx);
            if (c.coeff.numerator() != 0) out[z] = c;
        }
        int k = 0;
        while (k < n && ++z[k] > B) z[k++] = -B;
        if (k == n) break;
    }
    return out;
}

double ramified_measure_scale(double different_norm, int n) {
    return std::pow(different_norm, -(n * n + n) / 2.0);
}

}  // namespace wl
