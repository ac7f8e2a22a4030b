#include "weyllaw/padic_volumes.hpp"

#include "weyllaw/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace wl {

namespace {

using u128 = unsigned __int128;
constexpr double kMaxResidues = 1e8;

i64 md(i64 a, i64 m) {
    a %= m;
    return a < 0 ? a + m : a;
}

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<u128>(a) * static_cast<u128>(b) % static_cast<u128>(m)); }

i64 powmod(i64 b, int e, i64 m) {
    i64 r = 1 % m;
    for (int i = 0; i < e; ++i) r = mulmod(r, b, m);
    return r;
}

i64 ipow(i64 p, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

// largest L with p^L < 2^62
int level_cap(int p) {
    int L = 0;
    i64 v = 1;
    while (v <= (i64{1} << 62) / p) {
        v *= p;
        ++L;
    }
    return L - 1;
}

i64 binom(int n, int k) {
    i64 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Poly merged(Poly f) {
    std::map<std::vector<int>, i64> acc;
    for (const auto& t : f.terms) acc[t.exp] += t.coef;
    f.terms.clear();
    for (const auto& [e, c] : acc)
        if (c != 0) f.terms.push_back({c, e});
    return f;
}

// g(y) = p^{rho D} f(p^{-rho} y), integral
Poly rescale(const Poly& f, int p, int rho) {
    const int D = f.total_degree();
    Poly g = f;
    for (auto& t : g.terms) {
        int a = 0;
        for (int e : t.exp) a += e;
        t.coef *= ipow(p, rho * (D - a));
    }
    return g;
}

struct CellInfo {
    int v0 = 0;       // valuation of the constant term (capped at L)
    int lin = 0;      // min valuation of linear coefficients
    int high = 0;     // min valuation of degree >= 2 coefficients
    int content = 0;  // min over all
    bool decided() const { return v0 < std::min(lin, high); }
    // a linear term dominates: val f - content is controlled by one coordinate
    bool hensel_linear() const { return lin < high && v0 >= lin; }
};

int val_mod(i64 x, int p, int L) {
    if (x == 0) return L;
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return std::min(v, L);
}

// Taylor coefficients of g(y0 + p^k z) modulo p^L, reduced to valuations
CellInfo cell_info(const Poly& g, const std::vector<i64>& y0, int k, int p, int L) {
    const i64 P = ipow(p, L);
    const i64 pk = k >= L ? 0 : ipow(p, k);
    std::map<std::vector<int>, i64> coeff;
    for (const auto& t : g.terms) {
        std::vector<std::vector<std::pair<int, i64>>> parts(g.d);
        for (int i = 0; i < g.d; ++i) {
            const int e = t.exp[i];
            for (int s = 0; s <= e; ++s) {
                i64 c = md(binom(e, s), P);
                c = mulmod(c, powmod(md(y0[i], P), e - s, P), P);
                c = mulmod(c, powmod(pk, s, P), P);
                parts[i].emplace_back(s, c);
            }
        }
        std::vector<size_t> idx(g.d, 0);
        for (;;) {
            std::vector<int> ex(g.d);
            i64 c = md(t.coef, P);
            for (int i = 0; i < g.d; ++i) {
                ex[i] = parts[i][idx[i]].first;
                c = mulmod(c, parts[i][idx[i]].second, P);
            }
            auto& slot = coeff[ex];
            slot = md(slot + c, P);
            int i = 0;
            while (i < g.d && ++idx[i] == parts[i].size()) idx[i++] = 0;
            if (i == g.d) break;
        }
    }
    CellInfo ci{L, L, L, L};
    for (const auto& [ex, c] : coeff) {
        int deg = 0;
        for (int e : ex) deg += e;
        const int v = val_mod(c, p, L);
        if (deg == 0) ci.v0 = v;
        else if (deg == 1) ci.lin = std::min(ci.lin, v);
        else ci.high = std::min(ci.high, v);
    }
    ci.content = std::min({ci.v0, ci.lin, ci.high});
    return ci;
}

struct Cell {
    std::vector<i64> y0;
    int k;
};

std::vector<Cell> children(const Cell& c, int p, int d) {
    std::vector<Cell> out;
    const i64 pk = ipow(p, c.k);
    std::vector<int> digit(d, 0);
    for (;;) {
        Cell ch{c.y0, c.k + 1};
        for (int i = 0; i < d; ++i) ch.y0[i] += digit[i] * pk;
        out.push_back(std::move(ch));
        int i = 0;
        while (i < d && ++digit[i] == p) digit[i++] = 0;
        if (i == d) break;
    }
    return out;
}

BigRat pow_rat(int p, int e) {
    BigRat r = 1;
    for (int i = 0; i < std::abs(e); ++i) r *= p;
    return e >= 0 ? r : BigRat(1) / r;
}

// #{y mod p^M : g(y) = 0 mod p^J}
i64 count_residues(const Poly& g, int p, int J, int M, Exec exec) {
    const int d = g.d;
    const i64 PM = ipow(p, M);
    const i64 PJ = ipow(p, J);
    const i64 rest = ipow(PM, d - 1);
    std::vector<i64> partial(static_cast<size_t>(PM), 0);
    auto row = [&](i64 lead) {
        std::vector<i64> y(d, 0);
        y[0] = lead;
        i64 cnt = 0;
        for (i64 r = 0; r < rest; ++r) {
            i64 q = r;
            for (int i = 1; i < d; ++i) {
                y[i] = q % PM;
                q /= PM;
            }
            i64 s = 0;
            for (const auto& t : g.terms) {
                i64 v = md(t.coef, PJ);
                for (int i = 0; i < d && v != 0; ++i) v = mulmod(v, powmod(md(y[i], PJ), t.exp[i], PJ), PJ);
                s = md(s + v, PJ);
            }
            if (s == 0) ++cnt;
        }
        partial[lead] = cnt;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (i64 a = 0; a < PM; ++a) row(a);
    } else {
        for (i64 a = 0; a < PM; ++a) row(a);
    }
    i64 total = 0;
    for (i64 c : partial) total += c;
    return total;
}

// Upper bound on E[w^k] for w >= B with P(w >= B + u) <= tail(u).
template <class Tail>
double moment_bound(double B, int k, Tail tail) {
    double s = std::pow(B, k);
    for (int u = 0; u < 2000; ++u) {
        const double inc = (std::pow(B + u + 1, k) - std::pow(B + u, k)) * std::min(1.0, tail(u + 1));
        s += inc;
        if (inc < 1e-18 * s && u > 50) break;
    }
    return s * (1 + 1e-12);
}

}  // namespace

int Poly::total_degree() const {
    int D = 0;
    for (const auto& t : terms) {
        int a = 0;
        for (int e : t.exp) a += e;
        D = std::max(D, a);
    }
    return D;
}

bool Poly::is_constant() const { return total_degree() == 0; }

Poly Poly::parse(const std::string& text, int d) {
    if (d < 1) throw PreconditionViolated("polynomial needs at least one variable");
    Poly f;
    f.d = d;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ConfigInvalid("empty polynomial");
    size_t i = 0;
    auto number = [&]() {
        i64 v = 0;
        const size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
        if (i == st) throw ConfigInvalid("expected a number in polynomial '" + text + "'");
        return v;
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        Monomial m{1, std::vector<int>(d, 0)};
        for (;;) {
            if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                m.coef *= number();
            } else if (i < s.size() && s[i] == 'x') {
                ++i;
                const i64 var = number();
                if (var >= d) throw ConfigInvalid("variable index out of range in '" + text + "'");
                int e = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    e = static_cast<int>(number());
                }
                m.exp[var] += e;
            } else {
                throw ConfigInvalid("malformed polynomial '" + text + "'");
            }
            if (i < s.size() && s[i] == '*') ++i;
            else break;
        }
        m.coef *= sign;
        f.terms.push_back(m);
        if (i < s.size() && s[i] != '+' && s[i] != '-') throw ConfigInvalid("malformed polynomial '" + text + "'");
    }
    return merged(f);
}

std::string Poly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        i64 c = t.coef;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        c = std::abs(c);
        bool any = false;
        for (int e : t.exp) any |= e > 0;
        if (c != 1 || !any) os << c;
        bool need_star = c != 1 || !any;
        for (size_t v = 0; v < t.exp.size(); ++v) {
            if (t.exp[v] == 0) continue;
            if (need_star) os << "*";
            os << "x" << v;
            if (t.exp[v] > 1) os << "^" << t.exp[v];
            need_star = true;
        }
        first = false;
    }
    return os.str();
}

Poly translate(const Poly& f, const std::vector<i64>& c) {
    if (static_cast<int>(c.size()) != f.d) throw LengthMismatch("translation vector has wrong length");
    Poly g;
    g.d = f.d;
    for (const auto& t : f.terms) {
        std::vector<int> idx(f.d, 0);
        for (;;) {
            Monomial m{t.coef, idx};
            bool ok = true;
            for (int i = 0; i < f.d && ok; ++i) {
                if (idx[i] > t.exp[i]) ok = false;
                else m.coef *= binom(t.exp[i], idx[i]) * ipow(c[i], t.exp[i] - idx[i]);
            }
            if (ok) g.terms.push_back(m);
            int i = 0;
            while (i < f.d && ++idx[i] > t.exp[i]) idx[i++] = 0;
            if (i == f.d) break;
        }
    }
    return merged(g);
}

bool PolySystem::in_class() const {
    for (const auto& f : polys) {
        if (f.d != d) return false;
        double norm = 0;
        for (const auto& t : f.terms) {
            for (int i = 0; i < d; ++i)
                if (i < static_cast<int>(alpha.size()) && t.exp[i] > alpha[i]) return false;
            norm = std::max(norm, std::abs(static_cast<double>(t.coef)));
        }
        if (!(norm > delta)) return false;
    }
    return true;
}

double PolySystem::A_F(int p) const {
    int v = kInfiniteValuation;
    for (const auto& f : polys)
        for (const auto& t : f.terms) v = std::min(v, valuation(t.coef, p));
    return v >= kInfiniteValuation ? 0.0 : std::pow(static_cast<double>(p), -v);
}

BigRat sublevel_volume(const Poly& f, int p, int j, int m, int rho, Exec exec) {
    if (!is_prime(p)) throw PreconditionViolated("p must be prime");
    if (m < j + 1) throw PreconditionViolated("residue level m must be at least j + 1");
    if (rho < 0) throw PreconditionViolated("rho must be a nonnegative integer");
    const int d = f.d;
    const BigRat vol_gamma = pow_rat(p, rho * d);
    const Poly g = rescale(f, p, rho);
    const int J = j + rho * f.total_degree();
    if (J <= 0) return vol_gamma;
    const int M = m + rho;
    if (std::pow(static_cast<double>(p), static_cast<double>((M + 1) * d)) > kMaxResidues)
        throw ScaleExceeded("residue enumeration above 1e8 points");
    if (J > level_cap(p)) throw ScaleExceeded("valuation threshold beyond 64-bit residues");
    const BigRat v1 = BigRat(count_residues(g, p, J, M, exec)) * pow_rat(p, -M * d);
    const BigRat v2 = BigRat(count_residues(g, p, J, M + 1, exec)) * pow_rat(p, -(M + 1) * d);
    if (v1 != v2) throw Unstable("volume changed between levels m and m + 1; raise m");
    return v1 * vol_gamma;
}

BigRat sublevel_volume_tree(const Poly& f, int p, int j, int rho) {
    if (!is_prime(p)) throw PreconditionViolated("p must be prime");
    const int d = f.d;
    const BigRat vol_gamma = pow_rat(p, rho * d);
    const Poly g = rescale(f, p, rho);
    const int J = j + rho * f.total_degree();
    if (J <= 0) return vol_gamma;
    const int L = level_cap(p);
    if (J >= L) throw ScaleExceeded("valuation threshold beyond 64-bit residues");
    BigRat vol = 0;
    std::vector<Cell> stack{{std::vector<i64>(d, 0), 0}};
    while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        const CellInfo ci = cell_info(g, c.y0, c.k, p, L);
        if (ci.content >= J) {
            vol += pow_rat(p, -c.k * d);
        } else if (!ci.decided() || ci.v0 >= J) {
            for (auto& ch : children(c, p, d)) stack.push_back(std::move(ch));
        }
    }
    return vol * vol_gamma;
}

PowerlawFit powerlaw_fit(const Poly& f, int p, int rho, int jmax) {
    if (jmax < 3) throw PreconditionViolated("power-law fit needs jmax >= 3");
    const double lp = std::log(static_cast<double>(p));
    const double vol_gamma = std::pow(static_cast<double>(p), rho * f.d);
    std::vector<double> logv;
    for (int j = 1; j <= jmax; ++j) {
        const double v = sublevel_volume_tree(f, p, j, rho).convert_to<double>();
        if (!(v > 0)) throw PreconditionViolated("sublevel volume vanishes; no power law to fit");
        logv.push_back(std::log(v));
    }
    auto fit = [&](int J) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int j = 1; j <= J; ++j) {
            const double x = -j * lp, y = logv[j - 1];
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double t = (J * sxy - sx * sy) / (J * sxx - sx * sx);
        double C = 0;
        for (int j = 1; j <= J; ++j)
            C = std::max(C, std::exp(logv[j - 1]) / (vol_gamma * std::pow(p, t * rho) * std::pow(p, -t * j)));
        return std::make_pair(t, C);
    };
    PowerlawFit out;
    std::tie(out.t, out.C) = fit(jmax);
    const auto prev = fit(jmax - 1);
    // compare constants at the full fit's exponent
    double Cp = 0;
    for (int j = 1; j < jmax; ++j)
        Cp = std::max(Cp, std::exp(logv[j - 1]) / (vol_gamma * std::pow(p, out.t * rho) * std::pow(p, -out.t * j)));
    out.C_prev = prev.first == out.t ? prev.second : Cp;
    return out;
}

LogIntegral log_integral(const PolySystem& ps, int p, int rho, int m, double tail_tol) {
    if (!is_prime(p)) throw PreconditionViolated("p must be prime");
    if (ps.polys.empty()) throw PreconditionViolated("log_integral needs at least one polynomial");
    const int d = ps.d;
    const int k = static_cast<int>(ps.polys.size());
    const int L = level_cap(p);
    const int extra = 6;
    if (m + extra >= L) throw ScaleExceeded("cell depth beyond 64-bit residues");
    const double lp = std::log(static_cast<double>(p));
    std::vector<Poly> g;
    std::vector<int> shift;
    for (const auto& f : ps.polys) {
        if (f.terms.empty()) throw PreconditionViolated("zero polynomial has no logarithm");
        if (f.d != d) throw LengthMismatch("polynomial arity differs from d");
        g.push_back(rescale(f, p, rho));
        shift.push_back(rho * f.total_degree());
    }
    LogIntegral out;
    double value = 0, tail = 0;
    std::vector<Cell> stack{{std::vector<i64>(d, 0), 0}};
    while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        std::vector<CellInfo> info;
        bool all_decided = true, all_hensel = true;
        for (const auto& gi : g) {
            info.push_back(cell_info(gi, c.y0, c.k, p, L));
            if (!info.back().decided()) {
                all_decided = false;
                all_hensel &= info.back().hensel_linear();
            }
        }
        const double vol = std::pow(static_cast<double>(p), -c.k * d);
        if (all_decided) {
            double prod = 1;
            for (int i = 0; i < k; ++i) prod *= std::abs(info[i].v0 - shift[i]) * lp;
            value += vol * prod;
            out.max_depth = std::max(out.max_depth, c.k);
            continue;
        }
        out.max_depth = std::max(out.max_depth, c.k);
        if (c.k < m || (!all_hensel && c.k < m + extra)) {
            for (auto& ch : children(c, p, d)) stack.push_back(std::move(ch));
            continue;
        }
        // Hoelder: int_C prod |v_i| <= vol prod (E_C |v_i|^k)^{1/k}
        double prod = 1;
        for (int i = 0; i < k; ++i) {
            const CellInfo& ci = info[i];
            double mk;
            if (ci.decided()) {
                mk = std::pow(std::abs(ci.v0 - shift[i]), k);
            } else if (ci.hensel_linear()) {
                // P(v >= lin + u) <= p^{-u}
                mk = moment_bound(ci.lin + shift[i], k, [p](int u) { return std::pow(static_cast<double>(p), -u); });
            } else {
                out.certified = false;
                const double e = std::max(1, g[i].total_degree());
                mk = moment_bound(ci.content + shift[i], k,
                                  [p, e](int u) { return e * std::pow(static_cast<double>(p), -u / e); });
            }
            prod *= std::pow(mk, 1.0 / k) * lp;
        }
        tail += vol * prod;
    }
    const double vg = std::pow(static_cast<double>(p), rho * d);
    out.value = value * vg;
    out.tail = tail * vg;
    if (out.tail > std::max(1e-12, tail_tol * std::abs(out.value)))
        throw TailTooLarge("log-integral tail bound exceeds tolerance; raise m");
    return out;
}

double log_integral_bracket(const PolySystem& ps, int p, int rho, double t) {
    const double q = p;
    const int k = static_cast<int>(ps.polys.size());
    const double vol = std::pow(q, rho * ps.d);
    const double aF = ps.A_F(p);
    const double logA = aF > 0 ? std::abs(std::log(aF)) : 0.0;
    return vol * (std::pow(q, rho * t) * std::pow(ps.delta, -t) + std::pow(rho * std::log(q), k) + std::pow(logA, k) + 1);
}

}  // namespace wl
