#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weyllaw/errors.hpp"
#include "weyllaw/padic_volumes.hpp"

#include <cmath>

using namespace wl;
namespace mp = boost::multiprecision;

namespace {

// f mod p^j depends on y mod p^j only, so p^{-jd} #{y mod p^j : p^j | f(y)}
// is the exact volume of {|f|_p <= p^{-j}} in Z_p^d.
BigRat brute_volume(const Poly& f, int p, int j) {
    i64 q = 1;
    for (int k = 0; k < j; ++k) q *= p;
    i64 total = 1;
    for (int k = 0; k < f.d; ++k) total *= q;
    i64 hits = 0;
    std::vector<i64> y(f.d);
    for (i64 idx = 0; idx < total; ++idx) {
        i64 r = idx;
        for (int k = 0; k < f.d; ++k) y[k] = r % q, r /= q;
        BigInt v = 0;
        for (const auto& mono : f.terms) {
            BigInt t = mono.coef;
            for (int k = 0; k < f.d; ++k) t *= mp::pow(BigInt(y[k]), mono.exp[k]);
            v += t;
        }
        if (v % q == 0) ++hits;
    }
    return BigRat(hits) / BigRat(total);
}

BigRat pw(int p, int e) { return e >= 0 ? BigRat(mp::pow(BigInt(p), e)) : BigRat(1) / mp::pow(BigInt(p), -e); }

}  // namespace

TEST_CASE("polynomial parsing and translation") {
    const Poly f = Poly::parse("3*x0^2*x1 - x1 + 7", 2);
    CHECK(f.total_degree() == 3);
    CHECK_FALSE(f.is_constant());
    CHECK(Poly::parse("5", 1).is_constant());
    CHECK(translate(Poly::parse("x0^2*x1 - 3*x1 + 2", 2), {1, -2}).str() == "6 - 2*x1 - 4*x0 + 2*x0*x1 - 2*x0^2 + x0^2*x1");
    CHECK_THROWS_AS(Poly::parse("x3", 2), ConfigInvalid);
    CHECK_THROWS_AS(Poly::parse("2*", 1), ConfigInvalid);
}

TEST_CASE("closed forms") {
    const Poly x = Poly::parse("x0", 1), x2 = Poly::parse("x0^2", 1), xy = Poly::parse("x0*x1", 2);
    for (int p : {2, 3, 5})
        for (int j = 1; j <= 4; ++j) {
            CHECK(sublevel_volume(x, p, j, j + 1) == pw(p, -j));
            CHECK(sublevel_volume(x2, p, j, j + 1) == pw(p, -(j + 1) / 2));
            const BigRat prod = BigRat(j) * BigRat(p - 1, p) * pw(p, -j) + pw(p, -j);
            CHECK(sublevel_volume_tree(xy, p, j) == prod);
        }
    CHECK(sublevel_volume(xy, 2, 1, 2) == BigRat(3, 4));
    CHECK(sublevel_volume(xy, 2, 3, 4) == BigRat(5, 16));
}

TEST_CASE("residue counting against brute force") {
    const std::vector<Poly> fs{Poly::parse("x0^2 - 2*x1^3 + x0*x1", 2), Poly::parse("x0^3 + 3*x0 + 1", 1),
                               Poly::parse("x0^2 + x1^2", 2), Poly::parse("4*x0 + 2", 1)};
    for (const auto& f : fs)
        for (int p : {2, 3})
            for (int j = 1; j <= 3; ++j) {
                const BigRat b = brute_volume(f, p, j);
                CHECK(sublevel_volume_tree(f, p, j) == b);
                if (f.d == 1 || j <= 2) CHECK(sublevel_volume(f, p, j, j + 1) == b);
            }
}

TEST_CASE("property: translation invariance") {
    const Poly f = Poly::parse("x0^2 - 2*x1^3 + x0*x1", 2);
    CHECK(sublevel_volume_tree(f, 3, 3) == BigRat(2, 27));
    CHECK(sublevel_volume_tree(translate(f, {2, 5}), 3, 3) == BigRat(2, 27));
    CHECK(sublevel_volume_tree(translate(f, {-4, 9}), 3, 3) == sublevel_volume_tree(f, 3, 3));
}

TEST_CASE("inflated domain") {
    const Poly x2 = Poly::parse("x0^2", 1);
    CHECK(sublevel_volume_tree(x2, 2, 3, 1) == BigRat(1, 4));
    CHECK(sublevel_volume(x2, 2, 3, 6, 1) == BigRat(1, 4));
    const Poly x = Poly::parse("x0", 1);
    // at j = 0 the whole of Z_p qualifies inside p^{-1} Z_p
    CHECK(sublevel_volume_tree(x, 3, 0, 1) == sublevel_volume_tree(x, 3, 0, 0));
}

TEST_CASE("residue counting: serial equals parallel") {
    const Poly f = Poly::parse("x0^2 + x1^2 + x0*x1", 2);
    CHECK(sublevel_volume(f, 3, 2, 4, 0, Exec::Serial) == sublevel_volume(f, 3, 2, 4, 0, Exec::Parallel));
}

TEST_CASE("errors") {
    const Poly x = Poly::parse("x0", 1);
    CHECK_THROWS_AS(sublevel_volume(x, 2, 3, 3), PreconditionViolated);
    CHECK_THROWS_AS(sublevel_volume(x, 4, 1, 2), PreconditionViolated);
    CHECK_THROWS_AS(sublevel_volume(Poly::parse("x0*x1*x2", 3), 5, 6, 7), ScaleExceeded);
    CHECK_THROWS_AS(powerlaw_fit(x, 2, 0, 2), PreconditionViolated);
}

TEST_CASE("power-law fits") {
    const auto a = powerlaw_fit(Poly::parse("x0", 1), 2, 0, 10);
    CHECK(a.t == doctest::Approx(1));
    CHECK(a.stable());
    const auto b = powerlaw_fit(Poly::parse("x0^2", 1), 2, 0, 9);
    CHECK(b.t == doctest::Approx(0.5));
    CHECK(b.stable());
    CHECK(powerlaw_fit(Poly::parse("x0^2", 1), 2, 0, 10).t == doctest::Approx(0.484848).epsilon(1e-5));
}

TEST_CASE("log integral of x") {
    const Poly x = Poly::parse("x0", 1);
    for (int p : {2, 3, 5}) {
        PolySystem ps;
        ps.d = 1;
        ps.polys = {x};
        const auto L = log_integral(ps, p, 0, p == 2 ? 12 : 8);
        const double closed = std::log(static_cast<double>(p)) / (p - 1);
        CHECK(L.certified);
        CHECK(closed - L.value >= -1e-12);
        CHECK(closed - L.value <= L.tail + 1e-12);
        CHECK(L.value + L.tail == doctest::Approx(closed).epsilon(1e-9));
    }
    PolySystem c;
    c.d = 1;
    c.polys = {Poly::parse("5", 1)};
    CHECK(log_integral(c, 3, 0, 3).value == 0.0);
}

TEST_CASE("log integral of a two-factor system converges") {
    PolySystem two;
    two.d = 2;
    two.polys = {Poly::parse("x0", 2), Poly::parse("x1 + x0^2", 2)};
    double prev = 0, prev_tail = 1e300;
    for (int m : {4, 6, 8}) {
        const auto L = log_integral(two, 3, 0, m, 1.0);
        CHECK(L.value >= prev);
        CHECK(L.tail < prev_tail);
        prev = L.value;
        prev_tail = L.tail;
    }
    CHECK(prev == doctest::Approx(0.30017562).epsilon(1e-6));
    CHECK(log_integral_bracket(two, 3, 0, 0.5) > 0);
}
