#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weyllaw/errors.hpp"
#include "weyllaw/norms_metrics.hpp"
#include "weyllaw/rng.hpp"

#include <cmath>

using namespace wl;

namespace {

PAdicMatrix random_padic(std::mt19937_64& r, int n, int p) {
    std::uniform_int_distribution<int> d(-20, 20), e(-2, 2);
    PAdicMatrix g(n);
    do {
        for (auto& x : g.a) {
            x = d(r);
            const int k = e(r);
            for (int i = 0; i < std::abs(k); ++i) {
                if (k > 0) x *= p;
                else x /= p;
            }
        }
    } while (g.det() == 0);
    return g;
}

CMatrix random_complex(std::mt19937_64& r, int n) {
    std::normal_distribution<double> N(0, 1);
    const double sc = std::exp(2 * N(r));
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = {N(r) * (i == j ? sc : 1), N(r)};
    return g;
}

}  // namespace

TEST_CASE("norms of simple elements") {
    const PAdicMatrix t = PAdicMatrix::diag_power(2, {1, 0});
    CHECK(group_norm(t, 2) == doctest::Approx(1.0));
    CHECK(group_norm(PAdicMatrix::identity(3), 5) == 0.0);
    PAdicMatrix u = PAdicMatrix::identity(2);
    u(0, 1) = BigRat(1, 2);
    CHECK(sup_norm(u, 2) == doctest::Approx(2.0));
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 4, d(1, 1) = 0.25;
    CHECK(group_norm(d) == doctest::Approx(std::log(4.0)));
    CHECK(group_norm(CMatrix(CMatrix::Identity(3, 3) * 7.0)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("apartment") {
    // H(t)_i = log_q |t_i| gives a translation by +(1,0) for diag(p,1)
    const Vec y = apartment_act(PAdicMatrix::diag_power(2, {1, 0}), {0, 0}, 2);
    CHECK(y[0] == doctest::Approx(1.0));
    CHECK(y[1] == doctest::Approx(0.0));
    CHECK(apartment_H(PAdicMatrix::diag_power(3, {-2, 1}), 3) == Vec{2, -1});
    CHECK(apartment_distance({1, 0}, {0, 0}) == doctest::Approx(1.0));
    CHECK(extension_rescale(1.5, 2) == doctest::Approx(3.0));
    CHECK_THROWS(extension_rescale(1.0, 0));
}

TEST_CASE("property: p-adic Iwasawa decomposition reconstructs exactly") {
    std::mt19937_64 r(1);
    for (int t = 0; t < 150; ++t) {
        const int n = 2 + t % 3;
        const PAdicMatrix g = random_padic(r, n, 3);
        const auto d = iwasawa_padic(g, 3);
        CHECK((d.m * d.u * d.k).a == g.a);
        CHECK(iwasawa_bounds(g, 3).holds());
        CHECK(group_norm(g.inverse(), 3) == group_norm(g, 3));
    }
}

TEST_CASE("property: complex Iwasawa decomposition and bounds") {
    std::mt19937_64 r(2);
    for (int t = 0; t < 150; ++t) {
        const int n = 2 + t % 3;
        const CMatrix g = random_complex(r, n);
        const auto d = iwasawa_arch(g);
        CHECK((d.m * d.u * d.k - g).norm() <= 1e-9 * g.norm());
        CHECK((d.k.adjoint() * d.k - CMatrix::Identity(n, n)).norm() < 1e-10);
        CHECK(iwasawa_bounds(g).holds());
        CHECK(std::abs(group_norm(CMatrix(g.inverse())) - group_norm(g)) < 1e-9);
    }
}

TEST_CASE("property: submultiplicativity and the sup-norm sandwich") {
    std::mt19937_64 r(3);
    for (int t = 0; t < 100; ++t) {
        const PAdicMatrix a = random_padic(r, 3, 2), b = random_padic(r, 3, 2);
        CHECK(group_norm(a * b, 2) <= group_norm(a, 2) + group_norm(b, 2) + 1e-12);
        const CMatrix x = random_complex(r, 3), y = random_complex(r, 3);
        CHECK(group_norm(CMatrix(x * y)) <= group_norm(x) + group_norm(y) + 1e-9);
        PAdicMatrix u = PAdicMatrix::identity(3);
        u(0, 1) = BigRat(static_cast<int>(r() % 7) + 1, 8);
        u(1, 2) = BigRat(3, 4);
        u(0, 2) = static_cast<int>(r() % 5);
        const double ls = std::log2(sup_norm(u, 2));
        CHECK(ls <= group_norm(u, 2) + 1e-12);
        CHECK(group_norm(u, 2) <= 2 * ls + 1e-12);
    }
}

TEST_CASE("venue-tagged elements") {
    const auto e = NormedElement::make(PAdicMatrix::diag_power(5, {2, 0}), 5);
    CHECK_FALSE(e.venue.arch);
    CHECK(e.venue.p == 5);
    CHECK(e.log_norm == doctest::Approx(2.0));
    CMatrix d = CMatrix::Identity(2, 2);
    CHECK(NormedElement::make(d).venue.arch);
}
