#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weyllaw/classes_enum.hpp"
#include "weyllaw/errors.hpp"
#include "weyllaw/rng.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

using namespace wl;

namespace {

std::size_t brute_count(const QuadField& F, i64 bound) {
    std::size_t c = 0;
    for (i64 a = -2 * bound - 2; a <= 2 * bound + 2; ++a)
        for (i64 b = -2 * bound - 2; b <= 2 * bound + 2; ++b)
            if (of_norm(F, {a, b}) <= bound) ++c;
    return c;
}

std::vector<std::pair<int, int>> shape(const BasedRootDatumClass& b) {
    std::vector<std::pair<int, int>> s;
    for (const auto& f : b.factors) s.emplace_back(f.degree, f.multiplicity);
    return s;
}

}  // namespace

TEST_CASE("lattice points of bounded norm") {
    const QuadField G(-4);
    CHECK(elements_of_norm_le(G, 2).size() == 9);
    for (i64 B : {1, 5, 10, 50}) CHECK(elements_of_norm_le(G, B).size() == brute_count(G, B));
    const QuadField H(-3);
    CHECK(elements_of_norm_le(H, 1).size() == 7);
    CHECK(elements_of_norm_le(H, 12).size() == brute_count(H, 12));
}

TEST_CASE("class enumeration counts") {
    const QuadField G(-4);
    const auto e0 = enumerate_classes(2, G, 0.5, 1.0);
    CHECK(e0.classes.empty());
    CHECK(e0.excluded_singular == 1);
    // a_0 != 0: c (c - 1) monic quadratics from c admissible coefficients
    for (double B : {4.0, 16.0}) {
        const auto e = enumerate_classes(2, G, B, 1.0);
        const std::size_t c = brute_count(G, static_cast<i64>(B));
        CHECK(e.candidates_per_coeff == c);
        CHECK(e.classes.size() == c * (c - 1));
    }
    CHECK_THROWS_AS(enumerate_classes(2, G, 2e4, 1.0), ScaleExceeded);
}

TEST_CASE("enumeration: serial equals parallel") {
    const QuadField G(-4);
    const auto s = enumerate_classes(2, G, 8, 1.0, true, Exec::Serial);
    const auto p = enumerate_classes(2, G, 8, 1.0, true, Exec::Parallel);
    REQUIRE(s.classes.size() == p.classes.size());
    for (std::size_t i = 0; i < s.classes.size(); ++i) CHECK(s.classes[i].coeffs() == p.classes[i].coeffs());
}

TEST_CASE("Weyl discriminant and spacing") {
    const QuadField G(-4);
    const CharPolyClass a(G, {{0, -1}, {0, 0}});  // x^2 - i
    CHECK(weyl_discriminant(a) == doctest::Approx(16));
    CHECK(weyl_discriminant_n2(a) == doctest::Approx(16));
    const CharPolyClass b(G, {{2, 0}, {-3, 0}});  // (x-1)(x-2)
    CHECK_FALSE(is_almost_unipotent(b));
    CHECK(weyl_discriminant(b) == doctest::Approx(0.25));
    CHECK(delta_minus(b) == doctest::Approx(4));
    const auto s = spacing_lower_bound_check(b);
    CHECK(s.lhs == doctest::Approx(std::sqrt(1.25)));
    CHECK(s.margin() > 0);
    const CharPolyClass u(G, {{0, 1}, {-1, -1}});  // (x-1)(x-i)
    CHECK(is_almost_unipotent(u));
    CHECK_THROWS_AS(spacing_lower_bound_check(u), PreconditionViolated);
    const CharPolyClass r(G, {{1, 0}, {0, 0}, {2, 0}, {0, 0}});  // (x^2+1)^2
    CHECK(weyl_discriminant(r) == doctest::Approx(65536));
}

TEST_CASE("property: n = 2 discriminant equals the exact norm formula") {
    const QuadField G(-4);
    for (const auto& c : enumerate_classes(2, G, 10, 1.0).classes)
        CHECK(weyl_discriminant(c) == doctest::Approx(weyl_discriminant_n2(c)).epsilon(1e-9));
}

TEST_CASE("property: spacing bound holds and is relabeling invariant") {
    const QuadField G(-4);
    int checked = 0;
    for (const auto& c : enumerate_classes(2, G, 16, 1.0).classes) {
        for (const auto& z : c.roots()) CHECK(std::norm(z) <= 4 * 16 + 1e-9);
        CHECK(weyl_discriminant(c) <= 25 * 16 * 16);
        if (is_almost_unipotent(c)) continue;
        ++checked;
        CHECK(spacing_lower_bound_check(c).margin() >= 0);
    }
    CHECK(checked > 1000);
}

TEST_CASE("global classification") {
    const QuadField G(-4);
    CHECK(shape(omega_brd(CharPolyClass(G, {{1, 0}, {0, 0}, {2, 0}, {0, 0}}))) == std::vector<std::pair<int, int>>{{1, 2}, {1, 2}});
    CHECK(shape(omega_brd(CharPolyClass(G, {{0, -1}, {0, 0}}))) == std::vector<std::pair<int, int>>{{2, 1}});
    CHECK(shape(omega_brd(CharPolyClass(G, {{-1, 0}, {3, 0}, {-3, 0}}))) == std::vector<std::pair<int, int>>{{1, 3}});
    CHECK(shape(omega_brd(CharPolyClass(G, {{-2, 0}, {0, 0}, {0, 0}}))) == std::vector<std::pair<int, int>>{{3, 1}});
    CHECK(omega_brd(CharPolyClass(G, {{-2, 0}, {0, 0}, {0, 0}})).dimension() == 3);
}

TEST_CASE("local classification of x^3 - 2") {
    const QuadField G(-4);
    const CharPolyClass c(G, {{-2, 0}, {0, 0}, {0, 0}});
    // 2 is a cube mod 5 (cubing is bijective), not mod 7
    CHECK(shape(omega_brd(c, 5)) == std::vector<std::pair<int, int>>{{1, 1}, {2, 1}});
    CHECK(shape(omega_brd(c, 7)) == std::vector<std::pair<int, int>>{{3, 1}});
    CHECK(omega_brd(c, 7) == localize(c, 7));
    CHECK_THROWS_AS(omega_brd(c, 2), BadPlace);
    CHECK_THROWS_AS(omega_brd(c, 3), BadPlace);  // discriminant -108 vanishes mod 3
}

TEST_CASE("property: localization commutes with classification") {
    const QuadField G(-4);
    int agree = 0;
    for (int t = 0; t < 80; ++t) {
        auto gen = make_stream(5, "brd", t);
        std::uniform_int_distribution<int> u(-3, 3);
        std::vector<OFElem> a(2 + t % 3);
        do {
            for (auto& x : a) x = {u(gen), u(gen)};
        } while (a[0] == OFElem{0, 0});
        const CharPolyClass c(G, a);
        for (i64 p : {3, 5, 7, 13}) {
            std::optional<BasedRootDatumClass> loc, glob;
            try {
                loc = omega_brd(c, p);
                glob = localize(c, p);
            } catch (const BadPlace&) {
                continue;
            }
            CHECK(*loc == *glob);
            ++agree;
        }
    }
    CHECK(agree > 150);
}

TEST_CASE("Newton polygon valuations and records") {
    const QuadField G(-4);
    const auto v = newton_root_valuations(CharPolyClass(G, {{9, 0}, {3, 0}}), 3);
    CHECK(v == std::vector<double>{1, 1});
    auto w = newton_root_valuations(CharPolyClass(G, {{5, 0}, {-6, 0}}), 5);  // (x-1)(x-5)
    std::sort(w.begin(), w.end());
    CHECK(w == std::vector<double>{0, 1});
    const auto j = class_record(CharPolyClass(G, {{2, 0}, {-3, 0}}), 5);
    CHECK(j.at("D_G").get<double>() == doctest::Approx(0.25));
    CHECK(j.at("place").get<int>() == 5);
    CHECK(j.at("almost_unipotent").get<bool>() == false);
}

TEST_CASE("polynomial arithmetic over F") {
    const QuadField G(-4);
    const FPoly x2p1{FElem(1, 0), FElem(0, 0), FElem(1, 0)};
    const FPoly sq = fpoly_mul(G, x2p1, x2p1);
    const auto [q, r] = fpoly_divmod(G, sq, x2p1);
    CHECK(q == x2p1);
    CHECK(r.empty());
    const auto parts = squarefree_decomposition(G, sq);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].second == 2);
    CHECK(fpoly_gcd(G, sq, fpoly_derivative(sq)) == x2p1);
}
