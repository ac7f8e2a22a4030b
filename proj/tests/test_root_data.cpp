#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weyllaw/root_data.hpp"

#include <algorithm>
#include <random>

using namespace wl;

TEST_CASE("inner product is 2n times the dot product") {
    CHECK(inner(Vec{0.5, -0.5}, Vec{0.5, -0.5}) == doctest::Approx(2.0));
    CHECK(inner(Vec{1, 0, -1}, Vec{1, 0, -1}) == doctest::Approx(12.0));
    CHECK(inner(Vec{1, 0, -1}, Vec{0, 0, 0}) == 0.0);
    std::vector<Rat> r = rho(3);
    CHECK(inner(r, r) == Rat(12));
}

TEST_CASE("weyl norm is the sup norm") {
    CHECK(weyl_norm(Vec{3, -1, 2}) == 3.0);
    CHECK(weyl_norm(Vec{0, 0, 0}) == 0.0);
    CHECK(weyl_norm(Cochar{-4, 1}) == 4);
}

TEST_CASE("dominance order") {
    CHECK(dominance_leq({1, 1, 0}, {2, 0, 0}));
    CHECK(dominance_leq({2, 0}, {2, 0}));
    CHECK_FALSE(dominance_leq({2, 0}, {1, 1}));
    CHECK(dominance_leq({1, 1}, {2, 0}));
    CHECK_FALSE(dominance_leq({1, 0}, {0, 0}));
}

TEST_CASE("dominance agrees with brute-force coroot combinations") {
    // zeta - xi must be a nonnegative integer combination of simple coroots
    // once both share a determinant.
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= a; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= c; ++d) {
                    const Cochar x{a, b}, z{c, d};
                    const bool brute = (a + b == c + d) && (c - a >= 0);
                    if (a + b == c + d) CHECK(dominance_leq(x, z) == brute);
                }
}

TEST_CASE("weyl orbits") {
    CHECK(weyl_orbit({1, 0}).size() == 2);
    CHECK(weyl_orbit({1, 1, 1}).size() == 1);
    CHECK(weyl_orbit({2, 1, 0}).size() == 6);
    CHECK(weyl_orbit({2, 2, 0}).size() == 3);
    const auto o = weyl_orbit({0, 2, 1});
    CHECK(std::count_if(o.begin(), o.end(), [](const Cochar& c) { return is_dominant(c); }) == 1);
    CHECK(dominant_rep({0, 2, 1}) == Cochar{2, 1, 0});
}

TEST_CASE("richardson levi is the transpose partition") {
    CHECK(richardson_levi(Partition({4})) == std::vector<int>{1, 1, 1, 1});
    CHECK(richardson_levi(Partition({1, 1, 1})) == std::vector<int>{3});
    CHECK(richardson_levi(Partition({2, 1})) == std::vector<int>{2, 1});
    CHECK(richardson_levi(Partition({3, 1})) == std::vector<int>{2, 1, 1});
    CHECK(transpose(transpose(Partition({4, 2, 2, 1}))).parts == std::vector<int>{4, 2, 2, 1});
}

TEST_CASE("rho and rho_sum") {
    const auto r = rho(3);
    CHECK(r[0] == Rat(1));
    CHECK(r[1] == Rat(0));
    CHECK(r[2] == Rat(-1));
    CHECK(rho(2)[0] == Rat(1, 2));
    CHECK(rho_sum(4) == Vec{3, 1, -1, -3});
}

TEST_CASE("permutations carry signs") {
    const auto& ps = permutations(3);
    CHECK(ps.size() == 6);
    int s = 0;
    for (const auto& p : ps) s += p.sign;
    CHECK(s == 0);
    CHECK(ps.front().sign == 1);
    CHECK(RootSystem(4).num_positive() == 6);
}

TEST_CASE("property: inner is symmetric and bilinear") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> N;
    for (int t = 0; t < 100; ++t) {
        Vec x(3), y(3), z(3);
        for (int i = 0; i < 3; ++i) x[i] = N(gen), y[i] = N(gen), z[i] = N(gen);
        CHECK(inner(x, y) == doctest::Approx(inner(y, x)));
        Vec s(3);
        for (int i = 0; i < 3; ++i) s[i] = 2 * x[i] + z[i];
        CHECK(inner(s, y) == doctest::Approx(2 * inner(x, y) + inner(z, y)));
    }
}
