#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weyllaw/errors.hpp"
#include "weyllaw/field_arith.hpp"

#include <gsl/gsl_sf_zeta.h>

#include <cmath>

using namespace wl;

namespace {

// L(k, chi_D) through Hurwitz zeta values: |D|^{-k} sum_a chi(a) zeta(k, a/|D|)
double l_oracle(i64 D, int k) {
    const i64 m = -D;
    double s = 0;
    for (i64 a = 1; a < m; ++a) {
        const int c = kronecker(D, a);
        if (c) s += c * gsl_sf_hzeta(k, static_cast<double>(a) / m);
    }
    return s * std::pow(static_cast<double>(m), -k);
}

}  // namespace

TEST_CASE("fundamental discriminants") {
    CHECK(is_fundamental_discriminant(-4));
    CHECK(is_fundamental_discriminant(-3));
    CHECK(is_fundamental_discriminant(-7));
    CHECK(is_fundamental_discriminant(-8));
    CHECK_FALSE(is_fundamental_discriminant(-12));
    CHECK_FALSE(is_fundamental_discriminant(-16));
    CHECK_FALSE(is_fundamental_discriminant(-5));
}

TEST_CASE("units and class numbers") {
    CHECK(unit_count(QuadField(-4)) == 4);
    CHECK(unit_count(QuadField(-3)) == 6);
    CHECK(unit_count(QuadField(-7)) == 2);
    CHECK(class_number(QuadField(-4)) == 1);
    CHECK(class_number(QuadField(-23)) == 3);
    CHECK(class_number(QuadField(-20)) == 2);
    CHECK(class_number(QuadField(-47)) == 5);
    CHECK(class_number(QuadField(-71)) == 7);
}

TEST_CASE("ring of integers arithmetic") {
    const QuadField F(-4);
    const OFElem i{0, 1};
    CHECK(of_mul(F, i, i) == OFElem{-1, 0});
    CHECK(of_norm(F, {2, 1}) == 5);
    const QuadField G(-3);
    CHECK(of_norm(G, {0, 1}) == 1);
    CHECK(of_mul(G, of_conj(G, {1, 1}), {1, 1}) == OFElem{of_norm(G, {1, 1}), 0});
}

TEST_CASE("ideals") {
    const QuadField F(-4);
    const IdealRep three = ideal_principal(F, {3, 0});
    CHECK(three.norm() == 9);
    CHECK(primes_above(F, 3).size() == 1);
    CHECK(primes_above(F, 5).size() == 2);
    CHECK(primes_above(F, 2).size() == 1);
    const IdealRep a = ideal_principal(F, {2, 1});
    CHECK(ideal_mul(F, a, a) == ideal_principal(F, of_mul(F, {2, 1}, {2, 1})));
    CHECK(ideal_contains(a, OFElem{5, 0}));
    CHECK(ideal_contains(a, ideal_mul(F, a, three)));
    CHECK_FALSE(ideal_contains(ideal_mul(F, a, three), a));
    CHECK(ideal_from_generators(F, {{2, 0}, {1, 1}}) == ideal_principal(F, {1, 1}));
    CHECK(ideal_principal(F, {0, -2}) == ideal_principal(F, {2, 0}));  // associates give one ideal
    CHECK(ideal_principal(F, {-1, -1}) == ideal_principal(F, {1, 1}));
}

TEST_CASE("delta_n") {
    const QuadField F(-4);
    CHECK(delta_n(IdealRep{1, 0, 1}, 2, F) == 1);
    CHECK(delta_n(ideal_principal(F, {3, 0}), 2, F) == 0);
    CHECK(delta_n(ideal_pow(F, ideal_principal(F, {2, 1}), 2), 2, F) == 1);
    CHECK(delta_n(ideal_principal(F, {2, 1}), 2, F) == 0);
    CHECK(delta_n(ideal_principal(F, {2, 0}), 2, F) == 1);  // (2) = (1+i)^2
    // class group of order 3: a non-principal prime cubed is principal but not a cube of a principal ideal
    const QuadField H(-23);
    const auto P = primes_above(H, 2).front().ideal;
    CHECK_FALSE(is_principal(H, P));
    CHECK(is_principal(H, ideal_pow(H, P, 3)));
    CHECK(delta_n(ideal_pow(H, P, 3), 3, H) == 0);
    CHECK(delta_n(ideal_pow(H, P, 6), 3, H) == 0);  // P^2 is not principal
    CHECK(delta_n(ideal_pow(H, P, 9), 3, H) == 1);
}

TEST_CASE("forms compose like ideals") {
    const QuadField H(-23);
    const auto cg = class_group(H);
    CHECK(cg.size() == 3);
    for (const auto& f : cg)
        for (const auto& g : cg) {
            const IdealRep I = ideal_mul(H, form_to_ideal(H, f), form_to_ideal(H, g));
            CHECK(reduce(ideal_to_form(H, I)) == reduce(compose(H, f, g)));
        }
}

TEST_CASE("L-values against the Hurwitz zeta oracle") {
    for (i64 D : {-3, -4, -7, -8, -23})
        for (int k = 2; k <= 6; ++k)
            CHECK(dirichlet_l(QuadField(D), k) == doctest::Approx(l_oracle(D, k)).epsilon(1e-11));
    CHECK(dirichlet_l(QuadField(-4), 2) == doctest::Approx(0.915965594177219).epsilon(1e-13));  // Catalan
}

TEST_CASE("Dedekind zeta data and volume") {
    const QuadField F(-4);
    const auto z = zeta_data(F, 6);
    CHECK(z.residue == doctest::Approx(M_PI / 4).epsilon(1e-14));
    CHECK(z.values[2] == doctest::Approx(M_PI * M_PI / 6 * 0.915965594177219).epsilon(1e-12));
    CHECK(z.values[6] > 1);
    CHECK(z.values[6] < 1.2);
    CHECK(vol_GFGA1(1, F) == doctest::Approx(z.residue));
    CHECK(vol_GFGA1(2, F) == doctest::Approx(2 * (M_PI / 4) * z.values[2]).epsilon(1e-12));
    const QuadField G(-23);
    CHECK(zeta_data(G, 2).residue == doctest::Approx(2 * M_PI * 3 / (2 * std::sqrt(23.0))).epsilon(1e-14));
    CHECK(vol_GFGA1(3, G) > 0);
}

TEST_CASE("Kronecker symbol") {
    CHECK(kronecker(-4, 3) == -1);
    CHECK(kronecker(-4, 5) == 1);
    CHECK(kronecker(-4, 2) == 0);
    CHECK(kronecker(-23, 2) == 1);
    CHECK(kronecker(-7, 11) == 1);
}
