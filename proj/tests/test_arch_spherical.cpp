#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weyllaw/arch_spherical.hpp"
#include "weyllaw/errors.hpp"
#include "weyllaw/rng.hpp"

#include <cmath>

using namespace wl;

namespace {

// GL_2(C): phi_{i(nu,-nu)}(e^{(x,-x)}) = sin(2 nu x) / (nu sinh 2x)
double phi_gl2(double nu, double x) { return std::sin(2 * nu * x) / (nu * std::sinh(2 * x)); }

CVec imag(const Vec& v) {
    CVec l;
    for (double a : v) l.emplace_back(0, a);
    return l;
}

}  // namespace

TEST_CASE("c-function and Plancherel density") {
    CHECK(std::abs(c_function({{1, 0}, {-1, 0}}) - cplx(1)) < 1e-14);  // rho = (1, -1)
    CHECK(std::abs(c_function(CVec{{2, 0}, {0, 0}, {-2, 0}}) - cplx(1)) < 1e-14);
    CHECK(plancherel_density({{0, 0}, {0, 0}}) == 0.0);
    CHECK(plancherel_density(imag({1, -1})) == doctest::Approx(1.0));
    // density is |c|^{-2}
    const CVec l = imag({0.7, 0.1, -0.8});
    CHECK(plancherel_density(l) == doctest::Approx(std::pow(std::abs(c_function(l)), -2)));
    CHECK_THROWS_AS(c_function(imag({0.5, 0.5})), SingularParameter);
}

TEST_CASE("pi is W-anti-invariant") {
    const CVec l{{0.3, 0.2}, {-0.1, 0.4}, {-0.2, -0.6}};
    const CVec s{l[1], l[0], l[2]};
    CHECK(std::abs(pi_poly(s) + pi_poly(l)) < 1e-12);
}

TEST_CASE("GL2 closed form") {
    for (double nu : {0.3, 1.0, 2.5})
        for (double x : {0.05, 0.3, 1.2})
            CHECK(spherical_eval(imag({nu, -nu}), {x, -x}).real() == doctest::Approx(phi_gl2(nu, x)).epsilon(1e-12));
}

TEST_CASE("phi at the identity and degenerate routes") {
    const CVec l = imag({0.7, 0.2, -0.9});
    CHECK(std::abs(spherical_eval(l, {0, 0, 0}) - cplx(1)) < 1e-12);
    CHECK(std::abs(spherical_eval_perturbed(l, {0, 0, 0}) - cplx(1)) < 1e-8);
    const Vec x{0.5, -0.1, -0.4};
    CHECK(std::abs(spherical_eval_perturbed(l, x) - spherical_eval(l, x)) < 1e-8);
    // lambda on a wall: the limit of nearby regular values
    const CVec w = imag({0.4, 0.4, -0.8});
    const CVec w2 = imag({0.4 + 1e-7, 0.4 - 1e-7, -0.8});
    CHECK(std::abs(spherical_eval(w, x) - spherical_eval(w2, x)) < 1e-6);
    CHECK(std::abs(spherical_eval(imag({0, 0}), {0.3, -0.3}) - cplx(0.6 / std::sinh(0.6))) < 1e-9);
}

TEST_CASE("property: |phi| <= 1 on the unitary axis") {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        auto gen = make_stream(11, "bound", i);
        std::uniform_real_distribution<double> U(-3, 3);
        const int n = 2 + i % 2;
        Vec nu(n), x(n);
        double mn = 0, mx = 0;
        for (int k = 0; k < n; ++k) nu[k] = U(gen), x[k] = U(gen) / 3, mn += nu[k] / n, mx += x[k] / n;
        for (int k = 0; k < n; ++k) nu[k] -= mn, x[k] -= mx;
        worst = std::max(worst, std::abs(spherical_eval(imag(nu), x)));
    }
    CHECK(worst <= 1 + 1e-8);
}

TEST_CASE("property: phi is W-invariant in lambda and X") {
    const CVec l = imag({0.9, -0.2, -0.7});
    const Vec x{0.4, 0.1, -0.5};
    const cplx v = spherical_eval(l, x);
    CHECK(std::abs(spherical_eval({l[2], l[0], l[1]}, x) - v) < 1e-12);
    CHECK(std::abs(spherical_eval(l, {x[1], x[2], x[0]}) - v) < 1e-12);
}

TEST_CASE("Iwasawa H_0") {
    Eigen::MatrixXcd g(2, 2);
    g << 2, 0, 0, 0.5;
    const Vec h = iwasawa_H0(g);
    CHECK(h[0] == doctest::Approx(std::log(2.0)));
    CHECK(h[1] == doctest::Approx(-std::log(2.0)));
    std::mt19937_64 gen(5);
    const Eigen::MatrixXcd k = haar_unitary(3, gen);
    for (double v : iwasawa_H0(k)) CHECK(std::abs(v) < 1e-12);
    CHECK((k.adjoint() * k - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-12);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(3, 3);
    const auto d = iwasawa_uak(a);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) A(i, i) = d.a[i];
    CHECK((d.u * A * d.k - a).norm() < 1e-10 * a.norm());
}

TEST_CASE("Monte Carlo oracle") {
    const auto one = spherical_oracle_mc(imag({1, -1}), {0, 0}, 2000, 3);
    CHECK(std::abs(one.mean - cplx(1)) < 1e-12);
    const auto mc = spherical_oracle_mc(imag({1, -1}), {0.3, -0.3}, 100000, 7);
    CHECK(std::abs(mc.mean.real() - phi_gl2(1, 0.3)) < 3 * mc.std_error);
    CHECK(mc.std_error < 1e-2);
    const CVec l = imag({0.8, 0.3, -1.1});
    const Vec x{0.35, -0.05, -0.3};
    const auto m3 = spherical_oracle_mc(l, x, 100000, 9);
    CHECK(std::abs(m3.mean - spherical_eval(l, x)) < 3 * m3.std_error);
}

TEST_CASE("Monte Carlo serial and parallel agree bitwise") {
    const CVec l = imag({0.8, 0.3, -1.1});
    const Vec x{0.35, -0.05, -0.3};
    const auto s = spherical_oracle_mc(l, x, 20000, 4, Exec::Serial);
    const auto p = spherical_oracle_mc(l, x, 20000, 4, Exec::Parallel);
    CHECK(s.mean == p.mean);
    CHECK(s.std_error == p.std_error);
}

TEST_CASE("descent formula") {
    const CVec l = imag({0.7, 0.2, -0.9});
    const Vec x{0.5, -0.1, -0.4};
    const cplx lhs = c_inv_phi(l, x);
    for (const std::vector<int>& s : {std::vector<int>{}, {0}, {1}, {0, 1}})
        CHECK(std::abs(descent_eval(l, x, s) - lhs) <= 1e-8 * std::max(1.0, std::abs(lhs)));
    CHECK(levi_blocks(4, {0, 2}) == std::vector<std::pair<int, int>>{{0, 2}, {2, 4}});
    CHECK(levi_blocks(3, {}) == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
}

TEST_CASE("length mismatch") {
    CHECK_THROWS_AS(spherical_eval(imag({1, -1}), {0, 0, 0}), LengthMismatch);
}
