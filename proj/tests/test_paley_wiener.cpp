#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weyllaw/errors.hpp"
#include "weyllaw/field_arith.hpp"
#include "weyllaw/paley_wiener.hpp"

#include <cmath>

using namespace wl;

namespace {
CVec imag2(double nu) { return {cplx(0, nu), cplx(0, -nu)}; }
}  // namespace

TEST_CASE("bump transform at zero is the integral of the bump") {
    BumpProfile b;
    const double h0 = h_hat(b, {{0, 0}, {0, 0}}).real();
    CHECK(h0 > 0);
    CHECK(h0 == doctest::Approx(0.853407402208).epsilon(1e-9));
    CHECK(bump_value(b, {1.2, -1.2}) == 0.0);
}

TEST_CASE("property: transform decays faster than (1 + |nu|)^-4") {
    BumpProfile b;
    double c4 = 0, last = 0;
    for (double nu : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0}) {
        last = std::abs(h_hat(b, imag2(nu))) * std::pow(1 + nu, 4);
        c4 = std::max(c4, last);
    }
    CHECK(c4 < 500);  // fitted constant is about 346, reached near nu = 32
    CHECK(last < 2);
}

TEST_CASE("inverse transform is supported in the ball") {
    BumpProfile b;
    CHECK(std::abs(test_function_eval(b, {1.5, -1.5})) < 1e-6);
    CHECK(test_function_eval(b, {0, 0}).real() == doctest::Approx(M_PI / 2).epsilon(1e-8));
}

TEST_CASE("spectral quadrature matches the derivative closed form") {
    BumpProfile b;
    const TestFunction f(b);
    for (double x : {0.0, 0.2, 0.55, 0.9})
        CHECK(f.eval({x, -x}).real() == doctest::Approx(f.eval_derivative({x, -x})).epsilon(1e-7));
    CHECK(f.truncation_estimate() < 1e-6);
}

TEST_CASE("Jacobian constant calibration") {
    CHECK(cartan_jacobian_constant(2) == doctest::Approx(cartan_jacobian_closed_form(2)).epsilon(1e-8));
    CHECK(cartan_jacobian_constant(2) == doctest::Approx(4 / M_PI).epsilon(1e-8));
    CHECK(cartan_jacobian_constant(3) == doctest::Approx(cartan_jacobian_closed_form(3)).epsilon(2e-5));
    CHECK(fourier_inversion_constant(2) == doctest::Approx(2 / (2 * M_PI)));
}

TEST_CASE("round trip H(B(h)) = h^ for n = 2") {
    BumpProfile b;
    const TestFunction f(b);
    std::vector<CVec> ls;
    for (double nu : {0.25, 1.0, 2.5, 5.0}) ls.push_back(imag2(nu));
    const auto H = spherical_transform([&f](const Vec& x) { return f.eval(x); }, 2, ls, b.R, TransformGrid{8});
    for (size_t k = 0; k < ls.size(); ++k) CHECK(std::abs(H[k] - h_hat(b, ls[k])) < 1e-4);
    CHECK(std::abs(spherical_transform([](const Vec&) { return cplx(0); }, 2, imag2(1), 1.0)) == 0.0);
}

TEST_CASE("main term scaling") {
    DomainOmega om;
    CHECK(lambda0(100, om, 2, -4) / lambda0(50, om, 2, -4) == doctest::Approx(8).epsilon(0.01));
    const double s2 = lambda0_slope({50, 60, 70, 80, 90, 100}, om, 2, -4);
    CHECK(s2 >= 2.98);
    CHECK(s2 <= 3.02);
    const double s3 = lambda0_slope({50, 100}, om, 3, -4);
    CHECK(s3 >= 7.9);
    CHECK(s3 <= 8.1);
    DomainOmega empty;
    empty.kind = DomainOmega::Kind::Empty;
    CHECK(lambda0(50, empty, 2, -4) == 0.0);
    CHECK(lambda0(60, om, 2, -4) > lambda0(50, om, 2, -4));
    CHECK(lambda0(50, om, 2, -4) == doctest::Approx(34865.1307066).epsilon(1e-6));
}

TEST_CASE("box domain") {
    DomainOmega box;
    box.kind = DomainOmega::Kind::Box;
    const double s = lambda0_slope({50, 100}, box, 2, -4);
    CHECK(s == doctest::Approx(3).epsilon(0.01));
    CHECK(box.contains({0.9, -0.9}));
    CHECK_FALSE(box.contains({1.1, -1.1}));
}
