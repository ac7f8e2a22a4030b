#pragma once

#include "weyllaw/exec.hpp"
#include "weyllaw/field_arith.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace wl {

using FRat = boost::multiprecision::cpp_rational;

// Element a + b w of F with rational coordinates.
struct FElem {
    FRat a = 0, b = 0;
    FElem() = default;
    FElem(FRat a_, FRat b_) : a(std::move(a_)), b(std::move(b_)) {}
    explicit FElem(const OFElem& x) : a(x.a), b(x.b) {}
    bool is_zero() const { return a == 0 && b == 0; }
    friend bool operator==(const FElem&, const FElem&) = default;
};

// Polynomial over F, ascending coefficients, no trailing zeros.
using FPoly = std::vector<FElem>;

FPoly fpoly_mul(const QuadField& F, const FPoly& x, const FPoly& y);
// quotient and remainder; SingularParameter on division by zero
std::pair<FPoly, FPoly> fpoly_divmod(const QuadField& F, const FPoly& x, const FPoly& y);
FPoly fpoly_gcd(const QuadField& F, FPoly x, FPoly y);  // monic
FPoly fpoly_derivative(const FPoly& x);

// chi = prod_i s_i^i with s_i monic squarefree, pairwise coprime (Yun).
std::vector<std::pair<FPoly, int>> squarefree_decomposition(const QuadField& F, const FPoly& chi);

class CharPolyClass {
public:
    // coeffs a_0..a_{n-1} of x^n + a_{n-1} x^{n-1} + ... + a_0
    CharPolyClass(const QuadField& F, std::vector<OFElem> coeffs);

    const QuadField& field() const { return F_; }
    int degree() const { return static_cast<int>(a_.size()); }
    const std::vector<OFElem>& coeffs() const { return a_; }
    FPoly poly() const;
    // roots with multiplicity, grouped by squarefree part
    const std::vector<std::complex<double>>& roots() const { return roots_; }
    // root i and j are equal exactly when their group ids agree
    const std::vector<int>& root_group() const { return group_; }
    const std::vector<std::pair<FPoly, int>>& squarefree_parts() const { return sqf_; }

private:
    QuadField F_;
    std::vector<OFElem> a_;
    std::vector<std::pair<FPoly, int>> sqf_;
    std::vector<std::complex<double>> roots_;
    std::vector<int> group_;
};

struct ClassEnumeration {
    std::vector<CharPolyClass> classes;
    std::size_t candidates_per_coeff = 0;
    std::size_t excluded_singular = 0;  // a_0 = 0
};

// Lattice points of O_F with norm at most `bound`, ordered by (norm, a, b).
std::vector<OFElem> elements_of_norm_le(const QuadField& F, double bound);

// Monic degree-n polynomials with N(a_i) <= C_R * pi_kappa for all i.
ClassEnumeration enumerate_classes(int n, const QuadField& F, double pi_kappa, double c_r,
                                   bool require_invertible = true, Exec exec = Exec::Parallel);

// |.|_C = |.|^2 is used throughout.
double weyl_discriminant(const CharPolyClass& chi);
// Second route for n = 2, exact: N(a_1^2 - 4 a_0) / N(a_0).
double weyl_discriminant_n2(const CharPolyClass& chi);
double delta_minus(const CharPolyClass& chi);
bool is_almost_unipotent(const CharPolyClass& chi);

struct SpacingReport {
    double lhs = 0, rhs = 0;
    double margin() const { return lhs - rhs; }
};
SpacingReport spacing_lower_bound_check(const CharPolyClass& chi);

// p-adic root valuations at the first prime above p, from the Newton polygon.
std::vector<double> newton_root_valuations(const CharPolyClass& chi, i64 p);

struct RootDatumFactor {
    int degree = 1;
    int multiplicity = 1;
    friend auto operator<=>(const RootDatumFactor&, const RootDatumFactor&) = default;
};

struct BasedRootDatumClass {
    std::vector<RootDatumFactor> factors;  // sorted
    int dimension() const;
    friend bool operator==(const BasedRootDatumClass&, const BasedRootDatumClass&) = default;
};

// Global: factorization over F (n <= 4). Local: factorization over F_p for the
// first prime above p, read off from distinct-degree factorization mod p.
BasedRootDatumClass omega_brd(const CharPolyClass& chi, std::optional<i64> p = std::nullopt);
// Irreducible monic factors over F with multiplicity.
std::vector<std::pair<FPoly, int>> factor_over_F(const CharPolyClass& chi);
// Localize a global answer: each global factor split by its type mod p.
BasedRootDatumClass localize(const CharPolyClass& chi, i64 p);

nlohmann::json class_record(const CharPolyClass& chi, std::optional<i64> p = std::nullopt);

}  // namespace wl
