#pragma once

// Imaginary quadratic fields F = Q(sqrt D), D < 0 fundamental.
// O_F = Z[w] with w^2 = t w + c0, where t = D mod 4 and
// w = (1 + sqrt D)/2 (D = 1 mod 4) or w = sqrt(D/4) (D = 0 mod 4).

#include <complex>
#include <cstdint>
#include <vector>

namespace wl {

using i64 = std::int64_t;

struct QuadField {
    i64 D;
    i64 t;   // trace of w
    i64 c0;  // w^2 = t w + c0
    explicit QuadField(i64 D);
    std::complex<double> omega() const;
};

bool is_fundamental_discriminant(i64 D);

struct OFElem {
    i64 a = 0, b = 0;  // a + b w
    friend bool operator==(const OFElem&, const OFElem&) = default;
};

OFElem of_add(const OFElem& x, const OFElem& y);
OFElem of_sub(const OFElem& x, const OFElem& y);
OFElem of_mul(const QuadField& F, const OFElem& x, const OFElem& y);
OFElem of_conj(const QuadField& F, const OFElem& x);
i64 of_norm(const QuadField& F, const OFElem& x);
std::complex<double> of_embed(const QuadField& F, const OFElem& x);

// Ideal a Z + (b + c w) Z with c | a, c | b, 0 <= b < a.
struct IdealRep {
    i64 a = 1, b = 0, c = 1;
    i64 norm() const { return a * c; }
    friend bool operator==(const IdealRep&, const IdealRep&) = default;
};

IdealRep ideal_from_generators(const QuadField& F, const std::vector<OFElem>& gens);
IdealRep ideal_principal(const QuadField& F, const OFElem& g);
IdealRep ideal_mul(const QuadField& F, const IdealRep& x, const IdealRep& y);
IdealRep ideal_pow(const QuadField& F, const IdealRep& x, int k);
bool ideal_contains(const IdealRep& I, const OFElem& z);
bool ideal_contains(const IdealRep& I, const IdealRep& J);

// Binary quadratic form a x^2 + b x y + c y^2 of discriminant b^2 - 4ac = D.
struct QuadForm {
    i64 a, b, c;
    friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

QuadForm reduce(QuadForm f);
QuadForm ideal_to_form(const QuadField& F, const IdealRep& I);
IdealRep form_to_ideal(const QuadField& F, const QuadForm& f);
QuadForm compose(const QuadField& F, const QuadForm& f, const QuadForm& g);
bool is_principal(const QuadField& F, const IdealRep& I);

std::vector<QuadForm> class_group(const QuadField& F);
int class_number(const QuadField& F);
int unit_count(const QuadField& F);

// Kronecker symbol (D | m), m >= 1.
int kronecker(i64 D, i64 m);

// Prime ideals above p with their residue degree.
struct PrimeIdeal {
    IdealRep ideal;
    i64 p;
    int f;  // residue degree
};
std::vector<PrimeIdeal> primes_above(const QuadField& F, i64 p);

struct IdealFactor {
    PrimeIdeal prime;
    int e;
};
std::vector<IdealFactor> factor_ideal(const QuadField& F, const IdealRep& I);

int delta_n(const IdealRep& I, int n, const QuadField& F);

struct ZetaData {
    double residue;
    std::vector<double> values;  // values[k] = zeta_F(k) for 2 <= k <= kmax
};

double dirichlet_l(const QuadField& F, int k, int tail_terms = 12);
ZetaData zeta_data(const QuadField& F, int kmax);
double vol_GFGA1(int n, const QuadField& F);

}  // namespace wl
