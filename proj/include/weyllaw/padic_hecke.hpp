#pragma once

// Unramified Hecke algebra of GL_n(Q_p) with vol(K) = 1, K = GL_n(Z_p).
//
// Double cosets K p^xi K are indexed by dominant xi. Coset representatives
// are upper-triangular Hermite forms with diagonal p^{a_i}:
//   CosetSide::Left  enumerates K\KxK, entry (i, j) reduced mod p^{a_j};
//   CosetSide::Right enumerates KxK/K, entry (i, j) reduced mod p^{a_i}.
// The Satake transform reads diagonals of the right cosets b K, and its
// coefficient at mu is N_mu p^{-s(mu)/2} with s(mu) = sum_{i<j} (mu_i - mu_j).

#include "weyllaw/exec.hpp"
#include "weyllaw/root_data.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <vector>

namespace wl {

using i64 = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct PrimeContext {
    int p = 2;
    int m = 1;  // residue truncation level
    explicit PrimeContext(int p, int m = 1);
};

bool is_prime(i64 p);

constexpr int kInfiniteValuation = 1 << 29;
int valuation(i64 x, int p);
int valuation(const BigRat& x, int p);

// Invertible matrix with exact rational entries, row-major.
struct PAdicMatrix {
    int n = 0;
    std::vector<BigRat> a;
    explicit PAdicMatrix(int n = 0) : n(n), a(static_cast<size_t>(n) * n, BigRat(0)) {}
    BigRat& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const BigRat& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    static PAdicMatrix identity(int n);
    static PAdicMatrix diag_power(int p, const Cochar& xi);  // p^xi
    PAdicMatrix operator*(const PAdicMatrix& o) const;
    PAdicMatrix inverse() const;  // SingularMatrix if not invertible
    BigRat det() const;
};

// Integer matrix used on the enumeration paths.
struct IntMat {
    int n = 0;
    std::vector<i64> a;
    explicit IntMat(int n = 0) : n(n), a(static_cast<size_t>(n) * n, 0) {}
    i64& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    i64 operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    IntMat operator*(const IntMat& o) const;
    PAdicMatrix to_padic() const;
    friend bool operator==(const IntMat&, const IntMat&) = default;
};

// Dominant xi with A in K p^xi K, by minimal-valuation pivoting.
Cochar cartan_decompose(const PAdicMatrix& A, int p);
// Same via determinantal divisors of an integer matrix (n <= 4).
Cochar cartan_type(const IntMat& A, int p);

enum class CosetSide { Left, Right };

std::vector<IntMat> coset_reps(const Cochar& xi, const PrimeContext& ctx,
                               CosetSide side = CosetSide::Left, Exec exec = Exec::Parallel);

// Number of candidate Hermite forms the enumeration would visit.
double enumeration_size(const Cochar& xi, int p);

i64 degree(const Cochar& xi, const PrimeContext& ctx);
// q^{<2 rho, xi>} W(1/q) / W_xi(1/q) with W the Poincare polynomial of S_n.
i64 degree_closed_form(const Cochar& xi, int p);

struct HeckeElement {
    std::map<Cochar, Rat> coeffs;  // dominant keys, nonzero values
    static HeckeElement tau(const Cochar& xi);
    void add(const Cochar& xi, const Rat& c);
    HeckeElement operator+(const HeckeElement& o) const;
    friend bool operator==(const HeckeElement&, const HeckeElement&) = default;
};

HeckeElement convolve(const Cochar& xi, const Cochar& zeta, const PrimeContext& ctx,
                      Exec exec = Exec::Parallel);
HeckeElement convolve(const HeckeElement& f, const HeckeElement& g, const PrimeContext& ctx);

// coeff * p^{half_exp / 2}
struct HalfPow {
    Rat coeff = 0;
    int half_exp = 0;
    double value(int p) const;
    friend bool operator==(const HalfPow&, const HalfPow&) = default;
};

int modulus_exponent(const Cochar& mu);  // s(mu)

struct SatakePoly {
    int p = 2;
    std::map<Cochar, Rat> N;  // coefficient at mu is N_mu p^{-s(mu)/2}
    HalfPow coefficient(const Cochar& mu) const;
    SatakePoly operator*(const SatakePoly& o) const;
    SatakePoly operator+(const SatakePoly& o) const;
    bool is_w_invariant() const;
    std::complex<double> eval(const std::vector<std::complex<double>>& z) const;
    friend bool operator==(const SatakePoly& a, const SatakePoly& b) { return a.p == b.p && a.N == b.N; }
};

SatakePoly satake(const Cochar& xi, const PrimeContext& ctx);
SatakePoly satake(const HeckeElement& f, const PrimeContext& ctx);

// c_P(xi, zeta) for the standard parabolic with the given Levi block sizes.
HalfPow constant_term_coeff(const Cochar& xi, const Cochar& zeta, const std::vector<int>& blocks,
                            const PrimeContext& ctx);
// All nonzero c_P(xi, zeta), zeta Levi-dominant with |zeta|_W <= |xi|_W + 1.
std::map<Cochar, HalfPow> constant_term(const Cochar& xi, const std::vector<int>& blocks,
                                        const PrimeContext& ctx);

// Ramified measure scale N(D)^{-(n^2+n)/2}; exposed, never applied here.
double ramified_measure_scale(double different_norm, int n);

}  // namespace wl
