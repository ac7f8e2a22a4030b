#pragma once

#include <boost/rational.hpp>

#include <complex>
#include <utility>
#include <vector>

namespace wl {

using Cochar = std::vector<int>;          // integer n-vector (cocharacter)
using Vec = std::vector<double>;          // real n-vector
using CVec = std::vector<std::complex<double>>;
using Rat = boost::rational<long long>;

// Positive roots of A_{n-1}: index pairs (i, j), i < j, for e_i - e_j.
struct RootSystem {
    int n = 0;
    std::vector<std::pair<int, int>> positive_roots;
    explicit RootSystem(int n);
    int num_positive() const { return static_cast<int>(positive_roots.size()); }
    // alpha_k = e_k - e_{k+1}, k = 0..n-2
    std::pair<int, int> simple_root(int k) const { return {k, k + 1}; }
};

struct Partition {
    std::vector<int> parts;  // weakly decreasing, positive
    explicit Partition(std::vector<int> p);
    int size() const;
};

// <X, Y> = 2n * sum X_i Y_i
double inner(const Vec& x, const Vec& y);
std::complex<double> inner(const CVec& x, const CVec& y);
Rat inner(const std::vector<Rat>& x, const std::vector<Rat>& y);

// sum lambda_i X_i, the pairing of a spectral parameter with X in a.
std::complex<double> pairing(const CVec& lambda, const Vec& x);

double weyl_norm(const Vec& xi);
int weyl_norm(const Cochar& xi);

bool is_dominant(const Cochar& xi);
Cochar dominant_rep(Cochar xi);
bool dominance_leq(const Cochar& xi, const Cochar& zeta);

std::vector<Cochar> weyl_orbit(const Cochar& xi);
std::vector<int> richardson_levi(const Partition& tau);
Partition transpose(const Partition& tau);

// Half-sum of positive roots ((n-1)/2, (n-3)/2, ..., -(n-1)/2), exact.
std::vector<Rat> rho(int n);
// Sum of positive roots (n-1, n-3, ..., 1-n).
Vec rho_sum(int n);

// All permutations of {0..n-1} (lexicographic) with their signs.
struct SignedPerm {
    std::vector<int> perm;
    int sign;
};
const std::vector<SignedPerm>& permutations(int n);

}  // namespace wl
