#include "weyllaw/root_data.hpp"

#include "weyllaw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace wl {

RootSystem::RootSystem(int n_) : n(n_) {
    if (n < 1) throw PreconditionViolated("rank parameter n must be >= 1");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) positive_roots.emplace_back(i, j);
}

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw PreconditionViolated("partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw PreconditionViolated("partition parts must be weakly decreasing");
    }
}

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

template <class T>
static void check_len(const std::vector<T>& x, const std::vector<T>& y) {
    if (x.size() != y.size()) throw LengthMismatch("vectors of different length");
}

double inner(const Vec& x, const Vec& y) {
    check_len(x, y);
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return 2.0 * static_cast<double>(x.size()) * s;
}

std::complex<double> inner(const CVec& x, const CVec& y) {
    check_len(x, y);
    std::complex<double> s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return 2.0 * static_cast<double>(x.size()) * s;
}

Rat inner(const std::vector<Rat>& x, const std::vector<Rat>& y) {
    check_len(x, y);
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return Rat(2 * static_cast<long long>(x.size())) * s;
}

std::complex<double> pairing(const CVec& lambda, const Vec& x) {
    if (lambda.size() != x.size()) throw LengthMismatch("pairing of different lengths");
    std::complex<double> s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += lambda[i] * x[i];
    return s;
}

double weyl_norm(const Vec& xi) {
    double m = 0;
    for (double v : xi) m = std::max(m, std::abs(v));
    return m;
}

int weyl_norm(const Cochar& xi) {
    int m = 0;
    for (int v : xi) m = std::max(m, std::abs(v));
    return m;
}

bool is_dominant(const Cochar& xi) {
    return std::is_sorted(xi.begin(), xi.end(), std::greater<int>());
}

Cochar dominant_rep(Cochar xi) {
    std::sort(xi.begin(), xi.end(), std::greater<int>());
    return xi;
}

// zeta - xi must have nonnegative total and centered partial sums
// S_k - (k/n) S >= 0, checked in integers as n S_k >= k S.
bool dominance_leq(const Cochar& xi, const Cochar& zeta) {
    check_len(xi, zeta);
    const long long n = static_cast<long long>(xi.size());
    long long total = 0;
    for (size_t i = 0; i < xi.size(); ++i) total += zeta[i] - xi[i];
    if (total < 0) return false;
    long long partial = 0;
    for (long long k = 1; k < n; ++k) {
        partial += zeta[k - 1] - xi[k - 1];
        if (n * partial < k * total) return false;
    }
    return true;
}

std::vector<Cochar> weyl_orbit(const Cochar& xi) {
    Cochar v = xi;
    std::sort(v.begin(), v.end());
    std::vector<Cochar> out;
    do {
        out.push_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

Partition transpose(const Partition& tau) {
    std::vector<int> t;
    if (tau.parts.empty()) return Partition(t);
    for (int c = 1; c <= tau.parts.front(); ++c) {
        int cnt = 0;
        for (int p : tau.parts) cnt += (p >= c) ? 1 : 0;
        t.push_back(cnt);
    }
    return Partition(t);
}

std::vector<int> richardson_levi(const Partition& tau) { return transpose(tau).parts; }

std::vector<Rat> rho(int n) {
    std::vector<Rat> r;
    for (int i = 0; i < n; ++i) r.emplace_back(n - 1 - 2 * i, 2);
    return r;
}

Vec rho_sum(int n) {
    Vec r;
    for (int i = 0; i < n; ++i) r.push_back(static_cast<double>(n - 1 - 2 * i));
    return r;
}

const std::vector<SignedPerm>& permutations(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<SignedPerm>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<SignedPerm> out;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inv += p[i] > p[j];
        out.push_back({p, inv % 2 ? -1 : 1});
    } while (std::next_permutation(p.begin(), p.end()));
    return cache.emplace(n, std::move(out)).first->second;
}

}  // namespace wl
