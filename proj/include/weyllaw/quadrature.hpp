#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <vector>

namespace wl {

struct Node {
    double x;
    double w;
};

// Composite Gauss-Legendre rule with `panels` equal panels of 20 points.
inline std::vector<Node> gauss_panels(double a, double b, int panels) {
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    std::vector<Node> out;
    out.reserve(static_cast<size_t>(panels) * 20);
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double c = a + (k + 0.5) * h, r = 0.5 * h;
        for (size_t i = 0; i < xs.size(); ++i) {
            out.push_back({c + r * xs[i], r * ws[i]});
            if (xs[i] != 0.0) out.push_back({c - r * xs[i], r * ws[i]});
        }
    }
    return out;
}

// Neumaier compensated accumulator.
template <class T>
struct CompensatedSum {
    T sum{}, comp{};
    void add(T v) {
        T t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    T value() const { return sum + comp; }
};

}  // namespace wl
