#pragma once

// Reference computations written independently of the library, used to check it.

#include <algorithm>
#include <vector>

namespace oracle {

struct Clip {
    double a, m, b;  // triangle feet and peak; a == m or m == b gives a shoulder
    double height;
};

inline double triangle(double a, double m, double b, double x) {
    if (x < a || x > b) return 0.0;
    if (x == m) return 1.0;
    if (x < m) return (x - a) / (m - a);
    return (b - x) / (b - m);
}

/// Centre of area of max_k min(h_k, tri_k(x)) on [lo, hi] with a composite midpoint rule.
inline double centroid(const std::vector<Clip>& clips, double lo, double hi, int samples = 100001) {
    double num = 0.0, den = 0.0;
    const double step = (hi - lo) / samples;
    for (int i = 0; i < samples; ++i) {
        double x = lo + (i + 0.5) * step;
        double mu = 0.0;
        for (const auto& c : clips) mu = std::max(mu, std::min(c.height, triangle(c.a, c.m, c.b, x)));
        num += x * mu;
        den += mu;
    }
    return num / den;
}

}  // namespace oracle
