#include "mfl/fuzzy_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mfl/errors.hpp"

namespace mfl {

Universe::Universe(double lo, double hi, std::size_t samples) : lo_(lo), hi_(hi), samples_(samples) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        std::ostringstream os;
        os << "universe requires finite lo < hi, got [" << lo << ", " << hi << "]";
        throw ConfigError(os.str());
    }
    if (samples < 2) {
        throw ConfigError("universe requires at least 2 samples, got " + std::to_string(samples));
    }
}

double Universe::x(std::size_t i) const {
    if (i + 1 >= samples_) {
        return hi_;
    }
    // Scale before dividing so that grid points such as i/100 on [0,10] land on the nearest double.
    return lo_ + (hi_ - lo_) * static_cast<double>(i) / static_cast<double>(samples_ - 1);
}

double Universe::clamp(double x) const { return std::clamp(x, lo_, hi_); }

DiscretizedFuzzySet::DiscretizedFuzzySet(const Universe& universe)
    : universe_(universe), degrees_(universe.samples(), 0.0) {}

DiscretizedFuzzySet::DiscretizedFuzzySet(const Universe& universe, std::vector<double> degrees)
    : universe_(universe), degrees_(std::move(degrees)) {
    if (degrees_.size() != universe_.samples()) {
        throw DimensionError("fuzzy set has " + std::to_string(degrees_.size()) + " degrees but its universe has " +
                             std::to_string(universe_.samples()) + " samples");
    }
    for (double d : degrees_) {
        if (!(d >= 0.0 && d <= 1.0)) {
            throw RangeError("membership degree outside [0,1]: " + std::to_string(d));
        }
    }
}

DiscretizedFuzzySet DiscretizedFuzzySet::constant(const Universe& universe, double degree) {
    return DiscretizedFuzzySet(universe, std::vector<double>(universe.samples(), degree));
}

double DiscretizedFuzzySet::height() const {
    return degrees_.empty() ? 0.0 : *std::max_element(degrees_.begin(), degrees_.end());
}

DiscretizedFuzzySet discretize(const MembershipFunction& mf, const Universe& universe) {
    std::vector<double> degrees(universe.samples());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        degrees[i] = eval_mf(mf, universe.x(i));
    }
    return DiscretizedFuzzySet(universe, std::move(degrees));
}

namespace {

template <typename Op>
DiscretizedFuzzySet pointwise(const DiscretizedFuzzySet& a, const DiscretizedFuzzySet& b, Op op) {
    if (!(a.universe() == b.universe())) {
        throw DimensionError("fuzzy set operands are defined over different universes");
    }
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = op(a[i], b[i]);
    }
    return DiscretizedFuzzySet(a.universe(), std::move(out));
}

}  // namespace

DiscretizedFuzzySet fuzzy_union(const DiscretizedFuzzySet& a, const DiscretizedFuzzySet& b) {
    return pointwise(a, b, [](double x, double y) { return std::max(x, y); });
}

DiscretizedFuzzySet fuzzy_intersection(const DiscretizedFuzzySet& a, const DiscretizedFuzzySet& b) {
    return pointwise(a, b, [](double x, double y) { return std::min(x, y); });
}

}  // namespace mfl
