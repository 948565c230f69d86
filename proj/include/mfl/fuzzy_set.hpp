#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfl/membership.hpp"

namespace mfl {

inline constexpr double kDefaultLo = 0.0;
inline constexpr double kDefaultHi = 10.0;
inline constexpr std::size_t kDefaultSamples = 1001;

/// Closed interval [lo, hi] sampled at `samples` evenly spaced points, endpoints included.
class Universe {
public:
    Universe(double lo = kDefaultLo, double hi = kDefaultHi, std::size_t samples = kDefaultSamples);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t samples() const { return samples_; }

    /// Grid point i; point 0 is exactly lo and point samples-1 is exactly hi.
    double x(std::size_t i) const;
    double clamp(double x) const;
    bool contains(double x) const { return x >= lo_ && x <= hi_; }

    bool operator==(const Universe&) const = default;

private:
    double lo_;
    double hi_;
    std::size_t samples_;
};

/// Membership degrees sampled on a universe grid.
class DiscretizedFuzzySet {
public:
    DiscretizedFuzzySet() : DiscretizedFuzzySet(Universe{}) {}
    explicit DiscretizedFuzzySet(const Universe& universe);  // the empty (all-zero) set
    DiscretizedFuzzySet(const Universe& universe, std::vector<double> degrees);

    static DiscretizedFuzzySet constant(const Universe& universe, double degree);

    const Universe& universe() const { return universe_; }
    std::span<const double> degrees() const { return degrees_; }
    double operator[](std::size_t i) const { return degrees_[i]; }
    std::size_t size() const { return degrees_.size(); }

    double height() const;
    bool is_empty() const { return height() <= 0.0; }

    bool operator==(const DiscretizedFuzzySet&) const = default;

private:
    Universe universe_;
    std::vector<double> degrees_;
};

DiscretizedFuzzySet discretize(const MembershipFunction& mf, const Universe& universe);

/// Pointwise max. Throws DimensionError when the universes differ.
DiscretizedFuzzySet fuzzy_union(const DiscretizedFuzzySet& a, const DiscretizedFuzzySet& b);

/// Pointwise min. Throws DimensionError when the universes differ.
DiscretizedFuzzySet fuzzy_intersection(const DiscretizedFuzzySet& a, const DiscretizedFuzzySet& b);

}  // namespace mfl
