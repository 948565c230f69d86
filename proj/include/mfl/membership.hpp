#pragma once

#include <string>
#include <variant>

namespace mfl {

/// Triangle with feet at `a` and `b` and its peak at `m`.
/// `a == m` or `m == b` is a shoulder: the degenerate side is flat at degree 1.
class TriangularMF {
public:
    TriangularMF(double a, double m, double b);

    double a() const { return a_; }
    double m() const { return m_; }
    double b() const { return b_; }

    double operator()(double x) const;
    bool operator==(const TriangularMF&) const = default;

private:
    double a_;
    double m_;
    double b_;
};

/// Trapezoid rising on [a,b], flat at 1 on [b,c], falling on [c,d].
class TrapezoidalMF {
public:
    TrapezoidalMF(double a, double b, double c, double d);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }

    double operator()(double x) const;
    bool operator==(const TrapezoidalMF&) const = default;

private:
    double a_;
    double b_;
    double c_;
    double d_;
};

using MembershipFunction = std::variant<TriangularMF, TrapezoidalMF>;

double eval_mf(const MembershipFunction& mf, double x);

/// The x of maximal membership: the peak of a triangle, the plateau midpoint of a trapezoid.
double prototype(const MembershipFunction& mf);

std::string describe(const MembershipFunction& mf);

}  // namespace mfl
