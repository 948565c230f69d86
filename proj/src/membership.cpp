#include "mfl/membership.hpp"

#include <cmath>
#include <sstream>

#include "mfl/errors.hpp"

namespace mfl {

namespace {

bool all_finite(std::initializer_list<double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

}  // namespace

TriangularMF::TriangularMF(double a, double m, double b) : a_(a), m_(m), b_(b) {
    if (!all_finite({a, m, b}) || !(a <= m && m <= b) || a == b) {
        std::ostringstream os;
        os << "triangular MF requires finite a <= m <= b with a < b, got (" << a << ", " << m << ", " << b << ")";
        throw ConfigError(os.str());
    }
}

double TriangularMF::operator()(double x) const {
    if (x < a_ || x > b_) {
        return 0.0;
    }
    if (x == m_) {
        return 1.0;
    }
    // Here a < x < m implies a < m, and m < x <= b implies m < b, so neither ramp divides by zero.
    if (x < m_) {
        return (x - a_) / (m_ - a_);
    }
    return (b_ - x) / (b_ - m_);
}

TrapezoidalMF::TrapezoidalMF(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
    if (!all_finite({a, b, c, d}) || !(a <= b && b <= c && c <= d) || a == d) {
        std::ostringstream os;
        os << "trapezoidal MF requires finite a <= b <= c <= d with a < d, got (" << a << ", " << b << ", " << c << ", " << d
           << ")";
        throw ConfigError(os.str());
    }
}

double TrapezoidalMF::operator()(double x) const {
    if (x < a_ || x > d_) {
        return 0.0;
    }
    if (x >= b_ && x <= c_) {
        return 1.0;
    }
    if (x < b_) {
        return (x - a_) / (b_ - a_);
    }
    return (d_ - x) / (d_ - c_);
}

double eval_mf(const MembershipFunction& mf, double x) {
    return std::visit([x](const auto& f) { return f(x); }, mf);
}

double prototype(const MembershipFunction& mf) {
    struct Visitor {
        double operator()(const TriangularMF& t) const { return t.m(); }
        double operator()(const TrapezoidalMF& t) const { return 0.5 * (t.b() + t.c()); }
    };
    return std::visit(Visitor{}, mf);
}

std::string describe(const MembershipFunction& mf) {
    struct Visitor {
        std::string operator()(const TriangularMF& t) const {
            std::ostringstream os;
            os << "tri(" << t.a() << ", " << t.m() << ", " << t.b() << ")";
            return os.str();
        }
        std::string operator()(const TrapezoidalMF& t) const {
            std::ostringstream os;
            os << "trap(" << t.a() << ", " << t.b() << ", " << t.c() << ", " << t.d() << ")";
            return os.str();
        }
    };
    return std::visit(Visitor{}, mf);
}

}  // namespace mfl
