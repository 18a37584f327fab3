#pragma once

#include <cmath>

namespace gossipmf {

/// Forward-mode scalar carrying a value, two directional first derivatives
/// and the mixed second derivative of the seeded pair of directions.
/// Seeding da=e_j, db=e_k and evaluating f yields f, df/dm_j, df/dm_k and
/// d2f/(dm_j dm_k) in one pass. Truncation-free for the supported
/// operations (+, -, *, /, exp).
struct Jet2 {
    double v = 0.0;    // value
    double da = 0.0;   // derivative along seed direction a
    double db = 0.0;   // derivative along seed direction b
    double dab = 0.0;  // mixed second derivative

    constexpr Jet2() = default;
    constexpr Jet2(double value) : v(value) {}  // constants have zero derivative part
    constexpr Jet2(double value, double da_, double db_, double dab_)
        : v(value), da(da_), db(db_), dab(dab_) {}
};

constexpr Jet2 operator+(const Jet2& x, const Jet2& y) {
    return {x.v + y.v, x.da + y.da, x.db + y.db, x.dab + y.dab};
}
constexpr Jet2 operator-(const Jet2& x, const Jet2& y) {
    return {x.v - y.v, x.da - y.da, x.db - y.db, x.dab - y.dab};
}
constexpr Jet2 operator-(const Jet2& x) { return {-x.v, -x.da, -x.db, -x.dab}; }

constexpr Jet2 operator*(const Jet2& x, const Jet2& y) {
    return {x.v * y.v,
            x.da * y.v + x.v * y.da,
            x.db * y.v + x.v * y.db,
            x.dab * y.v + x.da * y.db + x.db * y.da + x.v * y.dab};
}

constexpr Jet2 operator/(const Jet2& x, const Jet2& y) {
    const double q = x.v / y.v;
    const double qa = (x.da - q * y.da) / y.v;
    const double qb = (x.db - q * y.db) / y.v;
    const double qab = (x.dab - qa * y.db - qb * y.da - q * y.dab) / y.v;
    return {q, qa, qb, qab};
}

constexpr Jet2 operator+(const Jet2& x, double c) { return {x.v + c, x.da, x.db, x.dab}; }
constexpr Jet2 operator+(double c, const Jet2& x) { return x + c; }
constexpr Jet2 operator-(const Jet2& x, double c) { return {x.v - c, x.da, x.db, x.dab}; }
constexpr Jet2 operator-(double c, const Jet2& x) { return {c - x.v, -x.da, -x.db, -x.dab}; }
constexpr Jet2 operator*(const Jet2& x, double c) { return {x.v * c, x.da * c, x.db * c, x.dab * c}; }
constexpr Jet2 operator*(double c, const Jet2& x) { return x * c; }
constexpr Jet2 operator/(const Jet2& x, double c) { return {x.v / c, x.da / c, x.db / c, x.dab / c}; }
constexpr Jet2 operator/(double c, const Jet2& x) { return Jet2(c) / x; }

constexpr Jet2& operator+=(Jet2& x, const Jet2& y) { x = x + y; return x; }
constexpr Jet2& operator-=(Jet2& x, const Jet2& y) { x = x - y; return x; }
constexpr Jet2& operator*=(Jet2& x, const Jet2& y) { x = x * y; return x; }

inline Jet2 exp(const Jet2& x) {
    const double e = std::exp(x.v);
    return {e, e * x.da, e * x.db, e * (x.dab + x.da * x.db)};
}

/// Value of a scalar regardless of jet/plain type; lets kernel code stay
/// generic over the scalar.
constexpr double value_of(const Jet2& x) { return x.v; }
constexpr double value_of(double x) { return x; }

}  // namespace gossipmf
