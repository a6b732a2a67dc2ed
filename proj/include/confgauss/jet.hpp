#pragma once

#include <array>
#include <cmath>

namespace confgauss {

// Second-order Taylor jet in two variables (u, v).
struct Jet2 {
    double f = 0, fu = 0, fv = 0, fuu = 0, fuv = 0, fvv = 0;

    Jet2() = default;
    Jet2(double c) : f(c) {}  // NOLINT: constants promote implicitly
    Jet2(double f_, double fu_, double fv_, double fuu_, double fuv_, double fvv_)
        : f(f_), fu(fu_), fv(fv_), fuu(fuu_), fuv(fuv_), fvv(fvv_) {}

    static Jet2 var_u(double u) { return {u, 1, 0, 0, 0, 0}; }
    static Jet2 var_v(double v) { return {v, 0, 1, 0, 0, 0}; }

    Jet2& operator+=(const Jet2& o) {
        f += o.f; fu += o.fu; fv += o.fv; fuu += o.fuu; fuv += o.fuv; fvv += o.fvv;
        return *this;
    }
    Jet2& operator-=(const Jet2& o) {
        f -= o.f; fu -= o.fu; fv -= o.fv; fuu -= o.fuu; fuv -= o.fuv; fvv -= o.fvv;
        return *this;
    }
    Jet2& operator*=(double c) {
        f *= c; fu *= c; fv *= c; fuu *= c; fuv *= c; fvv *= c;
        return *this;
    }
};

// Chain rule for a scalar function g with derivatives d0 = g(a.f), d1 = g', d2 = g''.
inline Jet2 apply(const Jet2& a, double d0, double d1, double d2) {
    return {d0,
            d1 * a.fu,
            d1 * a.fv,
            d2 * a.fu * a.fu + d1 * a.fuu,
            d2 * a.fu * a.fv + d1 * a.fuv,
            d2 * a.fv * a.fv + d1 * a.fvv};
}

inline Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
inline Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
inline Jet2 operator-(const Jet2& a) { return {-a.f, -a.fu, -a.fv, -a.fuu, -a.fuv, -a.fvv}; }
inline Jet2 operator*(Jet2 a, double c) { return a *= c; }
inline Jet2 operator*(double c, Jet2 a) { return a *= c; }
inline Jet2 operator+(Jet2 a, double c) { a.f += c; return a; }
inline Jet2 operator+(double c, Jet2 a) { a.f += c; return a; }
inline Jet2 operator-(Jet2 a, double c) { a.f -= c; return a; }
inline Jet2 operator-(double c, const Jet2& a) { return c + (-a); }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.f * b.f,
            a.fu * b.f + a.f * b.fu,
            a.fv * b.f + a.f * b.fv,
            a.fuu * b.f + 2 * a.fu * b.fu + a.f * b.fuu,
            a.fuv * b.f + a.fu * b.fv + a.fv * b.fu + a.f * b.fuv,
            a.fvv * b.f + 2 * a.fv * b.fv + a.f * b.fvv};
}

inline Jet2 recip(const Jet2& a) {
    const double r = 1.0 / a.f;
    return apply(a, r, -r * r, 2 * r * r * r);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * recip(b); }
inline Jet2 operator/(Jet2 a, double c) { return a *= 1.0 / c; }
inline Jet2 operator/(double c, const Jet2& a) { return c * recip(a); }

inline Jet2 sin(const Jet2& a) { return apply(a, std::sin(a.f), std::cos(a.f), -std::sin(a.f)); }
inline Jet2 cos(const Jet2& a) { return apply(a, std::cos(a.f), -std::sin(a.f), -std::cos(a.f)); }
inline Jet2 sinh(const Jet2& a) { return apply(a, std::sinh(a.f), std::cosh(a.f), std::sinh(a.f)); }
inline Jet2 cosh(const Jet2& a) { return apply(a, std::cosh(a.f), std::sinh(a.f), std::cosh(a.f)); }
inline Jet2 exp(const Jet2& a) {
    const double e = std::exp(a.f);
    return apply(a, e, e, e);
}
inline Jet2 log(const Jet2& a) { return apply(a, std::log(a.f), 1.0 / a.f, -1.0 / (a.f * a.f)); }
inline Jet2 sqrt(const Jet2& a) {
    const double s = std::sqrt(a.f);
    return apply(a, s, 0.5 / s, -0.25 / (s * a.f));
}
inline Jet2 tan(const Jet2& a) {
    const double t = std::tan(a.f), s = 1 + t * t;
    return apply(a, t, s, 2 * t * s);
}
inline Jet2 atan(const Jet2& a) {
    const double s = 1.0 / (1 + a.f * a.f);
    return apply(a, std::atan(a.f), s, -2 * a.f * s * s);
}

// Plain-double overloads so templated geometry code can use unqualified calls.
using std::atan;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;

inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.f; }

template <class T, std::size_t D>
using Point = std::array<T, D>;

using Jet4 = std::array<Jet2, 4>;

}  // namespace confgauss
