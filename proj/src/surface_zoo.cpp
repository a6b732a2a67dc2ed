#include "confgauss/surface_zoo.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace confgauss {

namespace {

using Params = std::map<std::string, double>;

double take(const Params& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void reject_unknown(const Params& p, const std::vector<std::string>& allowed, const std::string& surface) {
    for (const auto& [k, v] : p) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw GeometryError("unknown parameter '" + k + "' for surface " + surface);
        if (!std::isfinite(v)) throw GeometryError("parameter '" + k + "' must be finite");
    }
}

template <class T>
std::array<T, 4> r3(const T& x, const T& y, const T& z) {
    return {x, y, z, T(0.0)};
}

Jet4 catenoid_at(const Jet2& u, const Jet2& v, double shift) {
    const Jet2 c = cosh(u);
    return r3(c * cos(v) + shift, c * sin(v), u);
}

Jet4 invert(const Jet4& x) {
    const Jet2 inv = recip(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    return r3(x[0] * inv, x[1] * inv, x[2] * inv);
}

// Cubic Bezier profile (r(t), z(t)) in power basis, with isothermal reparametrization
// u~(t) = int_0^t |gamma'| / r.
class RevolutionProfile {
public:
    RevolutionProfile(const std::array<double, 4>& r, const std::array<double, 4>& z) {
        to_power(r, rc_);
        to_power(z, zc_);
        for (int k = 0; k <= 200; ++k) {
            const double t = k / 200.0;
            if (eval(rc_, t, 0) <= 0.05) throw GeometryError("profile radius must stay positive");
            if (speed(t) <= 1e-6) throw GeometryError("profile curve is singular");
        }
    }

    double radius(double t) const { return eval(rc_, t, 0); }
    double speed(double t) const { return std::hypot(eval(rc_, t, 1), eval(zc_, t, 1)); }
    double integrand(double t) const { return speed(t) / radius(t); }

    double u_of_t(double t) const {
        if (t == 0.0) return 0.0;
        const double a = std::min(0.0, t), b = std::max(0.0, t);
        const double val = simpson(a, b, 1e-12);
        return t > 0 ? val : -val;
    }

    double t_of_u(double u) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(u);
        if (it != cache_.end()) return it->second;
        double t = u * radius(0) / speed(0);
        for (int k = 0; k < 60; ++k) {
            if (radius(t) <= 0) throw GeometryError("isothermal coordinate leaves the profile");
            const double step = (u_of_t(t) - u) / integrand(t);
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        cache_[u] = t;
        return t;
    }

    Jet2 t_jet(const Jet2& u) const {
        const double t = t_of_u(u.f);
        const double r = radius(t), dr = eval(rc_, t, 1), dz = eval(zc_, t, 1);
        const double ddr = eval(rc_, t, 2), ddz = eval(zc_, t, 2);
        const double s = std::hypot(dr, dz);
        const double t1 = r / s;
        const double t2 = t1 * (dr / s - r * (dr * ddr + dz * ddz) / (s * s * s));
        return apply(u, t, t1, t2);
    }

    Jet2 r_of(const Jet2& t) const { return horner(rc_, t); }
    Jet2 z_of(const Jet2& t) const { return horner(zc_, t); }

private:
    static void to_power(const std::array<double, 4>& p, std::array<double, 4>& c) {
        c[0] = p[0];
        c[1] = 3 * (p[1] - p[0]);
        c[2] = 3 * (p[2] - 2 * p[1] + p[0]);
        c[3] = p[3] - 3 * p[2] + 3 * p[1] - p[0];
    }
    static double eval(const std::array<double, 4>& c, double t, int d) {
        if (d == 0) return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
        if (d == 1) return c[1] + t * (2 * c[2] + t * 3 * c[3]);
        return 2 * c[2] + 6 * c[3] * t;
    }
    static Jet2 horner(const std::array<double, 4>& c, const Jet2& t) {
        return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
    }

    double simpson(double a, double b, double tol) const {
        const double fa = integrand(a), fb = integrand(b), m = 0.5 * (a + b), fm = integrand(m);
        const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
        return simpson_rec(a, b, fa, fm, fb, whole, tol, 50);
    }
    double simpson_rec(double a, double b, double fa, double fm, double fb, double whole, double tol,
                       int depth) const {
        const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = integrand(lm), frm = integrand(rm);
        const double left = (m - a) / 6 * (fa + 4 * flm + fm);
        const double right = (b - m) / 6 * (fm + 4 * frm + fb);
        const double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
        return simpson_rec(a, m, fa, flm, fm, left, tol / 2, depth - 1) +
               simpson_rec(m, b, fm, frm, fb, right, tol / 2, depth - 1);
    }

    std::array<double, 4> rc_{}, zc_{};
    mutable std::mutex mu_;
    mutable std::map<double, double> cache_;
};

}  // namespace

double SurfaceSpec::param(const std::string& key) const {
    for (const auto& p : params)
        if (p.name == key) return p.value;
    throw GeometryError("surface " + name + " has no parameter " + key);
}

std::vector<std::string> surface_names() {
    return {"plane",           "sphere",           "cylinder",       "catenoid",
            "enneper",         "translated_catenoid", "inverted_catenoid", "torus_revolution",
            "clifford_torus",  "hyperbolic_cylinder", "revolution_profile"};
}

SurfaceSpec make_surface(const std::string& name, const Params& p) {
    SurfaceSpec s;
    s.name = name;
    s.domain = Domain{-1, 1, -1, 1};

    if (name == "plane") {
        reject_unknown(p, {}, name);
        s.position = [](const Jet2& u, const Jet2& v) { return r3(u, v, Jet2(0.0)); };
        s.expected = {"0", "0 (umbilic)", true, std::nullopt};
    } else if (name == "sphere") {
        reject_unknown(p, {"R"}, name);
        const double R = take(p, "R", 1.0);
        if (!(R > 0)) throw GeometryError("sphere radius must be positive");
        s.params = {{"R", R, "R > 0"}};
        s.position = [R](const Jet2& u, const Jet2& v) {
            const Jet2 q = u * u + v * v;
            const Jet2 k = R * recip(1.0 + q);
            return r3(2.0 * u * k, 2.0 * v * k, (q - 1.0) * k);
        };
        s.expected = {"1/R", "0 (umbilic)", true, std::nullopt};
    } else if (name == "cylinder") {
        reject_unknown(p, {"rho"}, name);
        const double rho = take(p, "rho", 1.0);
        if (!(rho > 0)) throw GeometryError("cylinder radius must be positive");
        s.params = {{"rho", rho, "rho > 0"}};
        s.position = [rho](const Jet2& u, const Jet2& v) {
            const Jet2 a = v / rho;
            return r3(rho * cos(a), -rho * sin(a), u);
        };
        s.expected = {"-1/(2 rho)", "1/(2 rho)", false, 0};
    } else if (name == "catenoid") {
        reject_unknown(p, {}, name);
        s.position = [](const Jet2& u, const Jet2& v) { return catenoid_at(u, v, 0.0); };
        s.expected = {"0", "-1", true, 0};
    } else if (name == "enneper") {
        reject_unknown(p, {}, name);
        s.position = [](const Jet2& u, const Jet2& v) {
            return r3(u - u * u * u / 3.0 + u * v * v, -v + v * v * v / 3.0 - u * u * v, u * u - v * v);
        };
        s.domain = Domain{-0.75, 0.75, -0.75, 0.75};
        s.expected = {"0", "constant", true, 0};
    } else if (name == "translated_catenoid" || name == "inverted_catenoid") {
        reject_unknown(p, {"offset"}, name);
        const double off = take(p, "offset", 3.0);
        s.params = {{"offset", off, "catenoid + (offset,0,0) keeps |x| in [0.5, 10] on the chart"}};
        double rmin = INFINITY, rmax = 0;
        for (int i = 0; i <= 40; ++i)
            for (int j = 0; j <= 40; ++j) {
                const Jet4 x = catenoid_at(Jet2(-1 + i / 20.0), Jet2(-1 + j / 20.0), off);
                const double r = std::sqrt(x[0].f * x[0].f + x[1].f * x[1].f + x[2].f * x[2].f);
                rmin = std::min(rmin, r);
                rmax = std::max(rmax, r);
            }
        if (rmin < 0.5 || rmax > 10.0)
            throw GeometryError("offset out of range: catenoid must stay within |x| in [0.5, 10]");
        const bool inv = name == "inverted_catenoid";
        s.position = [off, inv](const Jet2& u, const Jet2& v) {
            const Jet4 x = catenoid_at(u, v, off);
            return inv ? invert(x) : x;
        };
        s.expected = inv ? ExpectedInvariants{"nonconstant", "nonconstant", true, 0}
                         : ExpectedInvariants{"0", "-1", true, 0};
    } else if (name == "torus_revolution" || name == "torus") {
        reject_unknown(p, {"R", "r"}, name);
        s.name = "torus_revolution";
        const double R = take(p, "R", 3.0), r = take(p, "r", 1.0);
        if (!(r > 0) || !(R > r)) throw GeometryError("torus requires 0 < r < R");
        s.params = {{"R", R, "R > r"}, {"r", r, "0 < r < R"}};
        s.domain = Domain{-0.6, 0.6, -1, 1};
        const double c = std::sqrt((R + r) / (R - r)), w = std::sqrt(R * R - r * r) / (2 * r);
        s.position = [R, r, c, w](const Jet2& u, const Jet2& v) {
            const double th = u.f * w;
            const double k = std::round(th / std::numbers::pi);
            const double sv = 2 * std::atan(c * std::tan(th - k * std::numbers::pi)) + 2 * std::numbers::pi * k;
            const double su = (R + r * std::cos(sv)) / r;
            const Jet2 sj = apply(u, sv, su, -std::sin(sv) * su);
            const Jet2 rad = R + r * cos(sj);
            return r3(rad * cos(v), rad * sin(v), r * sin(sj));
        };
        const bool willmore = std::abs(R / r - std::sqrt(2.0)) <= 1e-12;
        s.expected = {willmore ? "nonconstant (S3 image minimal)" : "nonconstant", "real", willmore, -1};
    } else if (name == "clifford_torus") {
        reject_unknown(p, {}, name);
        s.model = Model::S3;
        const double a = std::sqrt(2.0);
        s.position = [a](const Jet2& u, const Jet2& v) -> Jet4 {
            const Jet2 x = a * u, y = a * v;
            return {cos(x) / a, sin(x) / a, cos(y) / a, sin(y) / a};
        };
        s.expected = {"h = 0", "constant", true, -1};
    } else if (name == "hyperbolic_cylinder") {
        reject_unknown(p, {"d"}, name);
        const double d = take(p, "d", 0.5);
        if (!(d > 0)) throw GeometryError("hyperbolic cylinder requires d > 0");
        s.model = Model::H3;
        s.params = {{"d", d, "d > 0"}};
        const double sd = std::sinh(d), chd = std::cosh(d), td = std::tanh(d);
        s.position = [sd, chd, td](const Jet2& u, const Jet2& th) -> Jet4 {
            const Jet2 a = td * u;
            return {sd * cos(th), sd * sin(th), chd * sinh(a), chd * cosh(a)};
        };
        s.expected = {"(tanh d + coth d)/2 up to sign", "real constant", false, 1};
    } else if (name == "revolution_profile") {
        reject_unknown(p, {"r0", "r1", "r2", "r3", "z0", "z1", "z2", "z3"}, name);
        const std::array<double, 4> rr{take(p, "r0", 1.0), take(p, "r1", 1.3), take(p, "r2", 0.9), take(p, "r3", 1.1)};
        const std::array<double, 4> zz{take(p, "z0", 0.0), take(p, "z1", 0.6), take(p, "z2", 1.2), take(p, "z3", 1.8)};
        const char* rn[] = {"r0", "r1", "r2", "r3"};
        const char* zn[] = {"z0", "z1", "z2", "z3"};
        for (int k = 0; k < 4; ++k) s.params.push_back({rn[k], rr[k], "Bezier radius control, profile r > 0"});
        for (int k = 0; k < 4; ++k) s.params.push_back({zn[k], zz[k], "Bezier height control"});
        auto prof = std::make_shared<RevolutionProfile>(rr, zz);
        s.domain = Domain{0.0, prof->u_of_t(1.0), -1, 1};
        s.quadrature = true;
        s.position = [prof](const Jet2& u, const Jet2& v) {
            const Jet2 t = prof->t_jet(u);
            const Jet2 r = prof->r_of(t);
            return r3(r * cos(v), r * sin(v), prof->z_of(t));
        };
        s.expected = {"nonconstant", "real", false, std::nullopt};
    } else {
        throw GeometryError("unknown surface: " + name);
    }
    return s;
}

ChartGrid sample(const SurfaceSpec& spec, int n, const std::optional<Domain>& domain) {
    stencil::require_size(n);
    ChartGrid g;
    g.model = spec.model;
    const Domain d = domain.value_or(spec.domain);
    if (!(d.u1 > d.u0) || !(d.v1 > d.v0)) throw GeometryError("empty chart domain");
    g.jets = Field<Jet4>(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g.jets(i, j) = spec.position(Jet2::var_u(g.jets.u(i)), Jet2::var_v(g.jets.v(j)));
    const double defect = conformality_defect(g);
    if (!(defect <= kSampleConformalityTol)) {
        std::ostringstream os;
        os << "conformality violation " << defect << " on surface " << spec.name;
        throw GeometryError(os.str());
    }
    return g;
}

}  // namespace confgauss
