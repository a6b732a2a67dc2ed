#include "confgauss/model_spaces.hpp"

#include <cmath>

namespace confgauss {

std::string to_string(Model m) {
    switch (m) {
        case Model::R3: return "R3";
        case Model::S3: return "S3";
        case Model::H3: return "H3";
    }
    return "?";
}

double minkowski31(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3];
}

S3Point make_s3(const Vec4& X) {
    if (std::abs(X.squaredNorm() - 1.0) > 1e-12) throw GeometryError("point is not on S3");
    return {X};
}

H3Point make_h3(const Vec4& Z) {
    if (std::abs(minkowski31(Z, Z) + 1.0) > 1e-10 || Z[3] < 1.0 - 1e-12)
        throw GeometryError("point is not on the hyperboloid");
    return {Z};
}

R3Point stereo(const S3Point& p) {
    const double den = 1.0 - p.X[3];
    if (den <= 1e-12) return R3Point::infinity();
    return R3Point::at(p.X.head<3>() / den);
}

S3Point stereo_inv(const R3Point& x) {
    if (x.infinite) return {Vec4(0, 0, 0, 1)};
    const double r2 = x.x.squaredNorm();
    Vec4 X;
    X << 2 * x.x, r2 - 1;
    return {X / (1 + r2)};
}

Vec3 hyper(const H3Point& p) {
    make_h3(p.Z);
    return p.Z.head<3>() / (1 + p.Z[3]);
}

H3Point hyper_inv(const Vec3& x) {
    const double r2 = x.squaredNorm();
    if (r2 >= 1.0) throw GeometryError("outside Poincaré ball");
    Vec4 Z;
    Z << 2 * x, r2 + 1;
    return {Z / (1 - r2)};
}

Vec5 lift(const ModelPoint& p) {
    Vec5 out;
    if (const auto* r = std::get_if<R3Point>(&p)) {
        if (r->infinite) return v_lightlike();
        const double r2 = r->x.squaredNorm();
        out << r->x, 0.5 * (r2 - 1), 0.5 * (r2 + 1);
    } else if (const auto* s = std::get_if<S3Point>(&p)) {
        out << s->X, 1.0;
    } else {
        const auto& z = std::get<H3Point>(p).Z;
        out << z.head<3>(), -1.0, z[3];
    }
    return out;
}

Jet4 stereo(const Jet4& X) {
    const Jet2 inv = recip(1.0 - X[3]);
    return {X[0] * inv, X[1] * inv, X[2] * inv, Jet2(0.0)};
}

Jet4 stereo_inv(const Jet4& x) {
    const Jet2 r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const Jet2 inv = recip(1.0 + r2);
    return {2.0 * x[0] * inv, 2.0 * x[1] * inv, 2.0 * x[2] * inv, (r2 - 1.0) * inv};
}

Jet4 hyper(const Jet4& Z) {
    const Jet2 inv = recip(1.0 + Z[3]);
    return {Z[0] * inv, Z[1] * inv, Z[2] * inv, Jet2(0.0)};
}

Jet4 hyper_inv(const Jet4& x) {
    const Jet2 r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (r2.f >= 1.0) throw GeometryError("outside Poincaré ball");
    const Jet2 inv = recip(1.0 - r2);
    return {2.0 * x[0] * inv, 2.0 * x[1] * inv, 2.0 * x[2] * inv, (r2 + 1.0) * inv};
}

PointData transfer_r3_to_s3(const PointData& d) {
    const Vec3 phi = d.pos.head<3>();
    const Vec3 n = d.normal.head<3>();
    const double r2 = phi.squaredNorm();
    const double np = n.dot(phi);
    PointData out;
    out.pos << 2 * phi / (1 + r2), (r2 - 1) / (1 + r2);
    out.lambda = d.lambda + std::log(2.0 / (1 + r2));
    out.H = 0.5 * (r2 + 1) * d.H + np;
    out.Omega = 2.0 * d.Omega / (1 + r2);
    Vec4 ph;
    ph << phi, -1.0;
    out.normal << n, 0.0;
    out.normal -= 2 * np / (1 + r2) * ph;
    return out;
}

PointData transfer_r3_to_h3(const PointData& d) {
    const Vec3 phi = d.pos.head<3>();
    const Vec3 n = d.normal.head<3>();
    const double r2 = phi.squaredNorm();
    if (r2 >= 1.0) throw GeometryError("not in ball");
    const double np = n.dot(phi);
    PointData out;
    out.pos << 2 * phi / (1 - r2), (1 + r2) / (1 - r2);
    out.lambda = d.lambda + std::log(2.0 / (1 - r2));
    out.H = 0.5 * (1 - r2) * d.H - np;
    out.Omega = 2.0 * d.Omega / (1 - r2);
    Vec4 ph;
    ph << phi, 1.0;
    out.normal << n, 0.0;
    out.normal += 2 * np / (1 - r2) * ph;
    return out;
}

}  // namespace confgauss
