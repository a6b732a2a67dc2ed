#pragma once

#include <string>
#include <variant>

#include "confgauss/lorentz41.hpp"

namespace confgauss {

enum class Model { R3, S3, H3 };
std::string to_string(Model m);

struct S3Point {
    Vec4 X;
};
struct H3Point {
    Vec4 Z;
};
using ModelPoint = std::variant<R3Point, S3Point, H3Point>;

// Validated constructors.
S3Point make_s3(const Vec4& X);
H3Point make_h3(const Vec4& Z);

// Minkowski product of R^{3,1}.
double minkowski31(const Vec4& a, const Vec4& b);

R3Point stereo(const S3Point& p);
S3Point stereo_inv(const R3Point& x);
Vec3 hyper(const H3Point& p);
H3Point hyper_inv(const Vec3& x);

Vec5 lift(const ModelPoint& p);

Jet4 stereo(const Jet4& X);
Jet4 stereo_inv(const Jet4& x);
Jet4 hyper(const Jet4& Z);
Jet4 hyper_inv(const Jet4& x);

// Pointwise surface data in one model: position, unit normal, log conformal factor,
// mean curvature and tracefree curvature.
struct PointData {
    Vec4 pos = Vec4::Zero();
    Vec4 normal = Vec4::Zero();
    double lambda = 0;
    double H = 0;
    cd Omega = 0;
};

PointData transfer_r3_to_s3(const PointData& d);
PointData transfer_r3_to_h3(const PointData& d);

}  // namespace confgauss
