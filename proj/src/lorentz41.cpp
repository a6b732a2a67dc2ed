#include "confgauss/lorentz41.hpp"

#include <algorithm>
#include <cmath>

namespace confgauss {

Mat5 epsilon() {
    Mat5 e = Mat5::Identity();
    e(4, 4) = -1;
    return e;
}

double lorentz_product(const Vec5& a, const Vec5& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] - a[4] * b[4];
}

cd lorentz_product(const CVec5& a, const CVec5& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] - a[4] * b[4];
}

Vec5 v_spacelike() { return (Vec5() << 0, 0, 0, 1, 0).finished(); }
Vec5 v_timelike() { return (Vec5() << 0, 0, 0, 0, 1).finished(); }
Vec5 v_lightlike() { return (Vec5() << 0, 0, 0, 1, 1).finished(); }

std::string to_string(VectorType t) {
    switch (t) {
        case VectorType::spacelike: return "spacelike";
        case VectorType::lightlike: return "lightlike";
        case VectorType::timelike: return "timelike";
    }
    return "?";
}

VectorType classify_vector(const Vec5& v, double tol) {
    const double n2 = v.squaredNorm();
    if (n2 == 0.0) throw GeometryError("degenerate vector");
    const double q = lorentz_product(v, v);
    if (std::abs(q) <= tol * n2) return VectorType::lightlike;
    return q > 0 ? VectorType::spacelike : VectorType::timelike;
}

bool is_so41(const Mat5& M, double tol) {
    if (!M.allFinite()) return false;
    const Mat5 e = epsilon();
    const Mat5 d = M.transpose() * e * M - e;
    if (d.cwiseAbs().maxCoeff() > tol) return false;
    return std::abs(M.determinant() - 1.0) <= tol * std::max(1.0, M.cwiseAbs().maxCoeff());
}

Mat5 dilation(double lambda) {
    Mat5 M = Mat5::Identity();
    M(3, 3) = M(4, 4) = std::cosh(lambda);
    M(3, 4) = M(4, 3) = std::sinh(lambda);
    return M;
}

Mat5 rotation(const Mat3& theta) {
    if ((theta.transpose() * theta - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-12)
        throw GeometryError("rotation block is not orthogonal");
    Mat5 M = Mat5::Identity();
    M.topLeftCorner<3, 3>() = theta;
    return M;
}

Mat5 rotation(const Vec3& axis, double angle) {
    if (axis.norm() == 0.0) throw GeometryError("rotation axis is zero");
    return rotation(Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix());
}

Mat5 inversion() {
    Mat5 M = Mat5::Zero();
    M.diagonal() << -1, -1, -1, 1, -1;
    return M;
}

Mat5 translation(const Vec3& a) {
    const double h = 0.5 * a.squaredNorm();
    Mat5 M = Mat5::Identity();
    M.block<3, 1>(0, 3) = -a;
    M.block<3, 1>(0, 4) = a;
    M.block<1, 3>(3, 0) = a.transpose();
    M.block<1, 3>(4, 0) = a.transpose();
    M(3, 3) = 1 - h;
    M(3, 4) = h;
    M(4, 3) = -h;
    M(4, 4) = 1 + h;
    return M;
}

namespace {

void require_so41(const Mat5& M) {
    const double s = std::max(1.0, M.cwiseAbs().maxCoeff());
    if (!is_so41(M, 1e-10 * s * s)) throw GeometryError("matrix is not in SO(4,1)");
}

}  // namespace

R3Point act_on_r3(const Mat5& M, const R3Point& x) {
    require_so41(M);
    Vec5 p;
    if (x.infinite) {
        p = v_lightlike();
    } else {
        const double r2 = x.x.squaredNorm();
        p << x.x, 0.5 * (r2 - 1), 0.5 * (r2 + 1);
    }
    const Vec5 y = M * p;
    const double den = y[4] - y[3];
    if (std::abs(den) <= 1e-12 * std::max(1.0, y.norm())) return R3Point::infinity();
    return R3Point::at(y.head<3>() / den);
}

Vec4 act_on_s3(const Mat5& M, const Vec4& X) {
    require_so41(M);
    if (std::abs(X.norm() - 1.0) > 1e-9) throw GeometryError("point is not on S3");
    Vec5 p;
    p << X, 1.0;
    const Vec5 V = M * p;
    return V.head<4>() / V[4];
}

Jet4 act_on_s3(const Mat5& M, const Jet4& X) {
    require_so41(M);
    std::array<Jet2, 5> V;
    for (int i = 0; i < 5; ++i) {
        V[i] = Jet2(M(i, 4));
        for (int k = 0; k < 4; ++k) V[i] += M(i, k) * X[k];
    }
    const Jet2 inv = recip(V[4]);
    return {V[0] * inv, V[1] * inv, V[2] * inv, V[3] * inv};
}

Jet4 act_on_r3(const Mat5& M, const Jet4& x) {
    require_so41(M);
    const Jet2 r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const std::array<Jet2, 5> p{x[0], x[1], x[2], 0.5 * (r2 - 1.0), 0.5 * (r2 + 1.0)};
    std::array<Jet2, 5> y;
    for (int i = 0; i < 5; ++i) {
        y[i] = Jet2(0.0);
        for (int k = 0; k < 5; ++k) y[i] += M(i, k) * p[k];
    }
    const Jet2 den = y[4] - y[3];
    if (std::abs(den.f) <= 1e-12) throw GeometryError("surface passes through the pole of the transformation");
    const Jet2 inv = recip(den);
    return {y[0] * inv, y[1] * inv, y[2] * inv, Jet2(0.0)};
}

}  // namespace confgauss
