#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "confgauss/errors.hpp"
#include "confgauss/jet.hpp"

namespace confgauss {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using cd = std::complex<double>;
using CVec4 = Eigen::Matrix<cd, 4, 1>;
using CVec5 = Eigen::Matrix<cd, 5, 1>;

// Metric signature diag(1,1,1,1,-1).
Mat5 epsilon();

double lorentz_product(const Vec5& a, const Vec5& b);
// Complex bilinear extension (no conjugation).
cd lorentz_product(const CVec5& a, const CVec5& b);

Vec5 v_spacelike();  // (0,0,0,1,0)
Vec5 v_timelike();   // (0,0,0,0,1)
Vec5 v_lightlike();  // (0,0,0,1,1)

enum class VectorType { spacelike, lightlike, timelike };
std::string to_string(VectorType t);

VectorType classify_vector(const Vec5& v, double tol = 1e-9);

bool is_so41(const Mat5& M, double tol = 1e-12);

Mat5 dilation(double lambda);
Mat5 rotation(const Mat3& theta);
Mat5 rotation(const Vec3& axis, double angle);
Mat5 inversion();
Mat5 translation(const Vec3& a);

// Point of R^3 or the point at infinity.
struct R3Point {
    Vec3 x = Vec3::Zero();
    bool infinite = false;

    static R3Point at(const Vec3& p) { return {p, false}; }
    static R3Point infinity() { return {Vec3::Zero(), true}; }
};

R3Point act_on_r3(const Mat5& M, const R3Point& x);
Vec4 act_on_s3(const Mat5& M, const Vec4& X);

// Jet versions (chain rule through the action); used to transport analytic 2-jets.
Jet4 act_on_s3(const Mat5& M, const Jet4& X);
// R^3 jets are stored with a zero fourth component.
Jet4 act_on_r3(const Mat5& M, const Jet4& x);

}  // namespace confgauss
