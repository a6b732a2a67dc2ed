#include <random>

#include "confgauss/errors.hpp"
#include "confgauss/lorentz41.hpp"
#include "doctest.h"

using namespace confgauss;

namespace {

Vec5 vec5(double a, double b, double c, double d, double e) {
    Vec5 v;
    v << a, b, c, d, e;
    return v;
}

Mat5 random_generator(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1, 1);
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: return dilation(U(rng));
        case 1: return rotation(Vec3(U(rng), U(rng), U(rng)) + Vec3(0, 0, 1.5), 3.0 * U(rng));
        case 2: return inversion();
        default: return translation(Vec3(U(rng), U(rng), U(rng)));
    }
}

Mat5 random_word(std::mt19937_64& rng, int len = 4) {
    Mat5 M = Mat5::Identity();
    for (int k = 0; k < len; ++k) M = random_generator(rng) * M;
    return M;
}

}  // namespace

TEST_CASE("lorentz product signature") {
    CHECK(lorentz_product(v_lightlike(), v_lightlike()) == 0.0);
    CHECK(lorentz_product(v_timelike(), v_timelike()) == -1.0);
    CHECK(lorentz_product(vec5(1, 2, 3, 4, 5), vec5(1, 2, 3, 4, 5)) == 5.0);
    const Vec5 a = vec5(0.3, -1, 2, 0.5, 1.5), b = vec5(1, 1, -2, 3, 0.25);
    CHECK(lorentz_product(a, b) == doctest::Approx(lorentz_product(b, a)));
    CHECK(lorentz_product(2.0 * a + b, b) == doctest::Approx(2 * lorentz_product(a, b) + lorentz_product(b, b)));
}

TEST_CASE("complex bilinear product does not conjugate") {
    CVec5 z = CVec5::Zero();
    z(0) = cd(0, 1);
    CHECK(std::abs(lorentz_product(z, z) - cd(-1, 0)) < 1e-15);
}

TEST_CASE("vector types") {
    CHECK(classify_vector(v_spacelike()) == VectorType::spacelike);
    CHECK(classify_vector(v_lightlike()) == VectorType::lightlike);
    CHECK(classify_vector(v_timelike()) == VectorType::timelike);
    CHECK(to_string(VectorType::timelike) == "timelike");
    CHECK_THROWS_WITH_AS(classify_vector(Vec5::Zero()), "degenerate vector", GeometryError);
}

TEST_CASE("generators") {
    CHECK((dilation(0) - Mat5::Identity()).norm() == 0.0);
    CHECK((translation(Vec3::Zero()) - Mat5::Identity()).norm() == 0.0);
    Mat5 inv = Mat5::Zero();
    inv.diagonal() << -1, -1, -1, 1, -1;
    CHECK((inversion() - inv).norm() == 0.0);
    Mat3 bad = Mat3::Identity();
    bad(0, 0) = 2;
    CHECK_THROWS_AS(rotation(bad), GeometryError);
    CHECK_THROWS_AS(rotation(Vec3::Zero(), 1.0), GeometryError);
}

TEST_CASE("SO(4,1) membership") {
    CHECK(is_so41(Mat5::Identity()));
    CHECK(is_so41(translation(Vec3(1, 2, 3))));
    Mat5 d = Mat5::Identity();
    d(0, 0) = 2;
    CHECK_FALSE(is_so41(d));
    const Mat5 eps = epsilon();
    for (const Mat5& M : {dilation(0.7), inversion(), translation(Vec3(1, -2, 0.5)),
                          Mat5(rotation(Vec3(1, 1, 0), 0.9))})
        CHECK((M.transpose() * eps * M - eps).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("action on R3") {
    const Vec3 x(0.3, -0.7, 1.1), a(1, 2, -0.5);
    CHECK((act_on_r3(Mat5::Identity(), R3Point::at(x)).x - x).norm() < 1e-14);
    CHECK((act_on_r3(translation(a), R3Point::at(x)).x - (x + a)).norm() < 1e-13);
    CHECK((act_on_r3(inversion(), R3Point::at(Vec3(2, 0, 0))).x - Vec3(0.5, 0, 0)).norm() < 1e-15);
    CHECK((act_on_r3(dilation(std::log(3.0)), R3Point::at(x)).x - 3 * x).norm() < 1e-13);
    CHECK(act_on_r3(inversion(), R3Point::at(Vec3::Zero())).infinite);
    CHECK(act_on_r3(inversion(), R3Point::infinity()).x.norm() < 1e-15);
    CHECK(act_on_r3(translation(a), R3Point::infinity()).infinite);
    Mat5 bad = Mat5::Identity();
    bad(0, 1) = 0.5;
    CHECK_THROWS_AS(act_on_r3(bad, R3Point::at(x)), GeometryError);
}

TEST_CASE("action on S3") {
    const Vec4 X = Vec4(0.2, -0.4, 0.5, 0.3).normalized();
    CHECK((act_on_s3(Mat5::Identity(), X) - X).norm() < 1e-14);
    const Mat3 th = Eigen::AngleAxisd(0.8, Vec3(1, 2, 2).normalized()).toRotationMatrix();
    const Vec4 Y = act_on_s3(rotation(th), X);
    CHECK((Y.head<3>() - th * X.head<3>()).norm() < 1e-14);
    CHECK(Y(3) == doctest::Approx(X(3)));
    CHECK((act_on_s3(dilation(0.9), Vec4(0, 0, 0, 1)) - Vec4(0, 0, 0, 1)).norm() < 1e-14);
    CHECK_THROWS_AS(act_on_s3(Mat5::Identity(), Vec4(1, 1, 0, 0)), GeometryError);
}

TEST_CASE("property: morphism and projection compatibility") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int trial = 0; trial < 200; ++trial) {
        const Mat5 M = random_word(rng), M2 = random_word(rng);
        const Vec3 x(U(rng), U(rng), U(rng));
        const R3Point lhs = act_on_r3(M * M2, R3Point::at(x));
        const R3Point rhs = act_on_r3(M, act_on_r3(M2, R3Point::at(x)));
        REQUIRE(lhs.infinite == rhs.infinite);
        if (!lhs.infinite) CHECK((lhs.x - rhs.x).norm() <= 1e-9 * std::max(1.0, lhs.x.squaredNorm()));

        const Vec4 X = Vec4(U(rng), U(rng), U(rng), U(rng)).normalized();
        const Vec4 MX = act_on_s3(M, X);
        CHECK(MX.norm() == doctest::Approx(1.0).epsilon(1e-12));
        const R3Point px = R3Point::at(X.head<3>() / (1 - X(3)));
        const R3Point a = act_on_r3(M, px);
        if (!a.infinite && MX(3) < 0.999) {
            const Vec3 b = MX.head<3>() / (1 - MX(3));
            CHECK((a.x - b).norm() <= 1e-9 * std::max(1.0, b.squaredNorm()));
        }
    }
}

TEST_CASE("property: vector type preserved by SO(4,1)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int trial = 0; trial < 200; ++trial) {
        const Mat5 M = random_word(rng);
        CHECK(is_so41(M, 1e-9 * M.squaredNorm()));
        const Vec5 s = vec5(U(rng), U(rng), U(rng), U(rng), 0.1 * U(rng)) + v_spacelike();
        const Vec5 t = vec5(0.1 * U(rng), 0.1 * U(rng), 0, 0, 1 + U(rng) * 0.2);
        Vec5 l;
        const Vec4 d = Vec4(U(rng), U(rng), U(rng), U(rng)).normalized();
        l << d, 1.0;
        for (const Vec5& v : {s, t, l}) CHECK(classify_vector(M * v) == classify_vector(v));
    }
}
