#include "confgauss/errors.hpp"
#include "confgauss/surface_zoo.hpp"
#include "confgauss/willmore_laws.hpp"
#include "doctest.h"

using namespace confgauss;

TEST_CASE("catalog") {
    const auto names = surface_names();
    CHECK(names.size() == 11);
    for (const auto& n : names) CHECK(make_surface(n).name == n);
    CHECK_THROWS_WITH_AS(make_surface("klein_bottle"), "unknown surface: klein_bottle", GeometryError);
    CHECK_THROWS_AS(make_surface("cylinder", {{"R", 1.0}}), GeometryError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_surface("torus_revolution", {{"R", 1.0}, {"r", 1.0}}), GeometryError);
    CHECK_THROWS_AS(make_surface("hyperbolic_cylinder", {{"d", 0.0}}), GeometryError);
    CHECK_THROWS_AS(make_surface("inverted_catenoid", {{"offset", -1.0}}), GeometryError);
    CHECK_THROWS_AS(make_surface("cylinder", {{"rho", -1.0}}), GeometryError);
    CHECK_THROWS_AS(make_surface("sphere", {{"R", 0.0}}), GeometryError);
}

TEST_CASE("expected table: cylinder(1)") {
    const auto s = make_surface("cylinder", {{"rho", 1.0}});
    CHECK(s.expected.H == "-1/(2 rho)");
    CHECK(s.expected.Omega == "1/(2 rho)");
    CHECK_FALSE(s.expected.willmore);
    REQUIRE(s.expected.kappa);
    CHECK(*s.expected.kappa == 0);
    CHECK(s.param("rho") == 1.0);
}

TEST_CASE("sampling") {
    const auto plane = fundamental_data(sample(make_surface("plane"), 64));
    for (double e : plane.e2l.data) CHECK(e == doctest::Approx(1.0));
    const auto cat = fundamental_data(sample(make_surface("catenoid"), 128));
    double worst = 0;
    for (int i = 0; i < 128; ++i)
        worst = std::max(worst, std::abs(cat.e2l(i, 5) - std::pow(std::cosh(cat.pos.u(i)), 2)));
    CHECK(worst <= 1e-12);
    const auto prof = sample(make_surface("revolution_profile"), 128);
    CHECK(conformality_defect(prof) <= 1e-8);
}

TEST_CASE("Clifford torus") {
    const auto data = fundamental_data(sample(make_surface("clifford_torus"), 64));
    CHECK(data.model == Model::S3);
    CHECK(interior_max(data.H, 0) <= 1e-12);
    const auto img = fundamental_data(to_model(sample(make_surface("clifford_torus"), 64), Model::R3));
    Field<double> h(img.n(), img.domain());
    for (int i = 0; i < img.n(); ++i)
        for (int j = 0; j < img.n(); ++j) h(i, j) = transfer_r3_to_s3(img.at(i, j)).H;
    CHECK(interior_max(h, 0) <= 1e-10);
}

TEST_CASE("hyperbolic cylinder") {
    for (double d : {0.3, 0.5, 1.2}) {
        const auto data = fundamental_data(sample(make_surface("hyperbolic_cylinder", {{"d", d}}), 32));
        const double expected = (std::tanh(d) + 1 / std::tanh(d)) / 2;
        for (int k : {0, 300, 1000}) {
            CHECK(data.e2l.data[k] == doctest::Approx(std::sinh(d) * std::sinh(d)));
            CHECK(std::abs(data.H.data[k]) == doctest::Approx(expected));
        }
    }
}

TEST_CASE("property: every catalog surface satisfies the structure equations") {
    for (const auto& name : surface_names()) {
        CAPTURE(name);
        const auto spec = make_surface(name);
        const auto data = fundamental_data(sample(spec, 128));
        CHECK(structure_residuals(data).max() <= (spec.quadrature ? 1e-6 : 1e-7));
        CHECK(interior_max(gauss_codazzi_residual(data)) <= 1e-6);
    }
}

TEST_CASE("torus Willmore separation") {
    auto w = [](double R) {
        const auto g = sample(make_surface("torus_revolution", {{"R", R}, {"r", 1.0}}), 128);
        return interior_max(willmore_field(fundamental_data(g)));
    };
    CHECK(w(std::sqrt(2.0)) <= 1e-5);
    CHECK(w(3.0) >= 1e-2);
}
