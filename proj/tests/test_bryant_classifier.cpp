#include <random>

#include "confgauss/acceptance.hpp"
#include "confgauss/bryant_classifier.hpp"
#include "confgauss/errors.hpp"
#include "doctest.h"

using namespace confgauss;

namespace {

struct Pipeline {
    FundamentalData data;
    CongruenceGrid Y;
    QField Q;
};

Pipeline run(const std::string& name, Model m, int n = 128, const std::map<std::string, double>& p = {}) {
    auto g = sample(make_surface(name, p), n);
    if (g.model != m) g = to_model(g, m);
    Pipeline out{fundamental_data(g), {}, {}};
    out.Y = conformal_gauss_map(out.data);
    out.Q = bryant_q(out.data, out.Y);
    return out;
}

}  // namespace

TEST_CASE("Q closed forms") {
    const auto cat = run("catenoid", Model::R3);
    CHECK(interior_max(cat.Q.value) <= 1e-10);
    CHECK(cat.Q.agreement <= 1e-5);
    for (double rho : {0.5, 1.0}) {
        const auto cyl = run("cylinder", Model::R3, 64, {{"rho", rho}});
        for (int k : {0, 1000, 4000}) CHECK(std::abs(cyl.Q.value.data[k] - 1 / (64 * std::pow(rho, 4))) <= 1e-10);
        CHECK(cyl.Q.agreement <= 1e-5);
    }
    const auto cl = run("clifford_torus", Model::S3);
    double worst = 0;
    for (std::size_t k = 0; k < cl.Q.value.data.size(); ++k)
        worst = std::max(worst, std::abs(cl.Q.value.data[k] - cl.data.Omega.data[k] * cl.data.Omega.data[k] / 4.0));
    CHECK(worst <= 1e-10);
    CHECK_FALSE(cl.Q.direct_only);
}

TEST_CASE("Q routes agree in both gauges") {
    for (const std::string name : {"enneper", "torus_revolution", "inverted_catenoid", "revolution_profile"})
        for (Model m : {Model::R3, Model::S3}) {
            CAPTURE(name);
            CHECK(run(name, m).Q.agreement <= 1e-5);
        }
}

TEST_CASE("hyperbolic data uses the direct route") {
    const auto h = run("hyperbolic_cylinder", Model::H3, 64);
    CHECK(h.Q.direct_only);
    CHECK(std::isnan(h.Q.agreement));
}

TEST_CASE("holomorphy") {
    CHECK(holomorphy_residual(run("torus_revolution", Model::S3, 128, {{"R", std::sqrt(2.0)}, {"r", 1.0}}).Q.value) <=
          1e-4);
    CHECK(holomorphy_residual(run("cylinder", Model::R3, 64).Q.value) <= 1e-8);
    CHECK(holomorphy_residual(run("revolution_profile", Model::S3).Q.value) >= 1e-2);
    for (const std::string name : {"cylinder", "revolution_profile", "torus_revolution"}) {
        CAPTURE(name);
        const auto p = run(name, Model::S3);
        const auto id = holomorphy_identity(p.data, p.Q.value);
        CHECK(id.residual <= 1e-4);
    }
    CHECK_THROWS_AS(holomorphy_identity(run("cylinder", Model::R3, 32).data, Field<cd>(32, Domain{})), GeometryError);
}

TEST_CASE("isothermic witness") {
    const auto cyl = run("cylinder", Model::S3);
    CHECK(isothermic_witness(cyl.data, cyl.Q.value) <= 1e-10);
    const auto cat = run("catenoid", Model::S3);
    CHECK(isothermic_witness(cat.data, cat.Q.value) == 0.0);
    const auto hc = run("hyperbolic_cylinder", Model::S3);
    CHECK(isothermic_witness(hc.data, hc.Q.value) <= 1e-6);
}

TEST_CASE("classification value") {
    const auto cyl = run("cylinder", Model::S3);
    const auto kc = classification_value(cyl.data, cyl.Q.value);
    REQUIRE(kc.kappa);
    CHECK(*kc.kappa == 0);
    CHECK(interior_max(kc.field) <= 1e-7);
    const auto cl = run("clifford_torus", Model::S3);
    const auto kl = classification_value(cl.data, cl.Q.value);
    REQUIRE(kl.kappa);
    CHECK(*kl.kappa == -1);
    CHECK(interior_max(kl.field) > 1e-3);
    CHECK(kl.negative == 1.0);
    const auto hc = run("hyperbolic_cylinder", Model::S3);
    const auto kh = classification_value(hc.data, hc.Q.value);
    REQUIRE(kh.kappa);
    CHECK(*kh.kappa == 1);
}

TEST_CASE("hyperplane fit") {
    const auto cyl = hyperplane_fit(run("cylinder", Model::R3, 64).Y.Y);
    CHECK(cyl.residual <= 1e-7);
    CHECK(cyl.type == VectorType::lightlike);
    CHECK_FALSE(cyl.linear);
    CHECK(std::abs(cyl.eta) > 1e-2);
    const auto cl = hyperplane_fit(run("clifford_torus", Model::S3, 64).Y.Y);
    CHECK(cl.residual <= 1e-7);
    CHECK(cl.type == VectorType::timelike);
    CHECK(std::abs(cl.eta) <= 1e-7);
    CHECK(cl.linear);
    const auto cat = hyperplane_fit(run("catenoid", Model::R3, 64).Y.Y);
    CHECK(cat.type == VectorType::lightlike);
    CHECK(std::abs(cat.eta) <= 1e-6);
    CHECK(cat.v.norm() == doctest::Approx(1.0));
    const Field<Vec5> constant(32, Domain{}, v_spacelike());
    CHECK_THROWS_WITH_AS(hyperplane_fit(constant), "degenerate congruence", GeometryError);
}

TEST_CASE("verdicts") {
    auto verdict = [](const std::string& name, const std::map<std::string, double>& p = {}) {
        return classify(make_surface(name, p), 128).verdict;
    };
    CHECK(verdict("cylinder") == "conformally CMC in ℝ³");
    CHECK(verdict("catenoid") == "conformally minimal in ℝ³");
    CHECK(verdict("enneper") == "conformally minimal in ℝ³");
    CHECK(verdict("inverted_catenoid") == "conformally minimal in ℝ³");
    CHECK(verdict("torus_revolution", {{"R", 3.0}, {"r", 1.0}}) == "conformally CMC in S³");
    CHECK(verdict("torus_revolution", {{"R", std::sqrt(2.0)}, {"r", 1.0}}) == "conformally minimal in S³");
    CHECK(verdict("clifford_torus") == "conformally minimal in S³");
    CHECK(verdict("hyperbolic_cylinder") == "conformally CMC in ℍ³");
    CHECK(verdict("revolution_profile") == "not conformally CMC");
    CHECK_THROWS_WITH_AS(classify(make_surface("sphere"), 64), "umbilic surface: conformal Gauss map degenerate",
                         GeometryError);
    CHECK_THROWS_AS(classify(make_surface("plane"), 64), GeometryError);
}

TEST_CASE("inverted catenoid has vanishing Q") {
    const auto p = run("inverted_catenoid", Model::S3);
    CHECK(interior_max(p.Q.value) <= 1e-6);
    const auto r = classify(make_surface("inverted_catenoid"), 128);
    REQUIRE(r.kappa);
    CHECK(*r.kappa == 0);
}

TEST_CASE("space names and the kappa dictionary") {
    CHECK(space_name(0) == "ℝ³");
    CHECK(space_name(-1) == "S³");
    CHECK(space_name(1) == "ℍ³");
    CHECK(kappa_for_type(VectorType::lightlike) == 0);
    CHECK(kappa_for_type(VectorType::timelike) == -1);
    CHECK(kappa_for_type(VectorType::spacelike) == 1);
}

TEST_CASE("JSON report layout") {
    const auto r = classify(make_surface("cylinder", {{"rho", 1.0}}), 64);
    const auto j = report_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    const std::vector<std::string> expected{"surface", "params", "grid", "willmore_residual", "q_holomorphy",
                                            "isothermic_witness", "kappa", "hyperplane", "verdict"};
    CHECK(keys == expected);
    CHECK(j["kappa"] == 0);
    CHECK(j["params"]["rho"] == 1.0);
    CHECK(j["hyperplane"]["v"].size() == 5);
    CHECK(j["hyperplane"]["type"] == "lightlike");
    CHECK(to_json(r).find("\"verdict\": \"conformally CMC in ℝ³\"") != std::string::npos);
}

TEST_CASE("property: verdict, kappa and normal type are Moebius invariant") {
    std::mt19937_64 rng(2024);
    for (const std::string name : {"cylinder", "catenoid", "torus_revolution", "hyperbolic_cylinder"}) {
        const auto base = classify(make_surface(name), 128);
        for (int t = 0; t < 10; ++t) {
            const auto w = random_word(rng);
            CAPTURE(name);
            CAPTURE(w.text);
            const auto r = classify(make_surface(name), 128, {}, w.M);
            CHECK(r.verdict == base.verdict);
            CHECK(r.kappa == base.kappa);
            CHECK(r.hyperplane.type == base.hyperplane.type);
        }
    }
}

TEST_CASE("property: Q is invariant along Y") {
    std::mt19937_64 rng(4);
    const auto p = run("torus_revolution", Model::S3, 96);
    for (int t = 0; t < 5; ++t) {
        const auto w = random_word(rng);
        const auto MY = congruence_from_field(p.Y.Y.map([&](const Vec5& y) -> Vec5 { return w.M * y; }));
        Field<cd> q(MY.Yzz.n, MY.Yzz.dom);
        for (std::size_t k = 0; k < q.data.size(); ++k) q.data[k] = lorentz_product(MY.Yzz.data[k], MY.Yzz.data[k]);
        CHECK(max_difference(q, p.Q.direct) <= 1e-6 * std::max(1.0, w.M.squaredNorm()));
    }
}
