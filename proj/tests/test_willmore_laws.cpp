#include <random>

#include "confgauss/errors.hpp"
#include "confgauss/surface_zoo.hpp"
#include "confgauss/willmore_laws.hpp"
#include "doctest.h"

using namespace confgauss;

namespace {

FundamentalData r3_data(const std::string& name, int n = 128, const std::map<std::string, double>& p = {}) {
    return fundamental_data(sample(make_surface(name, p), n));
}

double harmonicity(const FundamentalData& d) { return interior_max(harmonicity_residual(conformal_gauss_map(d))); }

const std::map<std::string, double> kSqrt2Torus{{"R", std::sqrt(2.0)}, {"r", 1.0}};

}  // namespace

TEST_CASE("Willmore operator") {
    CHECK(interior_max(willmore_operator(r3_data("plane", 32)).W_phi, 0) <= 1e-12);
    for (double rho : {0.5, 1.0}) {
        const auto W = willmore_operator(r3_data("cylinder", 64, {{"rho", rho}}));
        REQUIRE(W.has_phi);
        for (int k : {0, 1000, 2000}) CHECK(W.W_phi.data[k] == doctest::Approx(-1 / (16 * std::pow(rho, 3))));
    }
    CHECK(interior_max(willmore_operator(r3_data("torus_revolution", 128, kSqrt2Torus)).W_phi) <= 1e-5);
    CHECK_THROWS_AS(willmore_operator(fundamental_data(sample(make_surface("hyperbolic_cylinder"), 16))),
                    GeometryError);
}

TEST_CASE("gauge relation between R3 and S3 Willmore operators") {
    for (const std::string name : {"cylinder", "catenoid", "enneper", "inverted_catenoid", "torus_revolution",
                                   "revolution_profile"}) {
        CAPTURE(name);
        const auto d = r3_data(name);
        const auto W = willmore_operator(d);
        double err = 0;
        for (int i = kBoundaryBand; i < d.n() - kBoundaryBand; ++i)
            for (int j = kBoundaryBand; j < d.n() - kBoundaryBand; ++j)
                err = std::max(err, std::abs(W.W_s3(i, j) - 0.5 * (d.pos(i, j).squaredNorm() + 1) * W.W_phi(i, j)));
        CHECK(err <= 1e-6);
    }
}

TEST_CASE("Willmore iff harmonic Gauss map") {
    CHECK(harmonicity(r3_data("torus_revolution", 128, kSqrt2Torus)) <= 1e-4);
    CHECK(harmonicity(r3_data("inverted_catenoid")) <= 1e-4);
    CHECK(harmonicity(r3_data("catenoid")) <= 1e-4);
    CHECK(harmonicity(r3_data("enneper")) <= 1e-4);
    CHECK(harmonicity(fundamental_data(sample(make_surface("clifford_torus"), 128))) <= 1e-4);
    CHECK(harmonicity(r3_data("cylinder")) >= 1e-2);
    CHECK(harmonicity(r3_data("torus_revolution")) >= 1e-2);
    CHECK(harmonicity(fundamental_data(sample(make_surface("hyperbolic_cylinder"), 128))) >= 1e-2);
    CHECK(harmonicity(r3_data("revolution_profile")) >= 1e-2);
}

TEST_CASE("conserved matrix") {
    const auto plane = conserved_matrix(conformal_gauss_map(r3_data("plane", 32)));
    for (const Mat5& m : plane.u.data) CHECK(m.norm() <= 1e-12);
    const auto mu = conserved_matrix(conformal_gauss_map(r3_data("catenoid")));
    double asym = 0, size = 0;
    for (std::size_t k = 0; k < mu.u.data.size(); ++k) {
        asym = std::max({asym, (mu.u.data[k] + mu.u.data[k].transpose()).norm(),
                         (mu.v.data[k] + mu.v.data[k].transpose()).norm()});
        size = std::max(size, mu.u.data[k].norm());
    }
    CHECK(asym <= 1e-12);
    CHECK(size > 1e-2);
    const auto zero = extract_from_mu(MuPair{Mat5Field(16, Domain{}, Mat5::Zero()), Mat5Field(16, Domain{}, Mat5::Zero())});
    CHECK(interior_max(zero.tra.u, 0) == 0.0);
    CHECK(interior_max(zero.dil.v, 0) == 0.0);
}

TEST_CASE("direct currents") {
    const auto cat = direct_currents(r3_data("catenoid"));
    CHECK(interior_max(cat.tra.u, 0) <= 1e-12);
    CHECK(interior_max(cat.dil.v, 0) <= 1e-12);
    CHECK(divergence_residual(cat.tra) <= 1e-10);
    const auto plane = direct_currents(r3_data("plane", 32));
    for (const auto* c : {&plane.tra, &plane.rot, &plane.rot_tilde, &plane.inv}) CHECK(interior_max(c->u, 0) <= 1e-12);
    const auto inv = r3_data("inverted_catenoid");
    const auto ic = direct_currents(inv);
    CHECK(interior_max(ic.tra.u) > 1e-3);
    CHECK(max_difference(ic.tra, translation_current_alt(inv)) <= 1e-6);
    CHECK(ic.rot_sign() == +1);
}

TEST_CASE("block extraction agrees with the direct currents on Willmore surfaces") {
    for (auto [name, p] : std::vector<std::pair<std::string, std::map<std::string, double>>>{
             {"torus_revolution", kSqrt2Torus}, {"inverted_catenoid", {}}, {"translated_catenoid", {}}, {"enneper", {}}}) {
        CAPTURE(name);
        const auto d = r3_data(name, 128, p);
        const auto direct = direct_currents(d);
        const auto block = extract_from_mu(conserved_matrix(conformal_gauss_map(d)));
        CHECK(max_difference(direct.tra, block.tra) <= 1e-5);
        CHECK(max_difference(direct.dil, block.dil) <= 1e-5);
        CHECK(max_difference(direct.inv, block.inv) <= 1e-5);
        CHECK(max_difference(direct.rot_tilde, block.rot_tilde) <= 1e-5);
        CHECK(divergence_residual(block.tra) <= 1e-3);
        CHECK(divergence_residual(block.dil) <= 1e-3);
    }
}

TEST_CASE("conservation fails off shell") {
    const auto d = r3_data("cylinder");
    CHECK(divergence_residual(direct_currents(d).tra) >= 1e-2);
}

TEST_CASE("inversion exchange law") {
    const auto rep = inversion_exchange_check(sample(make_surface("translated_catenoid"), 128));
    CHECK(rep.tra_to_inv <= 1e-4);
    CHECK(rep.inv_to_tra <= 1e-4);
    CHECK(rep.dil_flip <= 1e-4);
    CHECK(rep.rot_fixed <= 1e-4);
    CHECK(rep.mu_conjugation <= 1e-5);
    CHECK(rep.pass());
    CHECK_THROWS_WITH_AS(inversion_exchange_check(sample(make_surface("plane"), 33)), "inversion center on surface",
                         GeometryError);
}

TEST_CASE("property: conserved matrix is Moebius equivariant") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-1, 1);
    const auto grid = to_model(sample(make_surface("catenoid"), 96), Model::S3);
    const auto mu0 = conserved_matrix(conformal_gauss_map(fundamental_data(grid)));
    for (int t = 0; t < 10; ++t) {
        const Mat5 M = translation(Vec3(U(rng), U(rng), U(rng))) * rotation(Vec3(1, U(rng), U(rng)), 3 * U(rng)) *
                       dilation(U(rng));
        const auto moved = push_jets(grid, Model::S3, [&](const Jet4& x) { return act_on_s3(M, x); });
        const auto mu1 = conserved_matrix(conformal_gauss_map(fundamental_data(moved)));
        CHECK(max_difference(mu1, conjugate(M, mu0)) <= 1e-5);
    }
}
