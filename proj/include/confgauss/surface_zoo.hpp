#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confgauss/chart_calculus.hpp"

namespace confgauss {

struct ExpectedInvariants {
    std::string H;
    std::string Omega;
    bool willmore = false;
    std::optional<int> kappa;  // empty: no conformally-CMC verdict expected
};

struct ParamInfo {
    std::string name;
    double value;
    std::string range;
};

struct SurfaceSpec {
    std::string name;
    Model model = Model::R3;
    std::vector<ParamInfo> params;
    Domain domain;
    std::function<Jet4(const Jet2&, const Jet2&)> position;
    ExpectedInvariants expected;
    bool quadrature = false;

    double param(const std::string& key) const;
};

// Catalog names: plane, sphere, cylinder, catenoid, enneper, translated_catenoid,
// inverted_catenoid, torus_revolution, clifford_torus, hyperbolic_cylinder, revolution_profile.
SurfaceSpec make_surface(const std::string& name, const std::map<std::string, double>& params = {});
std::vector<std::string> surface_names();

// Analytic jets on an N x N grid; verifies conformality of the jets.
ChartGrid sample(const SurfaceSpec& spec, int n, const std::optional<Domain>& domain = std::nullopt);

constexpr double kSampleConformalityTol = 1e-8;

}  // namespace confgauss
