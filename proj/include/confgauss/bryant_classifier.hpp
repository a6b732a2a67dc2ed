#pragma once

#include <optional>
#include <string>

#include "confgauss/json_io.hpp"
#include "confgauss/surface_zoo.hpp"
#include "confgauss/willmore_laws.hpp"

namespace confgauss {

struct QField {
    Field<cd> value;        // closed form when available, else direct
    Field<cd> direct;       // <Y_zz, Y_zz>
    double agreement = NAN; // interior max |closed - direct|; NaN on the direct-only route
    bool direct_only = false;
};
// Closed form by model: R3 uses H, Omega, lambda; S3 uses h, omega, Lambda. H3 data and
// umbilic grids fall back to the direct route.
QField bryant_q(const FundamentalData& data, const CongruenceGrid& Y);

double holomorphy_residual(const Field<cd>& Q);

struct HolomorphyIdentity {
    double lhs_max = 0;   // max |Q_zbar|
    double residual = 0;  // max |Q_zbar - (W_z omega - W (omega e^{-2L})_z e^{2L})|
};
// S3 data only.
HolomorphyIdentity holomorphy_identity(const FundamentalData& s3data, const Field<cd>& Q);

constexpr double kWitnessDegenerate = 1e-7;
// max |Im(conj(omega)^2 Q)| / max |conj(omega)^2 Q|; 0 when |Q| e^{4L} / |omega|^4 stays below the
// floor on the given fraction of interior nodes.
double isothermic_witness(const FundamentalData& s3data, const Field<cd>& Q, double fraction = 0.99);

struct KappaResult {
    // (W^2 - conj(omega)^2 e^{-4L} Q) / (|omega|^6 e^{-8L}): real part, chart- and Moebius-invariant.
    Field<double> field;
    std::optional<int> kappa;
    double positive = 0, negative = 0, zero = 0;  // node fractions
};
KappaResult classification_value(const FundamentalData& s3data, const Field<cd>& Q, double noise_floor = 1e-7,
                                 double fraction = 0.99);

struct HyperplaneFit {
    Vec5 v = Vec5::Zero();  // unit euclidean norm
    double eta = 0;
    double residual = 0;    // RMS of <Y_i, v> - eta
    double lorentz_norm = 0;
    VectorType type = VectorType::lightlike;
    bool linear = false;
};
HyperplaneFit hyperplane_fit(const Field<Vec5>& Y, double lightlike_tol = 1e-6, double linear_tol = 1e-6);

struct Tolerances {
    double holomorphy = 1e-3;
    double isothermic = 1e-6;
    double kappa_floor = 1e-7;
    double kappa_fraction = 0.99;
    double willmore = 1e-4;
    double lightlike = 1e-6;
    double linear = 1e-6;
    double fit = 1e-6;
};

struct ClassificationReport {
    std::string surface;
    std::vector<ParamInfo> params;
    int grid = 0;
    double willmore_residual = 0;
    double q_holomorphy = 0;
    double q_agreement = NAN;
    HolomorphyIdentity identity;
    double isothermic_witness = 0;
    std::optional<int> kappa;
    HyperplaneFit hyperplane;
    std::string verdict;
    std::string diagnostics;

    bool determinate() const { return verdict != "indeterminate" && verdict != "inconsistent"; }
};

std::string space_name(int kappa);
int kappa_for_type(VectorType t);

// Classifies a sampled surface; `M` is applied in S3 before the analysis.
ClassificationReport classify(const ChartGrid& grid, const Tolerances& tol = {}, const std::optional<Mat5>& M = {});
ClassificationReport classify(const SurfaceSpec& spec, int n, const Tolerances& tol = {},
                              const std::optional<Mat5>& M = {}, const std::optional<Domain>& domain = {});

// Fixed field order, 17 significant digits.
ojson report_json(const ClassificationReport& r);
std::string to_json(const ClassificationReport& r, int indent = 2);

}  // namespace confgauss
