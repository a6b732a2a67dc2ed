#pragma once

#include "confgauss/chart_calculus.hpp"

namespace confgauss {

struct CongruenceGrid {
    Field<Vec5> Y;
    Field<CVec5> Yz;    // Y_zbar = conj(Y_z) since Y is real
    Field<CVec5> Yzz;   // direct second-derivative stencils
    Field<Vec5> Yzzb;
    Field<double> e2L;  // e^{2L} = 2 <Y_z, Y_zbar>
};

// Mean-curvature sphere at one point of a surface in the given model.
Vec5 gauss_map_point(Model m, const PointData& d);

// Derivative fields of an arbitrary congruence.
CongruenceGrid congruence_from_field(const Field<Vec5>& Y);
CongruenceGrid conformal_gauss_map(const FundamentalData& data);

// Mean curvature of the model read back from Y: Y5 - Y4 (R3), Y5 (S3), -Y4 (H3).
double mean_curvature_from_y(Model m, const Vec5& Y);

// Isotropic lift p of each node and its chart derivatives.
struct LiftField {
    Field<Vec5> p, pu, pv;
};
// Analytic derivatives from the jets.
LiftField lift_field(const FundamentalData& data);
// Derivatives by stencils, for fields such as dual surfaces.
LiftField lift_field(Model m, const Field<Vec4>& pos);

struct EnvelopeResiduals {
    double contact = 0;  // max |<Y, p>|
    double tangency = 0; // max |<Y, d p>|
};
EnvelopeResiduals envelope_residuals(const Field<Vec5>& Y, const LiftField& lift);

double metric_law_residual(const CongruenceGrid& Y, const FundamentalData& data);
// max |<Y_z, Y_z>| / e^{2L} over non-umbilic interior nodes.
double conformality_residual(const CongruenceGrid& Y, const FundamentalData& data);

void require_no_umbilic(const FundamentalData& data, const std::string& what);

Field<Vec4> dual_surface_r3(const FundamentalData& data);
Field<Vec4> dual_surface_s3(const FundamentalData& data);

struct DualConformality {
    Field<cd> defect;      // <X*_z, X*_z> by stencils
    Field<cd> prediction;  // closed form, vanishing for Willmore surfaces
    std::vector<std::pair<int, int>> near_branch;  // interior nodes with |X*_z| below threshold
};
DualConformality dual_conformality(const FundamentalData& s3data, const Field<Vec4>& xstar);

struct IsotropicFrame {
    Field<Vec5> nu, nustar;
    Field<double> l;
    Field<double> H_nu, H_nustar;
    Field<cd> Omega_nu, Omega_nustar;
    Field<cd> nu_z_nustar;  // <nu_z, nu*>
    // Closed-form predictions.
    Field<double> H_nustar_expected;
    Field<cd> Omega_nustar_expected, nu_z_nustar_expected;
};
IsotropicFrame isotropic_frame(const FundamentalData& s3data, const CongruenceGrid& Y);

// Recover the S3 surface enveloped by Y along a candidate isotropic normal field.
Field<Vec4> reconstruct_from_congruence(const CongruenceGrid& Y, const Field<Vec5>& nu0, double tol = 1e-5);

}  // namespace confgauss
