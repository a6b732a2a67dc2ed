#pragma once

#include "confgauss/congruence.hpp"

namespace confgauss {

// H_{z zbar} + |Omega|^2 e^{-2 lambda} H / 2 in the model of the data.
Field<double> willmore_field(const FundamentalData& data);
Field<double> willmore_field(const Field<double>& H, const Field<cd>& Omega, const Field<double>& e2l);

struct WillmoreFields {
    Field<double> W_phi;  // R3 gauge (only for R3 input)
    Field<double> W_s3;   // S3 gauge
    bool has_phi = false;
};
WillmoreFields willmore_operator(const FundamentalData& data);

// Pointwise euclidean norm of Delta Y + <grad Y . grad Y> Y.
Field<double> harmonicity_residual(const CongruenceGrid& Y);

using Mat5Field = Field<Mat5>;
struct MuPair {
    Mat5Field u, v;
};
MuPair conserved_matrix(const CongruenceGrid& Y);

struct VectorCurrent {
    Field<Vec3> u, v;
};
struct ScalarCurrent {
    Field<double> u, v;
};

struct ConservedSet {
    VectorCurrent tra, rot, rot_tilde, inv;
    ScalarCurrent dil;
    bool off_shell = false;
    // Direct route only: agreement of rot_tilde with V_rot + 2 grad-perp n and V_rot - 2 grad-perp n.
    double rot_plus_residual = NAN, rot_minus_residual = NAN;
    int rot_sign() const { return rot_plus_residual <= rot_minus_residual ? +1 : -1; }
};

ConservedSet direct_currents(const FundamentalData& data);
// Alternate translation current -2 grad H n + H grad n + H grad-perp n x n.
VectorCurrent translation_current_alt(const FundamentalData& data);
ConservedSet extract_from_mu(const MuPair& mu, bool off_shell = false);

double divergence_residual(const VectorCurrent& c);
double divergence_residual(const ScalarCurrent& c);
double max_difference(const VectorCurrent& a, const VectorCurrent& b, double sign = 1.0);
double max_difference(const ScalarCurrent& a, const ScalarCurrent& b, double sign = 1.0);
double max_difference(const MuPair& a, const MuPair& b);
MuPair conjugate(const Mat5& M, const MuPair& mu);  // M mu M^T

struct ExchangeReport {
    double tra_to_inv = 0;   // |V_tra,i - V_inv|
    double inv_to_tra = 0;   // |V_inv,i - V_tra|
    double dil_flip = 0;     // |V_dil,i + V_dil|
    double rot_fixed = 0;    // |rot~_i - rot~|
    double mu_conjugation = 0;
    bool pass(double tol_currents = 1e-4, double tol_mu = 1e-5) const;
};
// Compares the currents of an R3 surface with those of its image under x -> x/|x|^2.
ExchangeReport inversion_exchange_check(const ChartGrid& grid);

}  // namespace confgauss
