#include "confgauss/willmore_laws.hpp"

#include <cmath>

namespace confgauss {

namespace {

template <class F>
void for_interior(int n, F f) {
    for (int i = kBoundaryBand; i < n - kBoundaryBand; ++i)
        for (int j = kBoundaryBand; j < n - kBoundaryBand; ++j) f(i, j);
}

Field<double> s3_mean_curvature_by_transfer(const FundamentalData& d, Field<cd>& omega, Field<double>& e2L) {
    Field<double> h(d.n(), d.domain());
    omega = Field<cd>(d.n(), d.domain());
    e2L = Field<double>(d.n(), d.domain());
    for (std::size_t k = 0; k < h.data.size(); ++k) {
        PointData p;
        p.pos = d.pos.data[k];
        p.normal = d.normal.data[k];
        p.lambda = d.lambda.data[k];
        p.H = d.H.data[k];
        p.Omega = d.Omega.data[k];
        const PointData t = transfer_r3_to_s3(p);
        h.data[k] = t.H;
        omega.data[k] = t.Omega;
        e2L.data[k] = std::exp(2 * t.lambda);
    }
    return h;
}

Vec3 v3(const Vec4& x) { return x.head<3>(); }

}  // namespace

Field<double> willmore_field(const Field<double>& H, const Field<cd>& Omega, const Field<double>& e2l) {
    Field<double> W = dzzbar(H);
    for (std::size_t k = 0; k < W.data.size(); ++k)
        W.data[k] += 0.5 * std::norm(Omega.data[k]) / e2l.data[k] * H.data[k];
    return W;
}

Field<double> willmore_field(const FundamentalData& data) { return willmore_field(data.H, data.Omega, data.e2l); }

WillmoreFields willmore_operator(const FundamentalData& data) {
    WillmoreFields w;
    if (data.model == Model::R3) {
        w.W_phi = willmore_field(data);
        w.has_phi = true;
        Field<cd> omega;
        Field<double> e2L;
        const Field<double> h = s3_mean_curvature_by_transfer(data, omega, e2L);
        w.W_s3 = willmore_field(h, omega, e2L);
    } else if (data.model == Model::S3) {
        w.W_s3 = willmore_field(data);
    } else {
        throw GeometryError("Willmore operator: R3 or S3 data required");
    }
    return w;
}

Field<double> harmonicity_residual(const CongruenceGrid& Y) {
    Field<double> r(Y.Y.n, Y.Y.dom);
    for (std::size_t k = 0; k < r.data.size(); ++k)
        r.data[k] = (4 * Y.Yzzb.data[k] + 2 * Y.e2L.data[k] * Y.Y.data[k]).norm();
    return r;
}

MuPair conserved_matrix(const CongruenceGrid& Y) {
    MuPair mu{Mat5Field(Y.Y.n, Y.Y.dom), Mat5Field(Y.Y.n, Y.Y.dom)};
    for (std::size_t k = 0; k < Y.Y.data.size(); ++k) {
        const Vec5& y = Y.Y.data[k];
        const Vec5 yu = 2 * Y.Yz.data[k].real();
        const Vec5 yv = -2 * Y.Yz.data[k].imag();
        mu.u.data[k] = yu * y.transpose() - y * yu.transpose();
        mu.v.data[k] = yv * y.transpose() - y * yv.transpose();
    }
    return mu;
}

ConservedSet direct_currents(const FundamentalData& d) {
    if (d.model != Model::R3) throw GeometryError("conserved currents require R3 data");
    const int n = d.n();
    const Domain& dom = d.domain();
    const Field<double> Hu = d_u(d.H), Hv = d_v(d.H);
    auto vec = [&] { return VectorCurrent{Field<Vec3>(n, dom), Field<Vec3>(n, dom)}; };
    ConservedSet c{vec(), vec(), vec(), vec(), ScalarCurrent{Field<double>(n, dom), Field<double>(n, dom)}};
    double plus = 0, minus = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Vec3 phi = v3(d.pos(i, j)), nn = v3(d.normal(i, j));
            const Vec3 pu = v3(d.xu(i, j)), pv = v3(d.xv(i, j));
            const double H = d.H(i, j), a = d.a_coef(i, j), f = d.phi_coef(i, j);
            const Vec3 an[2] = {a * pu + f * pv, f * pu - a * pv};  // Å grad Phi
            const Vec3 perp[2] = {-pv, pu};                        // grad-perp Phi
            const double gH[2] = {Hu(i, j), Hv(i, j)};
            const CVec4 nz = d.normal_z(i, j);
            const Vec3 ngrad[2] = {2 * v3(nz.real()), -2 * v3(nz.imag())};
            const Vec3 nperp[2] = {-ngrad[1], ngrad[0]};
            for (int k = 0; k < 2; ++k) {
                const Vec3 tra = -2 * (gH[k] * nn + H * an[k]);
                const double dil = tra.dot(phi);
                const Vec3 rot = phi.cross(tra) + 2 * H * perp[k];
                const Vec3 rot_t = phi.cross(tra) + 2 * an[k].cross(nn);
                const Vec3 inv = phi.squaredNorm() * tra - 2 * dil * phi + 4 * phi.cross(nn.cross(an[k]));
                (k == 0 ? c.tra.u : c.tra.v)(i, j) = tra;
                (k == 0 ? c.dil.u : c.dil.v)(i, j) = dil;
                (k == 0 ? c.rot.u : c.rot.v)(i, j) = rot;
                (k == 0 ? c.rot_tilde.u : c.rot_tilde.v)(i, j) = rot_t;
                (k == 0 ? c.inv.u : c.inv.v)(i, j) = inv;
                if (i >= kBoundaryBand && i < n - kBoundaryBand && j >= kBoundaryBand && j < n - kBoundaryBand) {
                    plus = std::max(plus, (rot_t - (rot + 2 * nperp[k])).norm());
                    minus = std::max(minus, (rot_t - (rot - 2 * nperp[k])).norm());
                }
            }
        }
    }
    c.rot_plus_residual = plus;
    c.rot_minus_residual = minus;
    const Field<double> W = willmore_field(d);
    c.off_shell = interior_max(W) > 1e-5;
    return c;
}

VectorCurrent translation_current_alt(const FundamentalData& d) {
    if (d.model != Model::R3) throw GeometryError("conserved currents require R3 data");
    const Field<double> Hu = d_u(d.H), Hv = d_v(d.H);
    const Field<Vec4> nu = d_u(d.normal), nv = d_v(d.normal);
    VectorCurrent c{Field<Vec3>(d.n(), d.domain()), Field<Vec3>(d.n(), d.domain())};
    for (std::size_t k = 0; k < c.u.data.size(); ++k) {
        const Vec3 nn = v3(d.normal.data[k]), a = v3(nu.data[k]), b = v3(nv.data[k]);
        const double H = d.H.data[k];
        c.u.data[k] = -2 * Hu.data[k] * nn + H * a + H * (-b).cross(nn);
        c.v.data[k] = -2 * Hv.data[k] * nn + H * b + H * a.cross(nn);
    }
    return c;
}

ConservedSet extract_from_mu(const MuPair& mu, bool off_shell) {
    const int n = mu.u.n;
    const Domain& dom = mu.u.dom;
    auto vec = [&] { return VectorCurrent{Field<Vec3>(n, dom), Field<Vec3>(n, dom)}; };
    ConservedSet c{vec(), vec(), vec(), vec(), ScalarCurrent{Field<double>(n, dom), Field<double>(n, dom)}};
    c.off_shell = off_shell;
    for (int k = 0; k < 2; ++k) {
        const Mat5Field& m = k == 0 ? mu.u : mu.v;
        for (std::size_t q = 0; q < m.data.size(); ++q) {
            const Mat5& M = m.data[q];
            const Vec3 a = M.block<3, 1>(0, 3), b = M.block<3, 1>(0, 4);
            const Mat3 U = 2 * M.topLeftCorner<3, 3>();
            (k == 0 ? c.tra.u : c.tra.v).data[q] = 2 * (b - a);
            (k == 0 ? c.inv.u : c.inv.v).data[q] = 2 * (a + b);
            (k == 0 ? c.dil.u : c.dil.v).data[q] = 2 * M(3, 4);
            (k == 0 ? c.rot_tilde.u : c.rot_tilde.v).data[q] = Vec3(U(2, 1), U(0, 2), U(1, 0));
            (k == 0 ? c.rot.u : c.rot.v).data[q] = Vec3::Constant(NAN);
        }
    }
    return c;
}

double divergence_residual(const VectorCurrent& c) {
    const Field<Vec3> a = d_u(c.u), b = d_v(c.v);
    return interior_max(zip(a, b, [](const Vec3& x, const Vec3& y) -> Vec3 { return x + y; }));
}

double divergence_residual(const ScalarCurrent& c) {
    const Field<double> a = d_u(c.u), b = d_v(c.v);
    return interior_max(zip(a, b, [](double x, double y) { return x + y; }));
}

double max_difference(const VectorCurrent& a, const VectorCurrent& b, double sign) {
    double m = 0;
    for_interior(a.u.n, [&](int i, int j) {
        m = std::max({m, (a.u(i, j) - sign * b.u(i, j)).norm(), (a.v(i, j) - sign * b.v(i, j)).norm()});
    });
    return m;
}

double max_difference(const ScalarCurrent& a, const ScalarCurrent& b, double sign) {
    double m = 0;
    for_interior(a.u.n, [&](int i, int j) {
        m = std::max({m, std::abs(a.u(i, j) - sign * b.u(i, j)), std::abs(a.v(i, j) - sign * b.v(i, j))});
    });
    return m;
}

double max_difference(const MuPair& a, const MuPair& b) {
    double m = 0;
    for_interior(a.u.n, [&](int i, int j) {
        m = std::max({m, (a.u(i, j) - b.u(i, j)).cwiseAbs().maxCoeff(),
                      (a.v(i, j) - b.v(i, j)).cwiseAbs().maxCoeff()});
    });
    return m;
}

MuPair conjugate(const Mat5& M, const MuPair& mu) {
    MuPair out{mu.u.map([&](const Mat5& x) -> Mat5 { return M * x * M.transpose(); }),
               mu.v.map([&](const Mat5& x) -> Mat5 { return M * x * M.transpose(); })};
    return out;
}

bool ExchangeReport::pass(double tol_currents, double tol_mu) const {
    return tra_to_inv <= tol_currents && inv_to_tra <= tol_currents && dil_flip <= tol_currents &&
           rot_fixed <= tol_currents && mu_conjugation <= tol_mu;
}

ExchangeReport inversion_exchange_check(const ChartGrid& grid) {
    if (grid.model != Model::R3) throw GeometryError("inversion exchange requires an R3 surface");
    double rmin = INFINITY;
    for (const auto& j : grid.jets.data)
        rmin = std::min(rmin, std::sqrt(j[0].f * j[0].f + j[1].f * j[1].f + j[2].f * j[2].f));
    if (rmin <= 1e-6) throw GeometryError("inversion center on surface");
    const Mat5 Mi = inversion();
    const ChartGrid inv = push_jets(grid, Model::R3, [&](const Jet4& x) { return act_on_r3(Mi, x); });
    const FundamentalData d0 = fundamental_data(grid), d1 = fundamental_data(inv);
    const ConservedSet c0 = direct_currents(d0), c1 = direct_currents(d1);
    ExchangeReport r;
    r.tra_to_inv = max_difference(c1.tra, c0.inv);
    r.inv_to_tra = max_difference(c1.inv, c0.tra);
    r.dil_flip = max_difference(c1.dil, c0.dil, -1.0);
    r.rot_fixed = max_difference(c1.rot_tilde, c0.rot_tilde);
    const MuPair mu0 = conserved_matrix(conformal_gauss_map(d0));
    const MuPair mu1 = conserved_matrix(conformal_gauss_map(d1));
    r.mu_conjugation = max_difference(mu1, conjugate(Mi, mu0));
    return r;
}

}  // namespace confgauss
