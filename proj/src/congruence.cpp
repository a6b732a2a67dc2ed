#include "confgauss/congruence.hpp"

#include <cmath>

#include "confgauss/willmore_laws.hpp"

namespace confgauss {

namespace {

// Hermitian Lorentz pairing <a, conj(b)>.
double lorentz_hermitian(const CVec5& a) {
    double s = 0;
    for (int k = 0; k < 4; ++k) s += std::norm(a[k]);
    return s - std::norm(a[4]);
}

CVec5 to_c5(const Vec5& v) { return v.cast<cd>(); }

template <class F>
void for_interior(int n, F f) {
    for (int i = kBoundaryBand; i < n - kBoundaryBand; ++i)
        for (int j = kBoundaryBand; j < n - kBoundaryBand; ++j) f(i, j);
}

}  // namespace

Vec5 gauss_map_point(Model m, const PointData& d) {
    const ModelPoint pt = m == Model::R3   ? ModelPoint(R3Point::at(d.pos.head<3>()))
                          : m == Model::S3 ? ModelPoint(S3Point{d.pos})
                                           : ModelPoint(H3Point{d.pos});
    Vec5 Y = d.H * lift(pt);
    switch (m) {
        case Model::R3: {
            const double np = d.normal.head<3>().dot(d.pos.head<3>());
            Y += (Vec5() << d.normal.head<3>(), np, np).finished();
            break;
        }
        case Model::S3: Y += (Vec5() << d.normal, 0.0).finished(); break;
        case Model::H3: Y += (Vec5() << d.normal.head<3>(), 0.0, d.normal[3]).finished(); break;
    }
    return Y;
}

double mean_curvature_from_y(Model m, const Vec5& Y) {
    switch (m) {
        case Model::R3: return Y[4] - Y[3];
        case Model::S3: return Y[4];
        case Model::H3: return -Y[3];
    }
    return 0;
}

CongruenceGrid congruence_from_field(const Field<Vec5>& Y) {
    CongruenceGrid c;
    c.Y = Y;
    c.Yz = dz(Y);
    c.Yzz = dzz(Y);
    c.Yzzb = dzzbar(Y);
    c.e2L = c.Yz.map([](const CVec5& a) { return 2 * lorentz_hermitian(a); });
    return c;
}

CongruenceGrid conformal_gauss_map(const FundamentalData& data) {
    Field<Vec5> Y(data.n(), data.domain());
    for (int i = 0; i < data.n(); ++i)
        for (int j = 0; j < data.n(); ++j) Y(i, j) = gauss_map_point(data.model, data.at(i, j));
    return congruence_from_field(Y);
}

LiftField lift_field(const FundamentalData& data) {
    const int n = data.n();
    LiftField L{Field<Vec5>(n, data.domain()), Field<Vec5>(n, data.domain()), Field<Vec5>(n, data.domain())};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Vec4 x = data.pos(i, j), xu = data.xu(i, j), xv = data.xv(i, j);
            switch (data.model) {
                case Model::R3: {
                    const Vec3 p = x.head<3>();
                    const double r2 = p.squaredNorm(), a = p.dot(xu.head<3>()), b = p.dot(xv.head<3>());
                    L.p(i, j) << p, 0.5 * (r2 - 1), 0.5 * (r2 + 1);
                    L.pu(i, j) << xu.head<3>(), a, a;
                    L.pv(i, j) << xv.head<3>(), b, b;
                    break;
                }
                case Model::S3:
                    L.p(i, j) << x, 1.0;
                    L.pu(i, j) << xu, 0.0;
                    L.pv(i, j) << xv, 0.0;
                    break;
                case Model::H3:
                    L.p(i, j) << x.head<3>(), -1.0, x[3];
                    L.pu(i, j) << xu.head<3>(), 0.0, xu[3];
                    L.pv(i, j) << xv.head<3>(), 0.0, xv[3];
                    break;
            }
        }
    }
    return L;
}

LiftField lift_field(Model m, const Field<Vec4>& pos) {
    Field<Vec5> p(pos.n, pos.dom);
    for (std::size_t k = 0; k < pos.data.size(); ++k) {
        const Vec4& x = pos.data[k];
        switch (m) {
            case Model::R3: {
                const double r2 = x.head<3>().squaredNorm();
                p.data[k] << x.head<3>(), 0.5 * (r2 - 1), 0.5 * (r2 + 1);
                break;
            }
            case Model::S3: p.data[k] << x, 1.0; break;
            case Model::H3: p.data[k] << x.head<3>(), -1.0, x[3]; break;
        }
    }
    return {p, d_u(p), d_v(p)};
}

EnvelopeResiduals envelope_residuals(const Field<Vec5>& Y, const LiftField& L) {
    EnvelopeResiduals r;
    for_interior(Y.n, [&](int i, int j) {
        r.contact = std::max(r.contact, std::abs(lorentz_product(Y(i, j), L.p(i, j))));
        r.tangency = std::max({r.tangency, std::abs(lorentz_product(Y(i, j), L.pu(i, j))),
                               std::abs(lorentz_product(Y(i, j), L.pv(i, j)))});
    });
    return r;
}

double metric_law_residual(const CongruenceGrid& Y, const FundamentalData& data) {
    double worst = 0;
    for_interior(Y.Y.n, [&](int i, int j) {
        const double expected = std::norm(data.Omega(i, j)) / data.e2l(i, j);
        const CVec5& yz = Y.Yz(i, j);
        worst = std::max(worst, std::abs(Y.e2L(i, j) - expected) + std::abs(lorentz_product(yz, yz)));
    });
    return worst;
}

double conformality_residual(const CongruenceGrid& Y, const FundamentalData& data) {
    double worst = 0;
    for_interior(Y.Y.n, [&](int i, int j) {
        if (data.umbilic(i, j)) return;
        worst = std::max(worst, std::abs(lorentz_product(Y.Yz(i, j), Y.Yz(i, j))) / Y.e2L(i, j));
    });
    return worst;
}

void require_no_umbilic(const FundamentalData& data, const std::string& what) {
    if (data.any_umbilic()) throw GeometryError(what + ": surface has umbilic points");
}

Field<Vec4> dual_surface_r3(const FundamentalData& data) {
    if (data.model != Model::R3) throw GeometryError("dual undefined: R3 data required");
    if (data.any_umbilic()) throw GeometryError("dual undefined: umbilic points");
    const Field<cd> Hz = dz(data.H);
    Field<Vec4> out(data.n(), data.domain());
    for (std::size_t k = 0; k < out.data.size(); ++k) {
        const double e2l = data.e2l.data[k], H = data.H.data[k];
        const cd Om = data.Omega.data[k], hz = Hz.data[k];
        const double om2 = std::norm(Om) / e2l;  // |Omega|^2 e^{-2 lambda}
        const double T = 4 * std::norm(hz) + H * H * om2;
        const double scale = std::norm(Om) * std::norm(Om) / (e2l * e2l * e2l);
        if (!(T > 1e-12 * scale)) throw GeometryError("dual undefined: T(Phi) vanishes");
        const CVec4 tz = (-4.0 * hz * std::conj(Om) / e2l / T) * data.xz.data[k];
        out.data[k] = data.pos.data[k] + 2.0 * tz.real() + (2 * H * om2 / T) * data.normal.data[k];
    }
    return out;
}

Field<Vec4> dual_surface_s3(const FundamentalData& data) {
    if (data.model != Model::S3) throw GeometryError("dual undefined: S3 data required");
    if (data.any_umbilic()) throw GeometryError("dual undefined: umbilic points");
    const Field<cd> hz = dz(data.H);
    Field<Vec4> out(data.n(), data.domain());
    for (std::size_t k = 0; k < out.data.size(); ++k) {
        const double e2L = data.e2l.data[k], h = data.H.data[k];
        const cd om = data.Omega.data[k], z = hz.data[k];
        const double w2 = std::norm(om), g = 4 * std::norm(z) * e2L;
        const double T = w2 * (1 + h * h) + g;
        const double alpha = (h * h * w2 + g - w2) / T;
        const cd beta = -4.0 * z * std::conj(om) / T;
        const double gamma = 2 * w2 * h / T;
        out.data[k] = alpha * data.pos.data[k] + 2.0 * (beta * data.xz.data[k]).real() + gamma * data.normal.data[k];
    }
    return out;
}

DualConformality dual_conformality(const FundamentalData& s3, const Field<Vec4>& xstar) {
    if (s3.model != Model::S3) throw GeometryError("S3 data required");
    const Field<CVec4> xsz = dz(xstar);
    const Field<double> W = willmore_field(s3);
    const Field<cd> hz = dz(s3.H);
    const Field<cd> ratio = zip(dz(s3.Omega), s3.Omega, [](cd a, cd b) { return a / b; });
    const Field<cd> ratio_zb = dzbar(ratio);
    DualConformality out{Field<cd>(s3.n(), s3.domain()), Field<cd>(s3.n(), s3.domain()), {}};
    double scale = 0;
    for (std::size_t k = 0; k < xsz.data.size(); ++k) {
        const CVec4& a = xsz.data[k];
        out.defect.data[k] = a.transpose() * a;
        const double e2L = s3.e2l.data[k], h = s3.H.data[k];
        const cd om = s3.Omega.data[k];
        const double T = std::norm(om) * (1 + h * h) + 4 * std::norm(hz.data[k]) * e2L;
        out.prediction.data[k] =
            16.0 * om * std::norm(om) * W.data[k] * (ratio_zb.data[k] + (h * h + 1) * e2L / 4) / (T * T);
        scale = std::max(scale, a.squaredNorm());
    }
    for_interior(xsz.n, [&](int i, int j) {
        if (xsz(i, j).squaredNorm() <= 1e-12 * scale) out.near_branch.emplace_back(i, j);
    });
    return out;
}

IsotropicFrame isotropic_frame(const FundamentalData& s3, const CongruenceGrid& Y) {
    if (s3.model != Model::S3) throw GeometryError("isotropic frame requires S3 data");
    require_no_umbilic(s3, "isotropic frame");
    const Field<Vec4> xs = dual_surface_s3(s3);
    const Field<double> W = willmore_field(s3);
    const Field<cd> omz = dz(s3.Omega);
    const Field<cd> ratio_zb = dzbar(zip(omz, s3.Omega, [](cd a, cd b) { return a / b; }));
    const Field<cd> omzb = dzbar(s3.Omega);
    const int n = s3.n();
    const Domain& d = s3.domain();
    IsotropicFrame f{Field<Vec5>(n, d), Field<Vec5>(n, d), Field<double>(n, d), Field<double>(n, d),
                     Field<double>(n, d), Field<cd>(n, d), Field<cd>(n, d), Field<cd>(n, d),
                     Field<double>(n, d), Field<cd>(n, d), Field<cd>(n, d)};
    for (std::size_t k = 0; k < xs.data.size(); ++k) {
        Vec5 nu, pstar;
        nu << s3.pos.data[k], 1.0;
        pstar << xs.data[k], 1.0;
        const double l = lorentz_product(nu, pstar);
        const Vec5 nustar = -pstar / l;
        const double e2L = Y.e2L.data[k];
        f.nu.data[k] = nu;
        f.nustar.data[k] = nustar;
        f.l.data[k] = l;
        f.H_nu.data[k] = 2 * lorentz_product(Y.Yzzb.data[k], nu) / e2L;
        f.H_nustar.data[k] = 2 * lorentz_product(Y.Yzzb.data[k], nustar) / e2L;
        f.Omega_nu.data[k] = 2.0 * lorentz_product(Y.Yzz.data[k], to_c5(nu));
        f.Omega_nustar.data[k] = 2.0 * lorentz_product(Y.Yzz.data[k], to_c5(nustar));
        CVec5 nuz;
        nuz << s3.xz.data[k], 0.0;
        f.nu_z_nustar.data[k] = lorentz_product(nuz, to_c5(nustar));

        const cd om = s3.Omega.data[k];
        const double lam2 = s3.e2l.data[k], h = s3.H.data[k];
        f.H_nustar_expected.data[k] = -2 * W.data[k] / (std::norm(om) / lam2);
        f.Omega_nustar_expected.data[k] = -2.0 * om / lam2 * (ratio_zb.data[k] + (h * h + 1) * lam2 / 4);
        f.nu_z_nustar_expected.data[k] = -std::conj(omzb.data[k]) / std::conj(om);
    }
    return f;
}

Field<Vec4> reconstruct_from_congruence(const CongruenceGrid& Y, const Field<Vec5>& nu0, double tol) {
    Field<Vec4> X(nu0.n, nu0.dom);
    double worst_h = 0;
    for (std::size_t k = 0; k < nu0.data.size(); ++k) {
        const Vec5& v = nu0.data[k];
        const double n2 = v.squaredNorm();
        if (n2 == 0.0) throw GeometryError("degenerate vector");
        if (std::abs(lorentz_product(v, v)) > 1e-8 * n2) throw GeometryError("candidate normal is not isotropic");
        if (std::abs(v[4]) <= 1e-12 * std::sqrt(n2)) throw GeometryError("candidate normal points at infinity");
        const Vec5 nh = v / v[4];
        const double e = std::sqrt(std::max(Y.e2L.data[k], 0.0));
        if (std::abs(lorentz_product(Y.Y.data[k], nh)) > 1e-6 * nh.norm() ||
            std::abs(lorentz_product(Y.Yz.data[k], to_c5(nh))) > 1e-6 * nh.norm() * std::max(e, 1e-300))
            throw GeometryError("candidate normal is not normal to the congruence");
        X.data[k] = nh.head<4>();
    }
    for_interior(nu0.n, [&](int i, int j) {
        const Vec5 nh = nu0(i, j) / nu0(i, j)[4];
        worst_h = std::max(worst_h, std::abs(2 * lorentz_product(Y.Yzzb(i, j), nh) / Y.e2L(i, j)));
    });
    if (worst_h > tol) throw GeometryError("not integrable");
    return X;
}

}  // namespace confgauss
