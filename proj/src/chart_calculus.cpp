#include "confgauss/chart_calculus.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace confgauss {

namespace {

struct NodeJet {
    Vec4 x, xu, xv, xuu, xuv, xvv;
};

NodeJet unpack(const Jet4& j) {
    NodeJet o;
    for (int k = 0; k < 4; ++k) {
        o.x[k] = j[k].f;
        o.xu[k] = j[k].fu;
        o.xv[k] = j[k].fv;
        o.xuu[k] = j[k].fuu;
        o.xuv[k] = j[k].fuv;
        o.xvv[k] = j[k].fvv;
    }
    return o;
}

template <class T>
T det3(const T& a0, const T& a1, const T& a2, const T& b0, const T& b1, const T& b2, const T& c0, const T& c1,
       const T& c2) {
    return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
}

// w with <w, d> = det[a; b; c; d] (Euclidean pairing).
template <class T>
std::array<T, 4> cross4(const std::array<T, 4>& a, const std::array<T, 4>& b, const std::array<T, 4>& c) {
    std::array<T, 4> w;
    const int cols[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    for (int i = 0; i < 4; ++i) {
        const int* k = cols[i];
        const T m = det3(a[k[0]], a[k[1]], a[k[2]], b[k[0]], b[k[1]], b[k[2]], c[k[0]], c[k[1]], c[k[2]]);
        w[i] = (i % 2 == 1) ? m : -m;  // cofactor sign (-1)^(3+i)
    }
    return w;
}

template <class T>
T product(Model m, const std::array<T, 4>& a, const std::array<T, 4>& b) {
    const T s = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    return m == Model::H3 ? s - a[3] * b[3] : s + a[3] * b[3];
}

// Unit normal as a first-order jet: inputs carry (value, d_u, d_v).
std::array<Jet2, 4> normal_jet(Model m, const std::array<Jet2, 4>& x, const std::array<Jet2, 4>& xu,
                               const std::array<Jet2, 4>& xv) {
    std::array<Jet2, 4> w;
    if (m == Model::R3) {
        w = {xu[1] * xv[2] - xu[2] * xv[1], xu[2] * xv[0] - xu[0] * xv[2], xu[0] * xv[1] - xu[1] * xv[0], Jet2(0.0)};
    } else {
        w = cross4(x, xu, xv);
        if (m == Model::H3) w = {-w[0], -w[1], -w[2], w[3]};  // raise index, then flip orientation
    }
    const Jet2 w2 = product(m, w, w);
    if (!(w2.f > 0)) throw GeometryError("degenerate jet");
    const Jet2 inv = recip(sqrt(w2));
    for (auto& c : w) c = c * inv;
    return w;
}

}  // namespace

double ambient_product(Model m, const Vec4& a, const Vec4& b) {
    return m == Model::H3 ? minkowski31(a, b) : a.dot(b);
}

cd ambient_product(Model m, const CVec4& a, const CVec4& b) {
    cd s = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    return m == Model::H3 ? s - a[3] * b[3] : s + a[3] * b[3];
}

ChartGrid push_jets(const ChartGrid& g, Model target, const std::function<Jet4(const Jet4&)>& f) {
    ChartGrid out;
    out.model = target;
    out.jets = g.jets.map(f);
    return out;
}

ChartGrid to_model(const ChartGrid& g, Model target) {
    if (g.model == target) return g;
    switch (g.model) {
        case Model::R3:
            if (target == Model::S3) return push_jets(g, target, [](const Jet4& x) { return stereo_inv(x); });
            return push_jets(g, target, [](const Jet4& x) { return hyper_inv(x); });
        case Model::S3: {
            for (const auto& j : g.jets.data)
                if (1.0 - j[3].f <= 1e-12) throw GeometryError("surface passes through the north pole");
            ChartGrid r3 = push_jets(g, Model::R3, [](const Jet4& x) { return stereo(x); });
            return target == Model::R3 ? r3 : to_model(r3, target);
        }
        case Model::H3: {
            ChartGrid r3 = push_jets(g, Model::R3, [](const Jet4& x) { return hyper(x); });
            return target == Model::R3 ? r3 : to_model(r3, target);
        }
    }
    return g;
}

bool FundamentalData::any_umbilic() const {
    return std::any_of(umbilic.data.begin(), umbilic.data.end(), [](char c) { return c != 0; });
}

PointData FundamentalData::at(int i, int j) const {
    PointData p;
    p.pos = pos(i, j);
    p.normal = normal(i, j);
    p.lambda = lambda(i, j);
    p.H = H(i, j);
    p.Omega = Omega(i, j);
    return p;
}

double FundamentalData::a_coef(int i, int j) const { return Omega(i, j).real() / e2l(i, j); }
double FundamentalData::phi_coef(int i, int j) const { return -Omega(i, j).imag() / e2l(i, j); }

FundamentalData fundamental_data(const ChartGrid& grid) {
    const int n = grid.n();
    const Domain& d = grid.domain();
    const Model m = grid.model;
    stencil::require_size(n);
    FundamentalData fd;
    fd.model = m;
    fd.pos = fd.xu = fd.xv = fd.xzzb = fd.normal = Field<Vec4>(n, d);
    fd.xz = fd.xzz = fd.normal_z = Field<CVec4>(n, d);
    fd.lambda_z = Field<cd>(n, d);
    fd.lambda = fd.e2l = fd.H = Field<double>(n, d);
    fd.Omega = Field<cd>(n, d);
    fd.umbilic = Field<char>(n, d, 0);
    const cd I(0, 1);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Jet4& g = grid.jets(i, j);
            const NodeJet q = unpack(g);
            if (!q.x.allFinite()) throw GeometryError("degenerate jet");
            // First-order jets of x, x_u, x_v carry everything up to the 2-jet of the immersion.
            std::array<Jet2, 4> x, xu, xv;
            for (int k = 0; k < 4; ++k) {
                x[k] = Jet2(g[k].f, g[k].fu, g[k].fv, 0, 0, 0);
                xu[k] = Jet2(g[k].fu, g[k].fuu, g[k].fuv, 0, 0, 0);
                xv[k] = Jet2(g[k].fv, g[k].fuv, g[k].fvv, 0, 0, 0);
            }
            const Jet2 e2l = 0.5 * (product(m, xu, xu) + product(m, xv, xv));
            if (!(e2l.f > 1e-14)) throw GeometryError("degenerate jet");
            const std::array<Jet2, 4> nj = normal_jet(m, x, xu, xv);

            Vec4 nrm;
            CVec4 nz;
            for (int k = 0; k < 4; ++k) {
                nrm[k] = nj[k].f;
                nz[k] = 0.5 * cd(nj[k].fu, -nj[k].fv);
            }
            if (!nrm.allFinite()) throw GeometryError("degenerate jet");

            const double a11 = ambient_product(m, q.xuu, nrm);
            const double a22 = ambient_product(m, q.xvv, nrm);
            const double a12 = ambient_product(m, q.xuv, nrm);

            fd.pos(i, j) = q.x;
            fd.xu(i, j) = q.xu;
            fd.xv(i, j) = q.xv;
            fd.xz(i, j) = 0.5 * (q.xu.cast<cd>() - I * q.xv.cast<cd>());
            fd.xzz(i, j) = 0.25 * ((q.xuu - q.xvv).cast<cd>() - 2.0 * I * q.xuv.cast<cd>());
            fd.xzzb(i, j) = 0.25 * (q.xuu + q.xvv);
            fd.e2l(i, j) = e2l.f;
            fd.lambda(i, j) = 0.5 * std::log(e2l.f);
            fd.lambda_z(i, j) = 0.25 * cd(e2l.fu, -e2l.fv) / e2l.f;
            fd.normal(i, j) = nrm;
            fd.normal_z(i, j) = nz;
            fd.H(i, j) = (a11 + a22) / (2 * e2l.f);
            fd.Omega(i, j) = 0.5 * cd(a11 - a22, -2 * a12);
            fd.umbilic(i, j) = std::abs(fd.Omega(i, j)) <= kUmbilicTol * e2l.f;
        }
    }
    return fd;
}

Field<cd> gauss_codazzi_residual(const FundamentalData& data) {
    const Field<cd> om_zb = dzbar(data.Omega);
    const Field<cd> h_z = dz(data.H);
    Field<cd> r(data.n(), data.domain());
    for (std::size_t k = 0; k < r.data.size(); ++k) r.data[k] = om_zb.data[k] / data.e2l.data[k] - h_z.data[k];
    return r;
}

StructureResiduals structure_residuals(const FundamentalData& data) {
    const Field<CVec4>& n_z = data.normal_z;
    const Field<cd>& l_z = data.lambda_z;
    const double sphere_sign = data.model == Model::S3 ? -1.0 : (data.model == Model::H3 ? 1.0 : 0.0);
    StructureResiduals out;
    const int n = data.n();
    for (int i = kBoundaryBand; i < n - kBoundaryBand; ++i) {
        for (int j = kBoundaryBand; j < n - kBoundaryBand; ++j) {
            const double e2l = data.e2l(i, j), H = data.H(i, j);
            const cd Om = data.Omega(i, j);
            const CVec4 xz = data.xz(i, j);
            const CVec4 xzb = xz.conjugate();
            const CVec4 nn = data.normal(i, j).cast<cd>();
            const CVec4 x = data.pos(i, j).cast<cd>();

            const CVec4 r1 = n_z(i, j) + H * xz + (Om / e2l) * xzb;
            const CVec4 r2 = data.xzzb(i, j).cast<cd>() - (H * e2l / 2) * nn - (sphere_sign * e2l / 2) * x;
            const CVec4 r3 = data.xzz(i, j) - 2.0 * l_z(i, j) * xz - (Om / 2.0) * nn;
            out.normal_derivative = std::max(out.normal_derivative, r1.norm());
            out.laplacian = std::max(out.laplacian, r2.norm());
            out.hessian = std::max(out.hessian, r3.norm());
        }
    }
    return out;
}

double conformality_defect(const ChartGrid& grid) {
    double worst = 0;
    for (const auto& j : grid.jets.data) {
        const NodeJet q = unpack(j);
        const double a = ambient_product(grid.model, q.xu, q.xu), b = ambient_product(grid.model, q.xv, q.xv);
        const double c = ambient_product(grid.model, q.xu, q.xv);
        // <x_z, x_z> = (a - b - 2ic)/4, <x_z, x_zbar> = (a + b)/4
        worst = std::max(worst, std::hypot(a - b, 2 * c) / (a + b));
    }
    return worst;
}

void write_csv_rows(const std::string& path, const Domain& dom, int n, const std::vector<std::string>& columns,
                    const std::function<std::vector<double>(int, int)>& row) {
    std::ofstream os(path);
    if (!os) throw GeometryError("cannot open " + path + " for writing");
    os << "u,v";
    for (const auto& c : columns) os << ',' << c;
    os << '\n';
    os << std::setprecision(17);
    const double hu = (dom.u1 - dom.u0) / (n - 1), hv = (dom.v1 - dom.v0) / (n - 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            os << dom.u0 + i * hu << ',' << dom.v0 + j * hv;
            for (double x : row(i, j)) os << ',' << x;
            os << '\n';
        }
    }
}

}  // namespace confgauss
