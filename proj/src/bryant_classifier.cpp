#include "confgauss/bryant_classifier.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>

#include "confgauss/json_io.hpp"

namespace confgauss {

namespace {

template <class F>
void for_interior(int n, F f) {
    for (int i = kBoundaryBand; i < n - kBoundaryBand; ++i)
        for (int j = kBoundaryBand; j < n - kBoundaryBand; ++j) f(i, j);
}

Field<cd> closed_form_q(const FundamentalData& d) {
    const bool s3 = d.model == Model::S3;
    const Field<cd> Hz = dz(d.H), Hzz = dzz(d.H);
    const Field<cd> oe = zip(d.Omega, d.e2l, [](cd w, double e) { return w / e; });
    const Field<cd> oez = dz(oe);
    Field<cd> Q(d.n(), d.domain());
    for (std::size_t k = 0; k < Q.data.size(); ++k) {
        const cd w = d.Omega.data[k];
        const double h = d.H.data[k];
        Q.data[k] = Hzz.data[k] * w - Hz.data[k] * oez.data[k] * d.e2l.data[k] + w * w * (h * h + (s3 ? 1.0 : 0.0)) / 4.0;
    }
    return Q;
}

}  // namespace

QField bryant_q(const FundamentalData& data, const CongruenceGrid& Y) {
    QField q;
    q.direct = Field<cd>(Y.Y.n, Y.Y.dom);
    for (std::size_t k = 0; k < q.direct.data.size(); ++k) q.direct.data[k] = lorentz_product(Y.Yzz.data[k], Y.Yzz.data[k]);
    if (data.model == Model::H3 || data.any_umbilic()) {
        q.value = q.direct;
        q.direct_only = true;
        return q;
    }
    q.value = closed_form_q(data);
    q.agreement = max_difference(q.value, q.direct);
    return q;
}

double holomorphy_residual(const Field<cd>& Q) { return interior_max(dzbar(Q)); }

HolomorphyIdentity holomorphy_identity(const FundamentalData& s3, const Field<cd>& Q) {
    if (s3.model != Model::S3) throw GeometryError("holomorphy identity requires S3 data");
    const Field<double> W = willmore_field(s3);
    const Field<cd> Wz = dz(W);
    const Field<cd> oez = dz(zip(s3.Omega, s3.e2l, [](cd w, double e) { return w / e; }));
    const Field<cd> Qzb = dzbar(Q);
    HolomorphyIdentity r;
    for_interior(Q.n, [&](int i, int j) {
        const cd rhs = Wz(i, j) * s3.Omega(i, j) - W(i, j) * oez(i, j) * s3.e2l(i, j);
        r.lhs_max = std::max(r.lhs_max, std::abs(Qzb(i, j)));
        r.residual = std::max(r.residual, std::abs(Qzb(i, j) - rhs));
    });
    return r;
}

double isothermic_witness(const FundamentalData& s3, const Field<cd>& Q, double fraction) {
    require_no_umbilic(s3, "isothermic witness");
    double im = 0, mag = 0;
    int above = 0, total = 0;
    for_interior(Q.n, [&](int i, int j) {
        const cd w = s3.Omega(i, j);
        const cd p = std::conj(w) * std::conj(w) * Q(i, j);
        const double e2 = s3.e2l(i, j);
        im = std::max(im, std::abs(p.imag()));
        mag = std::max(mag, std::abs(p));
        ++total;
        if (std::abs(Q(i, j)) * e2 * e2 / std::pow(std::abs(w), 4) > kWitnessDegenerate) ++above;
    });
    if (above <= (1.0 - fraction) * total || mag == 0) return 0.0;
    return im / mag;
}

KappaResult classification_value(const FundamentalData& s3, const Field<cd>& Q, double floor, double fraction) {
    require_no_umbilic(s3, "classification");
    const Field<double> W = willmore_field(s3);
    KappaResult r;
    r.field = Field<double>(Q.n, Q.dom);
    for (std::size_t k = 0; k < Q.data.size(); ++k) {
        const cd w = s3.Omega.data[k];
        const double em2 = 1.0 / s3.e2l.data[k];
        const cd f = W.data[k] * W.data[k] - std::conj(w) * std::conj(w) * em2 * em2 * Q.data[k];
        const double scale = std::pow(std::abs(w), 6) * std::pow(em2, 4);
        r.field.data[k] = f.real() / scale;
    }
    int pos = 0, neg = 0, zero = 0, total = 0;
    for_interior(Q.n, [&](int i, int j) {
        const double g = r.field(i, j);
        ++total;
        if (g > floor) ++pos;
        else if (g < -floor) ++neg;
        else ++zero;
    });
    r.positive = double(pos) / total;
    r.negative = double(neg) / total;
    r.zero = double(zero) / total;
    if (r.positive >= fraction) r.kappa = +1;
    else if (r.negative >= fraction) r.kappa = -1;
    else if (r.zero >= fraction) r.kappa = 0;
    return r;
}

HyperplaneFit hyperplane_fit(const Field<Vec5>& Y, double lightlike_tol, double linear_tol) {
    if (Y.data.size() < 100) throw GeometryError("hyperplane fit needs at least 100 samples");
    using Mat6 = Eigen::Matrix<double, 6, 6>;
    using Vec6 = Eigen::Matrix<double, 6, 1>;
    const Mat5 e = epsilon();
    Mat6 A = Mat6::Zero();
    for (const Vec5& y : Y.data) {
        Vec6 r;
        r.head<5>() = e * y;
        r(5) = -1.0;
        A.noalias() += r * r.transpose();
    }
    const Eigen::SelfAdjointEigenSolver<Mat6> es(A);
    const auto& ev = es.eigenvalues();
    if (ev(1) <= 1e-14 * ev.sum()) throw GeometryError("degenerate congruence");
    Vec6 w = es.eigenvectors().col(0);
    const double vn = w.head<5>().norm();
    if (vn <= 1e-12) throw GeometryError("degenerate congruence");
    w /= vn;
    HyperplaneFit f;
    f.v = w.head<5>();
    f.eta = w(5);
    // Sign convention: first significant component positive.
    for (int k = 0; k < 5; ++k) {
        if (std::abs(f.v(k)) > 1e-8) {
            if (f.v(k) < 0) { f.v = -f.v; f.eta = -f.eta; }
            break;
        }
    }
    double ss = 0;
    for (const Vec5& y : Y.data) {
        const double r = lorentz_product(y, f.v) - f.eta;
        ss += r * r;
    }
    f.residual = std::sqrt(ss / Y.data.size());
    f.lorentz_norm = lorentz_product(f.v, f.v);
    f.type = classify_vector(f.v, lightlike_tol);
    f.linear = std::abs(f.eta) <= linear_tol;
    return f;
}

std::string space_name(int kappa) {
    switch (kappa) {
        case 0: return "ℝ³";
        case -1: return "S³";
        case 1: return "ℍ³";
    }
    throw GeometryError("invalid kappa");
}

int kappa_for_type(VectorType t) {
    switch (t) {
        case VectorType::lightlike: return 0;
        case VectorType::timelike: return -1;
        case VectorType::spacelike: return 1;
    }
    return 0;
}

ClassificationReport classify(const ChartGrid& grid, const Tolerances& tol, const std::optional<Mat5>& M) {
    ChartGrid s3g = to_model(grid, Model::S3);
    if (M) {
        if (!is_so41(*M, 1e-9)) throw GeometryError("transform is not in SO(4,1)");
        const Mat5 m = *M;
        s3g = push_jets(s3g, Model::S3, [&](const Jet4& x) { return act_on_s3(m, x); });
    }
    const FundamentalData s3 = fundamental_data(s3g);
    if (s3.any_umbilic()) throw GeometryError("umbilic surface: conformal Gauss map degenerate");
    const CongruenceGrid Y = conformal_gauss_map(s3);

    ClassificationReport r;
    r.grid = grid.n();
    r.willmore_residual = interior_max(harmonicity_residual(Y));
    const QField q = bryant_q(s3, Y);
    r.q_agreement = q.agreement;
    r.q_holomorphy = holomorphy_residual(q.value);
    r.identity = holomorphy_identity(s3, q.value);
    r.isothermic_witness = isothermic_witness(s3, q.value, tol.kappa_fraction);
    const KappaResult k = classification_value(s3, q.value, tol.kappa_floor, tol.kappa_fraction);
    r.kappa = k.kappa;
    r.hyperplane = hyperplane_fit(Y.Y, tol.lightlike, tol.linear);

    char diag[256];
    if (r.q_holomorphy > tol.holomorphy) {
        r.verdict = "not conformally CMC";
        std::snprintf(diag, sizeof diag, "Q not holomorphic (residual %.3g)", r.q_holomorphy);
        r.diagnostics = diag;
        return r;
    }
    if (r.isothermic_witness > tol.isothermic) {
        r.verdict = "not conformally CMC";
        std::snprintf(diag, sizeof diag, "not isothermic (witness %.3g)", r.isothermic_witness);
        r.diagnostics = diag;
        return r;
    }
    if (!r.kappa) {
        r.verdict = "indeterminate";
        std::snprintf(diag, sizeof diag, "classification field sign fractions +%.4f -%.4f 0:%.4f", k.positive,
                      k.negative, k.zero);
        r.diagnostics = diag;
        return r;
    }
    const int kfit = kappa_for_type(r.hyperplane.type);
    if (kfit != *r.kappa || r.hyperplane.residual > tol.fit) {
        r.verdict = "inconsistent";
        std::snprintf(diag, sizeof diag, "kappa %d, hyperplane normal %s (<v,v> = %.3g), fit residual %.3g", *r.kappa,
                      to_string(r.hyperplane.type).c_str(), r.hyperplane.lorentz_norm, r.hyperplane.residual);
        r.diagnostics = diag;
        return r;
    }
    const bool minimal = r.willmore_residual <= tol.willmore;
    r.verdict = std::string(minimal ? "conformally minimal in " : "conformally CMC in ") + space_name(*r.kappa);
    return r;
}

ClassificationReport classify(const SurfaceSpec& spec, int n, const Tolerances& tol, const std::optional<Mat5>& M,
                              const std::optional<Domain>& domain) {
    ClassificationReport r = classify(sample(spec, n, domain), tol, M);
    r.surface = spec.name;
    r.params = spec.params;
    return r;
}

ojson report_json(const ClassificationReport& r) {
    ojson j;
    j["surface"] = r.surface;
    ojson params = ojson::object();
    for (const auto& p : r.params) params[p.name] = p.value;
    j["params"] = params;
    j["grid"] = r.grid;
    j["willmore_residual"] = r.willmore_residual;
    j["q_holomorphy"] = r.q_holomorphy;
    j["isothermic_witness"] = r.isothermic_witness;
    if (r.kappa) j["kappa"] = *r.kappa;
    else j["kappa"] = "indeterminate";
    ojson h;
    h["v"] = ojson::array();
    for (int k = 0; k < 5; ++k) h["v"].push_back(r.hyperplane.v(k));
    h["eta"] = r.hyperplane.eta;
    h["residual"] = r.hyperplane.residual;
    h["type"] = to_string(r.hyperplane.type);
    j["hyperplane"] = h;
    j["verdict"] = r.verdict;
    return j;
}

std::string to_json(const ClassificationReport& r, int indent) { return dump_json(report_json(r), indent); }

}  // namespace confgauss
