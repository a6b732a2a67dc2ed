#include "confgauss/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

namespace confgauss {

namespace {

struct Check {
    bool ok = true;
    std::vector<std::string> failures;

    void expect_le(const std::string& what, double value, double tol) {
        if (!(value <= tol)) fail(what, value, "<=", tol);
    }
    void expect_ge(const std::string& what, double value, double tol) {
        if (!(value >= tol)) fail(what, value, ">=", tol);
    }
    void expect(const std::string& what, bool cond) {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
    void fail(const std::string& what, double value, const char* op, double tol) {
        ok = false;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s = %.3g (need %s %.0e)", what.c_str(), value, op, tol);
        failures.push_back(buf);
    }
    std::string detail(const std::string& summary) const {
        if (ok) return summary;
        std::string s;
        for (std::size_t k = 0; k < failures.size() && k < 4; ++k) s += (k ? "; " : "") + failures[k];
        if (failures.size() > 4) s += "; +" + std::to_string(failures.size() - 4) + " more";
        return s;
    }
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

SurfaceSpec sqrt2_torus() { return make_surface("torus_revolution", {{"R", std::sqrt(2.0)}, {"r", 1.0}}); }

std::vector<SurfaceSpec> zoo() {
    std::vector<SurfaceSpec> z;
    for (const auto& n : surface_names()) z.push_back(make_surface(n));
    return z;
}

std::vector<SurfaceSpec> nonumbilic_zoo() {
    std::vector<SurfaceSpec> z;
    for (const auto& n : surface_names())
        if (n != "plane" && n != "sphere") z.push_back(make_surface(n));
    z.push_back(sqrt2_torus());
    return z;
}

std::string label(const SurfaceSpec& s) {
    if (s.name == "torus_revolution" && std::abs(s.param("R") - std::sqrt(2.0)) < 1e-12) return "sqrt2_torus";
    return s.name;
}

double max_abs_yy(const CongruenceGrid& Y) {
    double m = 0;
    for (const auto& y : Y.Y.data) m = std::max(m, std::abs(lorentz_product(y, y) - 1.0));
    return m;
}

double max_diff(const Field<Vec5>& a, const Field<Vec5>& b, const Mat5& M = Mat5::Identity()) {
    double m = 0;
    for (std::size_t k = 0; k < a.data.size(); ++k) m = std::max(m, (a.data[k] - M * b.data[k]).norm());
    return m;
}

// Structure-equation residuals of one representation.
double structure_max(const ChartGrid& g) {
    const FundamentalData d = fundamental_data(g);
    return std::max(interior_max(gauss_codazzi_residual(d)), structure_residuals(d).max());
}

CriterionResult c1(const AcceptanceConfig& cfg) {
    Check c;
    double worst_a = 0, worst_q = 0;
    for (const auto& s : zoo()) {
        const ChartGrid g = sample(s, cfg.n);
        const double tol = s.quadrature ? 1e-6 : 1e-7;
        double r = structure_max(g);
        if (g.model != Model::S3) r = std::max(r, structure_max(to_model(g, Model::S3)));
        c.expect_le(s.name + " structure", r, tol);
        (s.quadrature ? worst_q : worst_a) = std::max(s.quadrature ? worst_q : worst_a, r);
    }
    return {1, "", c.ok, c.detail("max residual analytic " + fmt("%.2e", worst_a) + ", quadrature " + fmt("%.2e", worst_q))};
}

CriterionResult c2(const AcceptanceConfig& cfg) {
    Check c;
    double worst = 0;
    for (double R : {0.3, 0.5, 0.9}) {
        const FundamentalData d = fundamental_data(to_model(sample(make_surface("sphere", {{"R", R}}), cfg.n), Model::S3));
        const double h = (1 - R * R) / (2 * R);
        const double r = 2 * std::atan(R);  // geodesic radius from the south pole
        double e = std::abs(h - std::cos(r) / std::sin(r));
        for (double x : d.H.data) e = std::max(e, std::abs(x - h));
        c.expect_le("R=" + fmt("%.1f", R) + " |h - cot r|", e, 1e-8);
        worst = std::max(worst, e);
    }
    return {2, "", c.ok, c.detail("max |h - cot r| " + fmt("%.2e", worst))};
}

// Y of the surface read in H3 after a dilation that moves it into the unit ball, mapped back by D^{-1}.
double h3_agreement(const ChartGrid& g, const CongruenceGrid& Y) {
    ChartGrid r3 = to_model(g, Model::R3);
    double rmax = 0;
    for (const auto& j : r3.jets.data) rmax = std::max(rmax, std::sqrt(j[0].f * j[0].f + j[1].f * j[1].f + j[2].f * j[2].f));
    const double lam = rmax < 0.9 ? 0.0 : std::log(0.5 / rmax);
    const Mat5 D = dilation(lam);
    const ChartGrid scaled = push_jets(r3, Model::R3, [&](const Jet4& x) { return act_on_r3(D, x); });
    const CongruenceGrid Yh = conformal_gauss_map(fundamental_data(to_model(scaled, Model::H3)));
    return max_diff(Yh.Y, Y.Y, D);
}

CriterionResult c3(const AcceptanceConfig& cfg) {
    Check c;
    double wyy = 0, wenv = 0, wmetric = 0, wrep = 0;
    for (const auto& s : nonumbilic_zoo()) {
        const ChartGrid g = sample(s, cfg.n);
        const FundamentalData d = fundamental_data(g);
        const CongruenceGrid Y = conformal_gauss_map(d);
        const std::string n = label(s);
        const double yy = max_abs_yy(Y);
        const EnvelopeResiduals env = envelope_residuals(Y.Y, lift_field(d));
        const double metric = metric_law_residual(Y, d);
        double rep = 0;
        for (Model m : {Model::R3, Model::S3})
            if (m != g.model) rep = std::max(rep, max_diff(conformal_gauss_map(fundamental_data(to_model(g, m))).Y, Y.Y));
        rep = std::max(rep, h3_agreement(g, Y));
        c.expect_le(n + " |<Y,Y>-1|", yy, 1e-10);
        c.expect_le(n + " envelope", std::max(env.contact, env.tangency), 1e-6);
        c.expect_le(n + " metric law", metric, 1e-6);
        c.expect_le(n + " representations", rep, 1e-8);
        wyy = std::max(wyy, yy);
        wenv = std::max({wenv, env.contact, env.tangency});
        wmetric = std::max(wmetric, metric);
        wrep = std::max(wrep, rep);
    }
    return {3, "", c.ok,
            c.detail("|<Y,Y>-1| " + fmt("%.1e", wyy) + ", envelope " + fmt("%.1e", wenv) + ", metric law " +
                     fmt("%.1e", wmetric) + ", R3/S3/H3 " + fmt("%.1e", wrep))};
}

CriterionResult c4(const AcceptanceConfig& cfg) {
    Check c;
    std::mt19937_64 rng(cfg.seed);
    std::vector<RandomWord> words;
    for (int k = 0; k < cfg.words; ++k) words.push_back(random_word(rng));
    double wy = 0, wmu = 0;
    int cases = 0;
    for (const char* name : {"cylinder", "catenoid", "clifford_torus", "torus_revolution", "hyperbolic_cylinder"}) {
        const SurfaceSpec s = make_surface(name);
        const ChartGrid g = sample(s, cfg.n);
        const ChartGrid s3g = to_model(g, Model::S3);
        const CongruenceGrid Y0 = conformal_gauss_map(fundamental_data(s3g));
        const MuPair mu0 = conserved_matrix(Y0);
        const ClassificationReport base = classify(g);
        for (const auto& w : words) {
            const ChartGrid tg = push_jets(s3g, Model::S3, [&](const Jet4& x) { return act_on_s3(w.M, x); });
            const CongruenceGrid Y1 = conformal_gauss_map(fundamental_data(tg));
            const double ey = max_diff(Y1.Y, Y0.Y, w.M);
            const double emu = max_difference(conserved_matrix(Y1), conjugate(w.M, mu0));
            c.expect_le(std::string(name) + " [" + w.text + "] Y", ey, 1e-5);
            c.expect_le(std::string(name) + " [" + w.text + "] mu", emu, 1e-5);
            try {
                const ClassificationReport r = classify(g, {}, w.M);
                c.expect(std::string(name) + " [" + w.text + "] verdict " + r.verdict,
                         r.kappa == base.kappa && r.hyperplane.type == base.hyperplane.type && r.verdict == base.verdict);
            } catch (const std::exception& e) {
                c.expect(std::string(name) + " [" + w.text + "] " + e.what(), false);
            }
            wy = std::max(wy, ey);
            wmu = std::max(wmu, emu);
            ++cases;
        }
    }
    return {4, "", c.ok,
            c.detail(std::to_string(cases) + " cases, Y " + fmt("%.1e", wy) + ", mu " + fmt("%.1e", wmu) +
                     ", verdicts invariant")};
}

CriterionResult c5(const AcceptanceConfig& cfg) {
    Check c;
    double on = 0, off = INFINITY;
    auto harm = [&](const SurfaceSpec& s) {
        return interior_max(harmonicity_residual(conformal_gauss_map(fundamental_data(sample(s, cfg.n)))));
    };
    for (const auto& s : {make_surface("catenoid"), make_surface("enneper"), sqrt2_torus(),
                          make_surface("inverted_catenoid"), make_surface("clifford_torus")}) {
        const double h = harm(s);
        c.expect_le(label(s) + " harmonicity", h, 1e-4);
        on = std::max(on, h);
    }
    for (const char* n : {"cylinder", "torus_revolution", "hyperbolic_cylinder", "revolution_profile"}) {
        const double h = harm(make_surface(n));
        c.expect_ge(std::string(n) + " harmonicity", h, 1e-2);
        off = std::min(off, h);
    }
    return {5, "", c.ok, c.detail("Willmore max " + fmt("%.1e", on) + ", non-Willmore min " + fmt("%.2g", off))};
}

CriterionResult c6(const AcceptanceConfig& cfg) {
    Check c;
    double wblock = 0, won = 0, woff = INFINITY;
    for (const auto& s : {make_surface("catenoid"), make_surface("enneper"), make_surface("translated_catenoid"),
                          make_surface("inverted_catenoid"), sqrt2_torus(), make_surface("clifford_torus")}) {
        const FundamentalData d = fundamental_data(to_model(sample(s, cfg.n), Model::R3));
        const ConservedSet direct = direct_currents(d);
        const ConservedSet block = extract_from_mu(conserved_matrix(conformal_gauss_map(d)), direct.off_shell);
        const double e = std::max({max_difference(block.tra, direct.tra), max_difference(block.dil, direct.dil),
                                   max_difference(block.rot_tilde, direct.rot_tilde),
                                   max_difference(block.inv, direct.inv)});
        const double div = divergence_residual(direct.tra);
        c.expect_le(label(s) + " block vs direct", e, 1e-5);
        c.expect_le(label(s) + " div V_tra", div, 1e-3);
        wblock = std::max(wblock, e);
        won = std::max(won, div);
    }
    for (const char* n : {"cylinder", "torus_revolution", "hyperbolic_cylinder", "revolution_profile"}) {
        const FundamentalData d = fundamental_data(to_model(sample(make_surface(n), cfg.n), Model::R3));
        const double div = divergence_residual(direct_currents(d).tra);
        c.expect_ge(std::string(n) + " div V_tra", div, 1e-2);
        woff = std::min(woff, div);
    }
    return {6, "", c.ok,
            c.detail("block vs direct " + fmt("%.1e", wblock) + ", div on-shell " + fmt("%.1e", won) +
                     ", off-shell min " + fmt("%.2g", woff))};
}

CriterionResult c7(const AcceptanceConfig& cfg) {
    Check c;
    const ExchangeReport r = inversion_exchange_check(sample(make_surface("translated_catenoid"), cfg.n));
    c.expect_le("V_tra,i - V_inv", r.tra_to_inv, 1e-4);
    c.expect_le("V_inv,i - V_tra", r.inv_to_tra, 1e-4);
    c.expect_le("V_dil,i + V_dil", r.dil_flip, 1e-4);
    c.expect_le("rot~_i - rot~", r.rot_fixed, 1e-4);
    c.expect_le("mu_i - M mu M^T", r.mu_conjugation, 1e-5);
    return {7, "", c.ok,
            c.detail("tra<->inv " + fmt("%.1e", std::max(r.tra_to_inv, r.inv_to_tra)) + ", dil " + fmt("%.1e", r.dil_flip) +
                     ", rot~ " + fmt("%.1e", r.rot_fixed) + ", mu " + fmt("%.1e", r.mu_conjugation))};
}

CriterionResult c8(const AcceptanceConfig& cfg) {
    Check c;
    struct Row {
        const char* name;
        int kappa;
        VectorType type;
        int linear;  // -1: not checked
    };
    const Row rows[] = {{"cylinder", 0, VectorType::lightlike, 0},
                        {"catenoid", 0, VectorType::lightlike, 1},
                        {"clifford_torus", -1, VectorType::timelike, 1},
                        {"torus_revolution", -1, VectorType::timelike, 0},
                        {"hyperbolic_cylinder", 1, VectorType::spacelike, -1}};
    double wfit = 0;
    for (const auto& row : rows) {
        const ClassificationReport r = classify(make_surface(row.name), cfg.n);
        const std::string n = row.name;
        c.expect(n + " kappa", r.kappa && *r.kappa == row.kappa);
        c.expect(n + " normal " + to_string(r.hyperplane.type), r.hyperplane.type == row.type);
        if (row.linear >= 0) c.expect(n + (row.linear ? " linear" : " affine"), r.hyperplane.linear == (row.linear == 1));
        c.expect(n + " verdict " + r.verdict, r.determinate() && r.verdict.rfind("conformally", 0) == 0);
        c.expect_le(n + " fit RMS", r.hyperplane.residual, 1e-6);
        wfit = std::max(wfit, r.hyperplane.residual);
    }
    const ClassificationReport p = classify(make_surface("revolution_profile"), cfg.n);
    c.expect("revolution_profile verdict " + p.verdict, p.verdict == "not conformally CMC");
    c.expect_ge("revolution_profile Q holomorphy", p.q_holomorphy, 1e-2);
    return {8, "", c.ok,
            c.detail("5 determinate cases match, max fit RMS " + fmt("%.1e", wfit) + ", profile holomorphy " +
                     fmt("%.2g", p.q_holomorphy))};
}

CriterionResult c9(const AcceptanceConfig& cfg) {
    Check c;
    double wq = 0, wid = 0;
    for (const auto& s : nonumbilic_zoo()) {
        const ChartGrid g = sample(s, cfg.n);
        for (Model m : {Model::R3, Model::S3}) {
            const FundamentalData d = fundamental_data(to_model(g, m));
            const QField q = bryant_q(d, conformal_gauss_map(d));
            c.expect_le(label(s) + " Q closed vs direct (" + to_string(m) + ")", q.agreement, 1e-5);
            wq = std::max(wq, q.agreement);
        }
    }
    for (const auto& s : {make_surface("cylinder"), sqrt2_torus()}) {
        const FundamentalData d = fundamental_data(to_model(sample(s, cfg.n), Model::S3));
        const QField q = bryant_q(d, conformal_gauss_map(d));
        const double r = holomorphy_identity(d, q.value).residual;
        c.expect_le(label(s) + " holomorphy identity", r, 1e-4);
        wid = std::max(wid, r);
    }
    return {9, "", c.ok, c.detail("Q routes " + fmt("%.1e", wq) + ", holomorphy identity " + fmt("%.1e", wid))};
}

CriterionResult c10(const AcceptanceConfig& cfg) {
    Check c;
    const SurfaceSpec cyl = make_surface("cylinder");
    const double rho = cyl.param("rho");
    const FundamentalData dc = fundamental_data(sample(cyl, cfg.n));
    double e_cyl = 0;
    for (const Vec4& x : dual_surface_r3(dc).data) e_cyl = std::max(e_cyl, std::abs(std::hypot(x(0), x(1)) - 3 * rho));
    c.expect_le("cylinder dual radius - 3 rho", e_cyl, 1e-8);

    const FundamentalData dt = fundamental_data(sample(make_surface("clifford_torus"), cfg.n));
    const Field<Vec4> xs = dual_surface_s3(dt);
    double e_cl = 0;
    for (std::size_t k = 0; k < xs.data.size(); ++k) e_cl = std::max(e_cl, (xs.data[k] + dt.pos.data[k]).norm());
    c.expect_le("clifford dual + X", e_cl, 1e-8);

    const FundamentalData ds = fundamental_data(to_model(sample(sqrt2_torus(), cfg.n), Model::S3));
    const double defect = interior_max(dual_conformality(ds, dual_surface_s3(ds)).defect);
    c.expect_le("sqrt2 torus dual conformality defect", defect, 1e-6);

    std::string msg;
    try {
        dual_surface_r3(fundamental_data(sample(make_surface("catenoid"), cfg.n)));
    } catch (const GeometryError& e) {
        msg = e.what();
    }
    c.expect("catenoid dual must error", msg.find("T(Phi) vanishes") != std::string::npos);
    return {10, "", c.ok,
            c.detail("cylinder " + fmt("%.1e", e_cyl) + ", clifford " + fmt("%.1e", e_cl) + ", sqrt2 defect " +
                     fmt("%.1e", defect) + ", catenoid: " + msg)};
}

// Stencil-limited residuals representative of criteria 1, 3, 5 and 9.
std::vector<std::pair<std::string, double>> convergence_residuals(int n) {
    std::vector<std::pair<std::string, double>> out;
    {
        const FundamentalData d = fundamental_data(sample(make_surface("torus_revolution"), n));
        out.emplace_back("torus Gauss-Codazzi", interior_max(gauss_codazzi_residual(d)));
    }
    {
        const FundamentalData d = fundamental_data(to_model(sample(make_surface("enneper"), n), Model::S3));
        out.emplace_back("enneper S3 Gauss-Codazzi", interior_max(gauss_codazzi_residual(d)));
    }
    {
        const FundamentalData d = fundamental_data(sample(make_surface("enneper"), n));
        const CongruenceGrid Y = conformal_gauss_map(d);
        out.emplace_back("enneper metric law", metric_law_residual(Y, d));
        out.emplace_back("enneper harmonicity", interior_max(harmonicity_residual(Y)));
        out.emplace_back("enneper Q routes", bryant_q(d, Y).agreement);
    }
    {
        const FundamentalData d = fundamental_data(sample(make_surface("catenoid"), n));
        const CongruenceGrid Y = conformal_gauss_map(d);
        out.emplace_back("catenoid harmonicity", interior_max(harmonicity_residual(Y)));
    }
    {
        const FundamentalData d = fundamental_data(sample(make_surface("torus_revolution"), n));
        out.emplace_back("torus Q routes", bryant_q(d, conformal_gauss_map(d)).agreement);
    }
    return out;
}

CriterionResult c11(const AcceptanceConfig& cfg) {
    Check c;
    const int coarse = cfg.n / 2 + 1, fine = cfg.n + 1;
    const auto a = convergence_residuals(coarse), b = convergence_residuals(fine);
    double worst = INFINITY;
    std::string text;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double ratio = a[k].second / b[k].second;
        c.expect_ge(a[k].first + " ratio", ratio, 10.0);
        worst = std::min(worst, ratio);
    }
    return {11, "", c.ok,
            c.detail("N=" + std::to_string(coarse) + " -> " + std::to_string(fine) + ", min ratio " + fmt("%.1f", worst) +
                     " over " + std::to_string(a.size()) + " residuals")};
}

}  // namespace

int criterion_count() { return 11; }

std::string criterion_name(int id) {
    static const char* names[] = {"structure equations",
                                  "sphere law h = cot r",
                                  "conformal Gauss map",
                                  "Moebius equivariance",
                                  "Willmore <=> harmonic Y",
                                  "conserved-quantity block extraction",
                                  "inversion exchange law",
                                  "classification matrix",
                                  "Q consistency",
                                  "dual surfaces",
                                  "convergence"};
    if (id < 1 || id > 11) throw GeometryError("unknown criterion " + std::to_string(id));
    return names[id - 1];
}

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg) {
    static CriterionResult (*const fns[])(const AcceptanceConfig&) = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
    const std::string name = criterion_name(id);
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = fns[id - 1](cfg);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.id = id;
    r.name = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= criterion_count(); ++id) {
        out.push_back(run_criterion(id, cfg));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_line(const CriterionResult& r) {
    char head[96];
    std::snprintf(head, sizeof head, "[%s] %2d %-34s (%5.1fs) ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.seconds);
    return head + r.detail;
}

RandomWord random_word(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> length(3, 6), pick(0, 3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    RandomWord w{Mat5::Identity(), ""};
    const int len = length(rng);
    char buf[160];
    for (int k = 0; k < len; ++k) {
        Mat5 G;
        switch (pick(rng)) {
            case 0: {
                const double l = unit(rng);
                G = dilation(l);
                std::snprintf(buf, sizeof buf, "dil:%.17g", l);
                break;
            }
            case 1: {
                Vec3 axis(unit(rng), unit(rng), unit(rng));
                if (axis.norm() < 1e-3) axis = Vec3::UnitZ();
                const double angle = M_PI * unit(rng);
                G = rotation(axis, angle);
                std::snprintf(buf, sizeof buf, "rot:%.17g,%.17g,%.17g,%.17g", axis(0), axis(1), axis(2), angle);
                break;
            }
            case 2:
                G = inversion();
                std::snprintf(buf, sizeof buf, "inv");
                break;
            default: {
                Vec3 a(unit(rng), unit(rng), unit(rng));
                a *= std::abs(unit(rng)) / std::max(1.0, a.norm());
                G = translation(a);
                std::snprintf(buf, sizeof buf, "tra:%.17g,%.17g,%.17g", a(0), a(1), a(2));
                break;
            }
        }
        w.M = G * w.M;
        w.text += (k ? " " : "") + std::string(buf);
    }
    return w;
}

}  // namespace confgauss
