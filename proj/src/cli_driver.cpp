#include "confgauss/cli_driver.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

namespace confgauss {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

double parse_number(const std::string& s, const std::string& token) {
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        throw GeometryError("invalid generator word: bad number in '" + token + "'");
    }
    if (used != s.size() || !std::isfinite(x)) throw GeometryError("invalid generator word: bad number in '" + token + "'");
    return x;
}

std::vector<double> parse_numbers(const std::string& args, const std::string& token) {
    std::vector<double> v;
    for (const auto& p : split(args, ',')) v.push_back(parse_number(p, token));
    return v;
}

Mat5 parse_generator(const std::string& token) {
    const auto colon = token.find(':');
    const std::string head = token.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : token.substr(colon + 1);
    if (head == "inv") {
        if (colon != std::string::npos) throw GeometryError("invalid generator word: 'inv' takes no arguments");
        return inversion();
    }
    if (colon == std::string::npos) throw GeometryError("invalid generator word: unknown token '" + token + "'");
    if (head == "dil") {
        const auto v = parse_numbers(args, token);
        if (v.size() != 1) throw GeometryError("invalid generator word: dil needs one value");
        return dilation(v[0]);
    }
    if (head == "tra") {
        const auto v = parse_numbers(args, token);
        if (v.size() != 3) throw GeometryError("invalid generator word: tra needs x,y,z");
        return translation(Vec3(v[0], v[1], v[2]));
    }
    if (head == "rot") {
        const auto parts = split(args, ',');
        Vec3 axis;
        double angle = 0;
        if (parts.size() == 2 && (parts[0] == "x" || parts[0] == "y" || parts[0] == "z")) {
            axis = parts[0] == "x" ? Vec3::UnitX() : parts[0] == "y" ? Vec3::UnitY() : Vec3::UnitZ();
            angle = parse_number(parts[1], token);
        } else if (parts.size() == 4) {
            const auto v = parse_numbers(args, token);
            axis = Vec3(v[0], v[1], v[2]);
            angle = v[3];
        } else {
            throw GeometryError("invalid generator word: rot needs <axis>,<angle>");
        }
        if (axis.norm() == 0) throw GeometryError("invalid generator word: zero rotation axis");
        return rotation(axis, angle);
    }
    throw GeometryError("invalid generator word: unknown token '" + token + "'");
}

std::string format_double(double x, int digits = 17) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string params_text(const std::vector<ParamInfo>& ps) {
    std::string s;
    for (const auto& p : ps) s += (s.empty() ? "" : ", ") + p.name + "=" + format_double(p.value, 10);
    return s;
}

std::optional<Mat5> word_matrix(const std::string& word) {
    if (word.find_first_not_of(" \t") == std::string::npos) return std::nullopt;
    return parse_word(word);
}

struct Analysis {
    SurfaceSpec spec;
    ChartGrid grid;
    ClassificationReport report;
};

Analysis analyze(const RunConfig& cfg, const std::optional<Mat5>& M) {
    Analysis a{make_surface(cfg.surface, cfg.params), {}, {}};
    a.grid = sample(a.spec, cfg.grid, cfg.domain);
    a.report = classify(a.grid, cfg.tol, M);
    a.report.surface = a.spec.name;
    a.report.params = a.spec.params;
    return a;
}

struct LawSummary {
    bool available = false;
    bool off_shell = false;
    double block_vs_direct = NAN;
    double div_tra = NAN;
    std::string note;
};

LawSummary willmore_laws_summary(const ChartGrid& g) {
    LawSummary s;
    try {
        const FundamentalData d = fundamental_data(to_model(g, Model::R3));
        const ConservedSet direct = direct_currents(d);
        const ConservedSet block = extract_from_mu(conserved_matrix(conformal_gauss_map(d)), direct.off_shell);
        s.available = true;
        s.off_shell = direct.off_shell;
        s.block_vs_direct = std::max({max_difference(block.tra, direct.tra), max_difference(block.dil, direct.dil),
                                      max_difference(block.rot_tilde, direct.rot_tilde),
                                      max_difference(block.inv, direct.inv)});
        s.div_tra = divergence_residual(direct.tra);
    } catch (const std::exception& e) {
        s.note = e.what();
    }
    return s;
}

void export_fields(const std::string& dir, const ChartGrid& grid, const std::optional<Mat5>& M) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    ChartGrid s3g = to_model(grid, Model::S3);
    if (M) s3g = push_jets(s3g, Model::S3, [&](const Jet4& x) { return act_on_s3(*M, x); });
    const FundamentalData s3 = fundamental_data(s3g);
    const CongruenceGrid Y = conformal_gauss_map(s3);
    const auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };
    write_csv(path("position_s3.csv"), s3.pos, {"x1", "x2", "x3", "x4"});
    write_csv(path("mean_curvature_s3.csv"), s3.H, {"h"});
    write_csv(path("omega_s3.csv"), s3.Omega, {"re", "im"});
    write_csv(path("conformal_gauss_map.csv"), Y.Y, {"y1", "y2", "y3", "y4", "y5"});
    write_csv(path("harmonicity_residual.csv"), harmonicity_residual(Y), {"residual"});
    write_csv(path("willmore_s3.csv"), willmore_field(s3), {"w"});
    if (!s3.any_umbilic()) {
        const QField q = bryant_q(s3, Y);
        write_csv(path("bryant_q.csv"), q.value, {"re", "im"});
        write_csv(path("classification_field.csv"), classification_value(s3, q.value).field, {"value"});
    }
    if (M) return;
    try {
        const FundamentalData d = fundamental_data(to_model(grid, Model::R3));
        if (d.any_umbilic()) return;
        const ConservedSet c = direct_currents(d);
        const auto vec = [&](const char* name, const VectorCurrent& v) {
            write_csv_rows(path(name), v.u.dom, v.u.n, {"u_x", "u_y", "u_z", "v_x", "v_y", "v_z"}, [&](int i, int j) {
                return std::vector<double>{v.u(i, j)(0), v.u(i, j)(1), v.u(i, j)(2), v.v(i, j)(0), v.v(i, j)(1), v.v(i, j)(2)};
            });
        };
        vec("V_tra.csv", c.tra);
        vec("V_rot.csv", c.rot);
        vec("V_rot_tilde.csv", c.rot_tilde);
        vec("V_inv.csv", c.inv);
        write_csv_rows(path("V_dil.csv"), c.dil.u.dom, c.dil.u.n, {"u", "v"},
                       [&](int i, int j) { return std::vector<double>{c.dil.u(i, j), c.dil.v(i, j)}; });
    } catch (const GeometryError&) {
        // no R3 chart for this surface (passes through the north pole)
    }
}

void print_report_csv(const ClassificationReport& r, std::ostream& out, const std::string& prefix = "") {
    out << prefix << "surface," << r.surface << "\n";
    for (const auto& p : r.params) out << prefix << "param_" << p.name << "," << format_double(p.value) << "\n";
    out << prefix << "grid," << r.grid << "\n";
    out << prefix << "willmore_residual," << format_double(r.willmore_residual) << "\n";
    out << prefix << "q_holomorphy," << format_double(r.q_holomorphy) << "\n";
    out << prefix << "isothermic_witness," << format_double(r.isothermic_witness) << "\n";
    out << prefix << "kappa," << (r.kappa ? std::to_string(*r.kappa) : "indeterminate") << "\n";
    for (int k = 0; k < 5; ++k) out << prefix << "hyperplane_v" << k + 1 << "," << format_double(r.hyperplane.v(k)) << "\n";
    out << prefix << "hyperplane_eta," << format_double(r.hyperplane.eta) << "\n";
    out << prefix << "hyperplane_residual," << format_double(r.hyperplane.residual) << "\n";
    out << prefix << "hyperplane_type," << to_string(r.hyperplane.type) << "\n";
    out << prefix << "verdict," << r.verdict << "\n";
}

void print_report_pretty(const ClassificationReport& r, std::ostream& out) {
    char buf[256];
    auto line = [&](const char* k, const std::string& v) {
        std::snprintf(buf, sizeof buf, "  %-22s %s\n", k, v.c_str());
        out << buf;
    };
    auto num = [](double x) {
        char b[32];
        std::snprintf(b, sizeof b, "%.3e", x);
        return std::string(b);
    };
    line("surface", r.surface + (r.params.empty() ? "" : " (" + params_text(r.params) + ")"));
    line("grid", std::to_string(r.grid) + " x " + std::to_string(r.grid));
    line("willmore residual", num(r.willmore_residual));
    line("Q holomorphy", num(r.q_holomorphy));
    line("Q closed vs direct", std::isnan(r.q_agreement) ? "n/a" : num(r.q_agreement));
    line("isothermic witness", num(r.isothermic_witness));
    line("kappa", r.kappa ? std::to_string(*r.kappa) : "indeterminate");
    std::string v = "(";
    for (int k = 0; k < 5; ++k) v += (k ? ", " : "") + num(r.hyperplane.v(k));
    v += ")";
    line("hyperplane normal", v + " " + to_string(r.hyperplane.type));
    line("hyperplane eta", num(r.hyperplane.eta) + (r.hyperplane.linear ? " (linear)" : " (affine)"));
    line("fit RMS", num(r.hyperplane.residual));
    line("verdict", r.verdict);
    if (!r.diagnostics.empty()) line("diagnostics", r.diagnostics);
}

void print_laws_pretty(const LawSummary& s, std::ostream& out) {
    char buf[256];
    if (!s.available) {
        out << "  conserved currents     unavailable (" << s.note << ")\n";
        return;
    }
    std::snprintf(buf, sizeof buf, "  conserved currents     block vs direct %.3e, div V_tra %.3e%s\n", s.block_vs_direct,
                  s.div_tra, s.off_shell ? " (off-shell)" : "");
    out << buf;
}

int verdict_exit(const ClassificationReport& r) { return r.determinate() ? 0 : 2; }

}  // namespace

Mat5 parse_word(const std::string& word) {
    Mat5 M = Mat5::Identity();
    std::istringstream is(word);
    std::string token;
    while (is >> token) M = parse_generator(token) * M;
    return M;
}

Domain parse_domain(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw GeometryError("domain must be u0,u1,v0,v1");
    double v[4];
    for (int k = 0; k < 4; ++k) {
        std::size_t used = 0;
        try {
            v[k] = std::stod(parts[k], &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != parts[k].size() || !std::isfinite(v[k])) throw GeometryError("domain must be u0,u1,v0,v1");
    }
    if (!(v[1] > v[0]) || !(v[3] > v[2])) throw GeometryError("empty chart domain");
    return {v[0], v[1], v[2], v[3]};
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const Analysis a = analyze(cfg, std::nullopt);
        const ClassificationReport& r = a.report;
        if (cfg.format == OutputFormat::json) {
            out << to_json(r) << "\n";
        } else if (cfg.format == OutputFormat::csv) {
            out << "field,value\n";
            print_report_csv(r, out);
        } else {
            print_report_pretty(r, out);
            print_laws_pretty(willmore_laws_summary(a.grid), out);
        }
        if (!cfg.out_dir.empty()) export_fields(cfg.out_dir, a.grid, std::nullopt);
        if (!r.determinate()) err << r.verdict << ": " << r.diagnostics << "\n";
        return verdict_exit(r);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::optional<Mat5> M = word_matrix(cfg.word);
        const Analysis a = analyze(cfg, std::nullopt);
        const Analysis b = M ? analyze(cfg, M) : a;
        const ClassificationReport &r0 = a.report, &r1 = b.report;
        const Mat5 m = M.value_or(Mat5::Identity());
        const ChartGrid s3g = to_model(a.grid, Model::S3);
        const MuPair mu0 = conserved_matrix(conformal_gauss_map(fundamental_data(s3g)));
        const ChartGrid t = M ? push_jets(s3g, Model::S3, [&](const Jet4& x) { return act_on_s3(m, x); }) : s3g;
        const MuPair mu1 = conserved_matrix(conformal_gauss_map(fundamental_data(t)));
        const double mu_err = max_difference(mu1, conjugate(m, mu0));
        const bool same_verdict = r0.verdict == r1.verdict;
        const bool same_kappa = r0.kappa == r1.kappa;
        const bool same_type = r0.hyperplane.type == r1.hyperplane.type;

        if (cfg.format == OutputFormat::json) {
            ojson j;
            j["word"] = cfg.word;
            ojson mat = ojson::array();
            for (int i = 0; i < 5; ++i) {
                ojson row = ojson::array();
                for (int k = 0; k < 5; ++k) row.push_back(m(i, k));
                mat.push_back(row);
            }
            j["matrix"] = mat;
            j["original"] = report_json(r0);
            j["transformed"] = report_json(r1);
            j["verdict_unchanged"] = same_verdict;
            j["kappa_unchanged"] = same_kappa;
            j["normal_type_unchanged"] = same_type;
            j["mu_conjugation"] = mu_err;
            out << dump_json(j) << "\n";
        } else if (cfg.format == OutputFormat::csv) {
            out << "field,value\nword," << cfg.word << "\n";
            print_report_csv(r0, out, "original_");
            print_report_csv(r1, out, "transformed_");
            out << "verdict_unchanged," << (same_verdict ? "true" : "false") << "\n";
            out << "mu_conjugation," << format_double(mu_err) << "\n";
        } else {
            out << "word: " << (cfg.word.empty() ? "(identity)" : cfg.word) << "\noriginal\n";
            print_report_pretty(r0, out);
            out << "transformed\n";
            print_report_pretty(r1, out);
            char buf[160];
            std::snprintf(buf, sizeof buf, "verdict %s, mu_phi - M mu M^T = %.3e\n", same_verdict ? "unchanged" : "CHANGED", mu_err);
            out << buf;
        }
        if (!cfg.out_dir.empty()) export_fields(cfg.out_dir, a.grid, M);
        if (!same_verdict || !same_kappa || !same_type) {
            err << "verdict changed under the transform: " << r0.verdict << " -> " << r1.verdict << "\n";
            return 2;
        }
        return verdict_exit(r1);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_check_invariants(const AcceptanceConfig& cfg, OutputFormat format, const std::vector<int>& only,
                         std::ostream& out, std::ostream& err) {
    std::vector<int> ids = only;
    if (ids.empty())
        for (int k = 1; k <= criterion_count(); ++k) ids.push_back(k);
    for (int id : ids)
        if (id < 1 || id > criterion_count()) {
            err << "error: unknown criterion " << id << "\n";
            return 1;
        }
    std::vector<CriterionResult> results;
    for (int id : ids) {
        results.push_back(run_criterion(id, cfg));
        if (format == OutputFormat::pretty) out << format_line(results.back()) << std::endl;
    }
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    if (format == OutputFormat::json) {
        ojson j;
        j["grid"] = cfg.n;
        j["seed"] = cfg.seed;
        ojson arr = ojson::array();
        for (const auto& r : results) {
            ojson c;
            c["id"] = r.id;
            c["name"] = r.name;
            c["pass"] = r.pass;
            c["detail"] = r.detail;
            arr.push_back(c);
        }
        j["criteria"] = arr;
        j["pass"] = all;
        out << dump_json(j) << "\n";
    } else if (format == OutputFormat::csv) {
        out << "id,name,pass,detail\n";
        for (const auto& r : results) {
            std::string d = r.detail;
            for (auto& ch : d)
                if (ch == '"') ch = '\'';
            out << r.id << "," << r.name << "," << (r.pass ? "true" : "false") << ",\"" << d << "\"\n";
        }
    }
    if (!all) {
        err << "tolerances not met at this resolution\n";
        return 2;
    }
    return 0;
}

int cmd_list_surfaces(OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::json) {
        ojson arr = ojson::array();
        for (const auto& n : surface_names()) {
            const SurfaceSpec s = make_surface(n);
            ojson j;
            j["name"] = s.name;
            j["model"] = to_string(s.model);
            ojson ps = ojson::array();
            for (const auto& p : s.params) {
                ojson pj;
                pj["name"] = p.name;
                pj["default"] = p.value;
                pj["range"] = p.range;
                ps.push_back(pj);
            }
            j["params"] = ps;
            j["domain"] = {s.domain.u0, s.domain.u1, s.domain.v0, s.domain.v1};
            j["willmore"] = s.expected.willmore;
            if (s.expected.kappa) j["kappa"] = *s.expected.kappa;
            else j["kappa"] = nullptr;
            arr.push_back(j);
        }
        out << dump_json(arr) << "\n";
        return 0;
    }
    if (format == OutputFormat::csv) out << "name,model,params,willmore\n";
    for (const auto& n : surface_names()) {
        const SurfaceSpec s = make_surface(n);
        if (format == OutputFormat::csv) {
            out << s.name << "," << to_string(s.model) << ",\"" << params_text(s.params) << "\","
                << (s.expected.willmore ? "true" : "false") << "\n";
        } else {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%-20s %-3s %-9s %s\n", s.name.c_str(), to_string(s.model).c_str(),
                          s.expected.willmore ? "Willmore" : "", params_text(s.params).c_str());
            out << buf;
        }
    }
    return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conformal Gauss map and Moebius geometry of surfaces", "confgauss"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "json", domain_text;
    std::map<std::string, double> param_values;
    std::set<std::string> param_names;
    for (const auto& n : surface_names())
        for (const auto& p : make_surface(n).params) param_names.insert(p.name);

    const std::map<std::string, OutputFormat> formats{
        {"json", OutputFormat::json}, {"csv", OutputFormat::csv}, {"pretty", OutputFormat::pretty}};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("surface", cfg.surface, "Surface name (see list-surfaces)")->required();
        for (const auto& p : param_names) sub->add_option("--" + p, param_values[p], "Surface parameter " + p);
        sub->add_option("--grid", cfg.grid, "Grid size N (N x N nodes)")->check(CLI::Range(kMinGrid, 4097));
        sub->add_option("--domain", domain_text, "Chart rectangle u0,u1,v0,v1");
        sub->add_option("--tol-holomorphy", cfg.tol.holomorphy)->check(CLI::PositiveNumber);
        sub->add_option("--tol-isothermic", cfg.tol.isothermic)->check(CLI::PositiveNumber);
        sub->add_option("--tol-kappa", cfg.tol.kappa_floor)->check(CLI::PositiveNumber);
        sub->add_option("--tol-willmore", cfg.tol.willmore)->check(CLI::PositiveNumber);
        sub->add_option("--tol-fit", cfg.tol.fit)->check(CLI::PositiveNumber);
        sub->add_option("--tol-lightlike", cfg.tol.lightlike)->check(CLI::PositiveNumber);
        sub->add_option("--tol-linear", cfg.tol.linear)->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.out_dir, "Directory for CSV field exports");
        sub->add_option("--format", format, "json | csv | pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Classify a zoo surface and evaluate its conservation laws");
    add_common(analyze_cmd);
    CLI::App* transform_cmd = app.add_subcommand("transform", "Apply a Moebius word and compare invariants");
    add_common(transform_cmd);
    transform_cmd->add_option("--word", cfg.word, "Generators, e.g. \"dil:0.5 rot:z,1 inv tra:1,0,0\"");

    AcceptanceConfig acc;
    std::vector<int> only;
    std::string check_format = "pretty";
    CLI::App* check_cmd = app.add_subcommand("check-invariants", "Run the acceptance criteria");
    check_cmd->add_option("--grid", acc.n, "Grid size N")->check(CLI::Range(kMinGrid, 4097));
    check_cmd->add_option("--words", acc.words, "Random SO(4,1) words")->check(CLI::PositiveNumber);
    check_cmd->add_option("--seed", acc.seed, "Seed for random words");
    check_cmd->add_option("--only", only, "Criterion ids to run")->delimiter(',');
    check_cmd->add_option("--format", check_format, "json | csv | pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));

    std::string list_format = "pretty";
    CLI::App* list_cmd = app.add_subcommand("list-surfaces", "List the surface catalog");
    list_cmd->add_option("--format", list_format, "json | csv | pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));

    try {
        std::vector<std::string> args;
        for (int k = argc - 1; k >= 1; --k) args.emplace_back(argv[k]);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (list_cmd->parsed()) return cmd_list_surfaces(formats.at(list_format), out);
        if (check_cmd->parsed()) return cmd_check_invariants(acc, formats.at(check_format), only, out, err);
        CLI::App* sub = analyze_cmd->parsed() ? analyze_cmd : transform_cmd;
        for (const auto& p : param_names)
            if (sub->count("--" + p)) cfg.params[p] = param_values[p];
        if (!domain_text.empty()) cfg.domain = parse_domain(domain_text);
        cfg.format = formats.at(format);
        return sub == analyze_cmd ? cmd_analyze(cfg, out, err) : cmd_transform(cfg, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace confgauss
