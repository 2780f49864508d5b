#include "nilric/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include <CLI11.hpp>

#include "nilric/chartop.hpp"
#include "nilric/oracle.hpp"
#include "nilric/report.hpp"

namespace nilric {
namespace {

NilpotentAlgebra resolve_algebra(const std::string& spec) {
    if (spec.find('/') == std::string::npos && spec.find('.') == std::string::npos) {
        try {
            return catalog_algebra(spec);
        } catch (const std::invalid_argument&) {
        }
    }
    return load_algebra_json(spec);
}

CertMode parse_mode(const std::string& s) {
    return s == "grid" ? CertMode::grid : CertMode::sturm;
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::positive: return 0;
        case Verdict::not_positive: return 1;
        case Verdict::inconclusive: return 3;
    }
    return 2;
}

int cmd_catalog() {
    for (const auto& [name, dim] : catalog()) std::printf("%-14s dim %d\n", name.c_str(), dim);
    return 0;
}

int cmd_validate(const std::string& spec) {
    NilpotentAlgebra a = resolve_algebra(spec);
    ValidationReport rep = validate(a);
    if (rep.passed) {
        std::printf("%s: passed\n", a.name.c_str());
        return 0;
    }
    std::printf("%s: failed\n", a.name.c_str());
    for (const auto& v : rep.violations) {
        std::string idx;
        for (size_t i = 0; i < v.indices.size(); ++i)
            idx += (i ? "," : "") + std::to_string(v.indices[i]);
        std::printf("  %s (%s) witness %s\n", v.check.c_str(), idx.c_str(),
                    rat_to_string(v.witness).c_str());
    }
    return 1;
}

int cmd_mink(const std::string& spec, long m, const std::string& mode) {
    NilpotentAlgebra a = resolve_algebra(spec);
    MinKResult res = min_k(a, m, parse_mode(mode));
    SubmersionParams p(a, res.k, m);
    std::fputs(certificate_json(p, res.cert).c_str(), stdout);
    return verdict_exit(res.cert.verdict);
}

int cmd_certify(const std::string& spec, long k, long m, const std::string& mode) {
    SubmersionParams p(resolve_algebra(spec), k, m);
    PositivityCertificate cert = certify_positivity(p, parse_mode(mode));
    std::fputs(certificate_json(p, cert).c_str(), stdout);
    return verdict_exit(cert.verdict);
}

int cmd_scan(const std::string& spec, long k, long m, double r_max, int steps,
             const std::string& out_path) {
    if (!(r_max > 0) || steps < 1) {
        std::fputs("nilric: scan needs --r-max > 0 and --steps >= 1\n", stderr);
        return 2;
    }
    SubmersionParams p(resolve_algebra(spec), k, m);
    std::vector<BaseDiag> rows = scan(p, r_max, steps);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::fprintf(stderr, "nilric: cannot open %s\n", out_path.c_str());
        return 2;
    }
    out << scan_csv(p, rows);
    out.flush();
    if (!out.good()) {
        std::fprintf(stderr, "nilric: write failed on %s\n", out_path.c_str());
        return 2;
    }
    return 0;
}

double frame_vs_fd(const std::string& model, int n, long k, const std::vector<double>& pt,
                   double r) {
    Chart chart = total_space_chart(model, n, k);
    SubmersionParams p(model == "heisenberg3" ? catalog_algebra("heisenberg(3)")
                                              : make_abelian(n),
                       k, 1);
    Matrix ric = fd_ricci(chart, pt);
    std::vector<std::vector<double>> frame = chart_frame(model, n, k, pt);
    int dim = chart.dim;
    std::vector<double> expected(dim, total_ric_uu(p, r));
    for (int i = 0; i < n; ++i) expected[i] = total_ric_yy(p, i + 1, r);
    expected[n] = total_ric_rr(p, r);
    double worst = 0;
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            double val = 0;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) val += frame[a][i] * ric[i][j] * frame[b][j];
            double exp_ab = a == b ? expected[a] : 0.0;
            worst = std::max(worst, std::abs(val - exp_ab) / std::max(1.0, std::abs(exp_ab)));
        }
    return worst;
}

int cmd_oracle() {
    bool all = true;
    auto report = [&](const char* label, double err, double tol) {
        bool ok = err <= tol;
        all = all && ok;
        std::printf("%-34s max rel err %.3e  %s\n", label, err, ok ? "pass" : "FAIL");
    };

    {
        Matrix ric = fd_ricci(flat_chart(4), {0.1, -0.2, 0.3, 0.4});
        double worst = 0;
        for (const auto& row : ric)
            for (double v : row) worst = std::max(worst, std::abs(v));
        report("flat(4) vanishing", worst, 1e-8);
    }
    {
        Chart s2 = sphere2_chart();
        std::vector<double> pt = {0.9, 1.1};
        Matrix ric = fd_ricci(s2, pt);
        Matrix g = s2.metric(pt);
        double worst = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                worst = std::max(worst, std::abs(ric[i][j] - g[i][j]));
        report("sphere2 Ric = g", worst, 1e-7);
    }
    {
        double rad = 1.7;
        Chart s3 = sphere3_chart(rad);
        std::vector<double> pt = {0.7, 0.8, 2.1};
        Matrix ric = fd_ricci(s3, pt);
        Matrix g = s3.metric(pt);
        double worst = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::abs(ric[i][j] - 2.0 / (rad * rad) * g[i][j]));
        report("sphere3 Ric = (2/r^2) g", worst, 1e-7);
    }

    struct FdCase {
        const char* model;
        int n;
        long k;
    };
    for (FdCase fc : {FdCase{"abelian", 1, 1}, FdCase{"abelian", 2, 1}, FdCase{"abelian", 1, 2},
                      FdCase{"heisenberg3", 3, 1}}) {
        std::mt19937 rng(911u + static_cast<unsigned>(fc.n) + 10u * static_cast<unsigned>(fc.k) +
                         (fc.model[0] == 'h' ? 100u : 0u));
        std::uniform_real_distribution<double> coord(-0.7, 0.7);
        std::uniform_real_distribution<double> rad(0.3, fc.model[0] == 'h' ? 1.8 : 3.0);
        std::uniform_real_distribution<double> psi(0.5, 1.0);
        std::uniform_real_distribution<double> phi(0.3, 5.9);
        double worst = 0;
        for (int t = 0; t < 5; ++t) {
            std::vector<double> pt;
            for (int i = 0; i < fc.n; ++i) pt.push_back(coord(rng));
            double r = rad(rng);
            pt.push_back(r);
            if (fc.k == 1) {
                pt.push_back(phi(rng));
            } else {
                pt.push_back(psi(rng));
                pt.push_back(phi(rng));
                pt.push_back(phi(rng));
            }
            worst = std::max(worst, frame_vs_fd(fc.model, fc.n, fc.k, pt, r));
        }
        char label[64];
        std::snprintf(label, sizeof label, "%s n=%d k=%ld vs closed form", fc.model, fc.n, fc.k);
        report(label, worst, 1e-3);
    }

    std::vector<double> radii = {0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.5, 2.2, 3.5, 6.0};
    for (int n = 1; n <= 3; ++n)
        for (long m = 1; m <= 3; ++m) {
            IdentityReport rep = identity_suite(n, m, radii);
            double worst = 0;
            for (const auto& c : rep.checks) worst = std::max(worst, c.max_rel_err);
            char label[64];
            std::snprintf(label, sizeof label, "identity suite n=%d m=%ld", n, m);
            report(label, worst, 1e-8);
            all = all && rep.passed;
        }

    std::printf("oracle: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}

int class_rank(const std::string& expr) {
    int d = 4;
    for (size_t i = 0; i + 1 < expr.size(); ++i)
        if (expr[i] == 'x' && std::isdigit(static_cast<unsigned char>(expr[i + 1]))) {
            int v = std::atoi(expr.c_str() + i + 1);
            d = std::max(d, v);
        }
    return d;
}

int cmd_topology(const std::string& demo, std::string expr, long k, long m) {
    if (demo == "gysin") {
        if (expr.empty()) expr = "x1^x2 + x3^x4";
        ExtClass e = parse_class(expr, class_rank(expr));
        GysinData g = gysin_demo(e);
        std::printf("e = %s\n", ext_to_string(g.e).c_str());
        std::printf("cup matrix on degree 1:\n");
        for (const auto& row : g.mat) {
            std::string line = " ";
            for (const auto& v : row) line += " " + v.get_str();
            std::printf("%s\n", line.c_str());
        }
        Int adet = ::abs(g.det);
        std::printf("det = %s, |det| = %s\n", g.det.get_str().c_str(), adet.get_str().c_str());
        std::printf("e^2 = %s\n", ext_to_string(g.e_squared).c_str());
        return 0;
    }
    if (expr.empty()) expr = "x1^x2 + x3^x4";
    ExtClass alpha = parse_class(expr, class_rank(expr));
    BundleClasses bc = pontryagin(alpha, k, m);
    std::printf("alpha = %s\n", ext_to_string(alpha).c_str());
    std::printf("c1 = %s\n", ext_to_string(bc.c1).c_str());
    std::printf("p1 = %s\n", ext_to_string(bc.p1).c_str());
    std::printf("total p = %s\n", ext_to_string(bc.total_p).c_str());
    std::printf("alpha^2 %s\n", has_nontorsion_square(alpha)
                                    ? "nonzero: p1 separates twists of distinct |m|"
                                    : "= 0: p1 carries no twist information");
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
    CLI::App app{"positive Ricci curvature certificates for vector bundles over nilmanifolds"};
    app.name("nilric");
    app.require_subcommand(1);

    CLI::App* sub_catalog = app.add_subcommand("catalog", "list built-in algebras");

    std::string val_spec;
    CLI::App* sub_validate = app.add_subcommand("validate", "validate an algebra JSON file");
    sub_validate->add_option("file", val_spec, "algebra JSON file or catalog name")->required();

    std::string mk_spec, mk_mode = "sturm";
    long mk_m = 0;
    CLI::App* sub_mink = app.add_subcommand("mink", "minimal fiber rank with a positive certificate");
    sub_mink->add_option("--algebra", mk_spec, "catalog name or JSON file")->required();
    sub_mink->add_option("--m", mk_m, "twist, nonzero")->required();
    sub_mink->add_option("--mode", mk_mode)->check(CLI::IsMember({"sturm", "grid"}));

    std::string ct_spec, ct_mode = "sturm";
    long ct_k = 0, ct_m = 0;
    CLI::App* sub_certify = app.add_subcommand("certify", "certify base Ricci positivity");
    sub_certify->add_option("--algebra", ct_spec, "catalog name or JSON file")->required();
    sub_certify->add_option("--k", ct_k, "complex fiber rank")->required();
    sub_certify->add_option("--m", ct_m, "twist, nonzero")->required();
    sub_certify->add_option("--mode", ct_mode)->check(CLI::IsMember({"sturm", "grid"}));

    std::string sc_spec, sc_out;
    long sc_k = 0, sc_m = 0;
    double sc_rmax = 50.0;
    int sc_steps = 500;
    CLI::App* sub_scan = app.add_subcommand("scan", "tabulate base Ricci diagonals to CSV");
    sub_scan->add_option("--algebra", sc_spec, "catalog name or JSON file")->required();
    sub_scan->add_option("--k", sc_k, "complex fiber rank")->required();
    sub_scan->add_option("--m", sc_m, "twist, nonzero")->required();
    sub_scan->add_option("--r-max", sc_rmax, "largest radius");
    sub_scan->add_option("--steps", sc_steps, "number of radial steps");
    sub_scan->add_option("--out", sc_out, "output CSV path")->required();

    bool or_suite = false;
    CLI::App* sub_oracle = app.add_subcommand("oracle", "numerical cross-check suites");
    sub_oracle->add_flag("--suite", or_suite, "run the full suite")->required();

    std::string tp_demo, tp_class;
    long tp_k = 1, tp_m = 1;
    CLI::App* sub_topology = app.add_subcommand("topology", "cohomology demos");
    sub_topology->add_option("--demo", tp_demo)
        ->check(CLI::IsMember({"gysin", "pontryagin"}))
        ->required();
    sub_topology->add_option("--class", tp_class, "wedge expression, e.g. \"x1^x2 + x3^x4\"");
    sub_topology->add_option("--k", tp_k, "complex fiber rank");
    sub_topology->add_option("--m", tp_m, "twist");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_catalog->parsed()) return cmd_catalog();
        if (sub_validate->parsed()) return cmd_validate(val_spec);
        if (sub_mink->parsed()) return cmd_mink(mk_spec, mk_m, mk_mode);
        if (sub_certify->parsed()) return cmd_certify(ct_spec, ct_k, ct_m, ct_mode);
        if (sub_scan->parsed()) return cmd_scan(sc_spec, sc_k, sc_m, sc_rmax, sc_steps, sc_out);
        if (sub_oracle->parsed()) return cmd_oracle();
        if (sub_topology->parsed()) return cmd_topology(tp_demo, tp_class, tp_k, tp_m);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "nilric: %s\n", e.what());
        return 2;
    }
    return 2;
}

}  // namespace nilric
