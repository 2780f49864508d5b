#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nilric/oracle.hpp"

using namespace nilric;

namespace {

double frame_ric(const Matrix& ric, const std::vector<std::vector<double>>& frame,
                 size_t a, size_t b) {
    double acc = 0.0;
    for (size_t i = 0; i < ric.size(); ++i)
        for (size_t j = 0; j < ric.size(); ++j) acc += frame[a][i] * ric[i][j] * frame[b][j];
    return acc;
}

double max_abs(const Matrix& m) {
    double v = 0.0;
    for (const auto& row : m)
        for (double e : row) v = std::max(v, std::fabs(e));
    return v;
}

}  // namespace

TEST_CASE("flat space has vanishing finite-difference Ricci") {
    for (int d : {2, 4}) {
        Chart c = flat_chart(d);
        std::vector<double> pt(static_cast<size_t>(d), 0.37);
        CHECK(max_abs(fd_ricci(c, pt)) < 1e-9);
    }
}

TEST_CASE("round S^2 locks the Ricci sign convention") {
    Chart c = sphere2_chart();
    std::vector<double> pt = {1.1, 0.7};
    Matrix ric = fd_ricci(c, pt);
    // Ric = g on the unit sphere; a positive (1,1)-entry rules out the
    // opposite curvature sign convention in the assembly
    CHECK(ric[0][0] == doctest::Approx(1.0).epsilon(1e-7));
    double s = std::sin(pt[0]);
    CHECK(ric[1][1] == doctest::Approx(s * s).epsilon(1e-7));
    CHECK(std::fabs(ric[0][1]) < 1e-8);
}

TEST_CASE("round S^3 of radius rho has Ric = (2/rho^2) g") {
    for (double rho : {1.0, 2.5}) {
        Chart c = sphere3_chart(rho);
        std::vector<double> pt = {0.6, 0.8, 1.3};
        Matrix ric = fd_ricci(c, pt);
        Matrix g = c.metric(pt);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j)
                CHECK(ric[i][j] ==
                      doctest::Approx(2.0 / (rho * rho) * g[i][j]).epsilon(1e-6));
    }
}

TEST_CASE("Richardson extrapolation beats the raw second-order stencil") {
    Chart c = sphere2_chart();
    std::vector<double> pt = {1.1, 0.7};
    double raw_coarse = std::fabs(fd_ricci_raw(c, pt, 0.02)[0][0] - 1.0);
    double raw_fine = std::fabs(fd_ricci_raw(c, pt, 0.01)[0][0] - 1.0);
    double rich = std::fabs(fd_ricci(c, pt, 0.02)[0][0] - 1.0);
    CHECK(raw_coarse / raw_fine == doctest::Approx(4.0).epsilon(0.5));
    CHECK(rich < raw_coarse / 50.0);
}

TEST_CASE("ridders_derivative: smooth target and coarse-start restart path") {
    double err = 0.0;
    double d1 = ridders_derivative([](double x) { return std::exp(x); }, 0.3, 0.1, &err);
    CHECK(d1 == doctest::Approx(std::exp(0.3)).epsilon(1e-12));
    CHECK(err < 1e-8);

    // h0 = 0.5 spans several periods of sin(50 x); only the shrinking-scale
    // restarts bring the tableau into the convergent regime
    double d2 = ridders_derivative([](double x) { return std::sin(50.0 * x); }, 0.2, 0.5);
    CHECK(d2 == doctest::Approx(50.0 * std::cos(10.0)).epsilon(1e-6));
}

TEST_CASE("total space charts: shapes and metric blocks") {
    CHECK_THROWS_AS(total_space_chart("abelian", 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(total_space_chart("abelian", 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(total_space_chart("heisenberg3", 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(total_space_chart("nonsense", 1, 1), std::invalid_argument);

    Chart a1 = total_space_chart("abelian", 1, 1);
    CHECK(a1.dim == 3);
    double r = 1.2;
    auto re1 = radial_eval(1, r);
    Matrix g = a1.metric({0.3, r, 0.9});
    CHECK(g[0][0] == doctest::Approx(re1.h[0] * re1.h[0]).epsilon(1e-15));
    CHECK(g[1][1] == 1.0);
    CHECK(g[2][2] == doctest::Approx(re1.f * re1.f).epsilon(1e-15));

    Chart a2 = total_space_chart("abelian", 2, 2);
    CHECK(a2.dim == 6);
    double psi = 0.7;
    auto re2 = radial_eval(2, r);
    Matrix g2 = a2.metric({0.1, 0.2, r, psi, 0.3, 1.1});
    double f2 = re2.f * re2.f;
    CHECK(g2[3][3] == doctest::Approx(f2).epsilon(1e-15));
    CHECK(g2[4][4] == doctest::Approx(f2 * std::cos(psi) * std::cos(psi)).epsilon(1e-15));
    CHECK(g2[5][5] == doctest::Approx(f2 * std::sin(psi) * std::sin(psi)).epsilon(1e-15));

    // heisenberg: X_3 = d_y + x d_z produces the off-diagonal coframe block
    Chart h = total_space_chart("heisenberg3", 3, 1);
    CHECK(h.dim == 5);
    double xc = 0.4;
    auto re3 = radial_eval(3, r);
    Matrix gh = h.metric({0.2, xc, -0.1, r, 0.5});
    double h1s = re3.h[0] * re3.h[0];
    CHECK(gh[0][0] == doctest::Approx(h1s).epsilon(1e-15));
    CHECK(gh[0][2] == doctest::Approx(-xc * h1s).epsilon(1e-15));
    CHECK(gh[2][0] == gh[0][2]);
    CHECK(gh[2][2] == doctest::Approx(h1s * xc * xc + re3.h[2] * re3.h[2]).epsilon(1e-15));
    CHECK(gh[1][1] == doctest::Approx(re3.h[1] * re3.h[1]).epsilon(1e-15));
}

TEST_CASE("chart frames are orthonormal for the chart metric") {
    struct Cfg {
        const char* model;
        int n;
        long k;
        std::vector<double> pt;
    };
    const Cfg cfgs[] = {
        {"abelian", 1, 1, {0.3, 1.2, 0.9}},
        {"abelian", 2, 2, {0.1, -0.4, 0.8, 0.7, 0.2, 1.5}},
        {"heisenberg3", 3, 1, {0.2, 0.4, -0.1, 1.5, 0.5}},
    };
    for (const auto& c : cfgs) {
        Chart chart = total_space_chart(c.model, c.n, c.k);
        Matrix g = chart.metric(c.pt);
        auto frame = chart_frame(c.model, c.n, c.k, c.pt);
        REQUIRE(frame.size() == static_cast<size_t>(chart.dim));
        for (size_t a = 0; a < frame.size(); ++a)
            for (size_t b = 0; b < frame.size(); ++b) {
                double acc = 0.0;
                for (size_t i = 0; i < frame[a].size(); ++i)
                    for (size_t j = 0; j < frame[b].size(); ++j)
                        acc += frame[a][i] * g[i][j] * frame[b][j];
                CHECK(acc == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
            }
    }
}

TEST_CASE("finite-difference Ricci reproduces the closed-form diagonals") {
    struct Cfg {
        const char* model;
        const char* algebra;
        int n;
        long k;
        std::vector<std::vector<double>> pts;
    };
    const Cfg cfgs[] = {
        {"abelian", "abelian(1)", 1, 1,
         {{0.3, 0.6, 0.9}, {-0.2, 1.1, 0.4}, {0.0, 1.8, 2.0}}},
        {"abelian", "abelian(1)", 1, 2,
         {{0.3, 0.7, 0.6, 0.2, 1.1}, {0.1, 1.4, 0.9, 1.7, 0.5}}},
        {"heisenberg3", "heisenberg(3)", 3, 1,
         {{0.2, 0.4, -0.1, 0.8, 0.5}, {-0.3, 0.25, 0.15, 1.5, 1.2}}},
    };
    for (const auto& cfg : cfgs) {
        Chart chart = total_space_chart(cfg.model, cfg.n, cfg.k);
        SubmersionParams p(catalog_algebra(cfg.algebra), cfg.k, 1);
        for (const auto& pt : cfg.pts) {
            double r = pt[static_cast<size_t>(cfg.n)];
            Matrix ric = fd_ricci(chart, pt);
            auto frame = chart_frame(cfg.model, cfg.n, cfg.k, pt);
            std::vector<double> expect;
            for (int i = 1; i <= cfg.n; ++i) expect.push_back(total_ric_yy(p, i, r));
            expect.push_back(total_ric_rr(p, r));
            for (long u = 0; u < 2 * cfg.k - 1; ++u) expect.push_back(total_ric_uu(p, r));
            REQUIRE(frame.size() == expect.size());
            for (size_t a = 0; a < expect.size(); ++a) {
                double got = frame_ric(ric, frame, a, a);
                double scale = std::max({std::fabs(expect[a]), std::fabs(got), 1.0});
                CHECK(std::fabs(got - expect[a]) / scale < 1e-3);
                for (size_t b = a + 1; b < expect.size(); ++b)
                    CHECK(std::fabs(frame_ric(ric, frame, a, b)) < 1e-3 * scale);
            }
        }
    }
}

TEST_CASE("identity suite passes across n and m at 1e-8") {
    const std::vector<double> radii = {0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.5, 2.2, 3.5, 6.0};
    const char* expected_names[] = {
        "mean-curvature-derivative", "vertical-second-fundamental", "a-tensor-norm",
        "profile-ratios",            "oneill-rr-assembly",          "oneill-wprime-assembly",
    };
    for (int n : {1, 2, 3}) {
        for (long m : {1L, 2L, 3L}) {
            IdentityReport rep = identity_suite(n, m, radii);
            CHECK(rep.passed);
            REQUIRE(rep.checks.size() == 6);
            for (size_t i = 0; i < rep.checks.size(); ++i) {
                CHECK(rep.checks[i].name == expected_names[i]);
                CHECK(rep.checks[i].passed);
                CHECK(rep.checks[i].max_rel_err <= 1e-8);
            }
        }
    }
    CHECK_THROWS_AS(identity_suite(1, 1, {0.5, 0.0}), std::invalid_argument);
}
