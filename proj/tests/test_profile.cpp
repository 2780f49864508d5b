#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "nilric/radial.hpp"

using namespace nilric;

namespace {

// Richardson-extrapolated central difference, O(h^4).
double diff1(const std::function<double(double)>& fn, double x, double h = 1e-3) {
    auto d = [&](double s) { return (fn(x + s) - fn(x - s)) / (2 * s); };
    return (4 * d(h / 2) - d(h)) / 3;
}

double diff2(const std::function<double(double)>& fn, double x, double h = 1e-3) {
    auto d = [&](double s) { return (fn(x + s) - 2 * fn(x) + fn(x - s)) / (s * s); };
    return (4 * d(h / 2) - d(h)) / 3;
}

}  // namespace

TEST_CASE("warping exponents: frozen lists") {
    CHECK(alphas(1) == std::vector<Rat>{ratq(7, 4)});
    CHECK(alphas(2) == std::vector<Rat>{ratq(15, 4), ratq(13, 8)});
    CHECK(alphas(3) == std::vector<Rat>{ratq(31, 4), ratq(29, 8), ratq(25, 16)});
    CHECK(alphas(4) == std::vector<Rat>{ratq(63, 4), ratq(61, 8), ratq(57, 16), ratq(49, 32)});
    CHECK(alphas(6) == std::vector<Rat>{ratq(255, 4), ratq(253, 8), ratq(249, 16),
                                        ratq(241, 32), ratq(225, 64), ratq(193, 128)});
}

TEST_CASE("warping exponents: structural identities") {
    for (int n = 1; n <= 6; ++n) {
        auto al = alphas(n);
        REQUIRE(static_cast<int>(al.size()) == n);
        CHECK(al[0] == rat_pow(Rat(2), n) - ratq(1, 4));
        for (int i = 0; i + 1 < n; ++i) {
            CHECK(al[static_cast<size_t>(i)] ==
                  Rat(2) * al[static_cast<size_t>(i) + 1] + ratq(1, 2));
            CHECK(al[static_cast<size_t>(i)] > al[static_cast<size_t>(i) + 1]);
        }
        // every alpha_i * 2^{n+1} is an integer (poly substitution relies on it)
        Rat N = rat_pow(Rat(2), n + 1);
        for (const auto& a : al) {
            Rat aN = a * N;
            CHECK(aN.get_den() == 1);
        }
        CHECK(al.back() > 1);
        CHECK(warp_profile(n).alpha == al);
    }
    CHECK_THROWS_AS(alphas(0), std::out_of_range);
    CHECK_THROWS_AS(alphas(7), std::out_of_range);
}

TEST_CASE("radial evaluation at r = 0 and r = 1") {
    RadialEval e0 = radial_eval(2, 0.0);
    CHECK(e0.f == 0.0);
    CHECK(e0.fp == 1.0);
    CHECK(e0.fpp == 0.0);
    for (int i = 0; i < 2; ++i) {
        CHECK(e0.h[static_cast<size_t>(i)] == 1.0);
        CHECK(e0.hp[static_cast<size_t>(i)] == 0.0);
        double two_alpha = 2 * rat_to_double(alphas(2)[static_cast<size_t>(i)]);
        CHECK(e0.hpp[static_cast<size_t>(i)] == doctest::Approx(-two_alpha).epsilon(1e-14));
    }

    RadialEval e1 = radial_eval(1, 1.0);
    CHECK(e1.f == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-15));
    CHECK(e1.fp == doctest::Approx(1.5 * std::pow(2.0, -1.25)).epsilon(1e-15));
    CHECK(e1.h[0] == doctest::Approx(std::pow(2.0, -1.75)).epsilon(1e-15));
    // the derivative-ratio identity value: h_1'/h_1 = -7/4 at r = 1, n = 1
    CHECK(e1.hp[0] / e1.h[0] == doctest::Approx(-1.75).epsilon(1e-14));
    CHECK(e1.hpp[0] / e1.h[0] == doctest::Approx(49.0 / 16.0).epsilon(1e-14));
    CHECK(e1.fpp / e1.f == doctest::Approx(-7.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("radial derivatives match numeric differentiation") {
    for (int n : {1, 3}) {
        for (double r : {0.15, 0.8, 2.0, 5.5}) {
            RadialEval e = radial_eval(n, r);
            auto f = [&](double s) { return radial_eval(n, s).f; };
            CHECK(e.fp == doctest::Approx(diff1(f, r)).epsilon(1e-7));
            CHECK(e.fpp == doctest::Approx(diff2(f, r)).epsilon(1e-5));
            for (int i = 0; i < n; ++i) {
                auto h = [&](double s) { return radial_eval(n, s).h[static_cast<size_t>(i)]; };
                CHECK(e.hp[static_cast<size_t>(i)] ==
                      doctest::Approx(diff1(h, r)).epsilon(1e-7));
                CHECK(e.hpp[static_cast<size_t>(i)] ==
                      doctest::Approx(diff2(h, r)).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("profile ratio identities") {
    for (int n : {1, 2, 4}) {
        auto al = alphas(n);
        long N = 1L << (n + 1);
        for (double r : {0.05, 0.5, 1.0, 3.0, 12.0}) {
            RadialEval e = radial_eval(n, r);
            double x = r * r;
            for (int i = 0; i < n; ++i) {
                double a = rat_to_double(al[static_cast<size_t>(i)]);
                double lhs = e.hp[static_cast<size_t>(i)] / e.h[static_cast<size_t>(i)];
                CHECK(lhs == doctest::Approx(-2 * a * r / (1 + x)).epsilon(1e-13));
                double lhs2 = e.hpp[static_cast<size_t>(i)] / e.h[static_cast<size_t>(i)];
                CHECK(lhs2 ==
                      doctest::Approx(2 * a * ((2 * a + 1) * x - 1) / ((1 + x) * (1 + x)))
                          .epsilon(1e-13));
            }
            CHECK(e.fp == doctest::Approx((1 + x / 2) * std::pow(1 + x, -1.25)).epsilon(1e-14));
            CHECK(e.fpp / e.f ==
                  doctest::Approx(-(1.5 + x / 4) / ((1 + x) * (1 + x))).epsilon(1e-13));
            // (f/h_1)^2 = x (1+x)^{N-1}
            double q = std::pow(e.f / e.h[0], 2);
            CHECK(q == doctest::Approx(x * std::pow(1 + x, double(N - 1))).epsilon(1e-12));
        }
    }
}

TEST_CASE("RadialExpr ring operations") {
    RadialExpr x = RadialExpr::x();
    RadialExpr one = RadialExpr::constant(Rat(1));
    CHECK((x * x) == RadialExpr::monomial(Rat(1), 2, Rat(0)));
    CHECK((RadialExpr::one_plus_x_pow(ratq(3, 2)) * RadialExpr::one_plus_x_pow(ratq(1, 2))) ==
          RadialExpr::one_plus_x_pow(Rat(2)));
    CHECK((x - x).is_zero());
    CHECK((x + one - x) == one);
    CHECK((-(x * Rat(-3))) == RadialExpr::monomial(Rat(3), 1, Rat(0)));

    // distributivity spot check by evaluation
    RadialExpr a = RadialExpr::monomial(ratq(2, 3), 1, ratq(-5, 4)) + RadialExpr::constant(Rat(4));
    RadialExpr b = RadialExpr::one_plus_x_pow(ratq(1, 4)) - x;
    for (double r : {0.3, 1.7}) {
        CHECK((a * b).eval(r) == doctest::Approx(a.eval(r) * b.eval(r)).epsilon(1e-14));
        CHECK((a + b).eval(r) == doctest::Approx(a.eval(r) + b.eval(r)).epsilon(1e-14));
    }
    CHECK(a.max_p_denominator() == 4);
    CHECK(one.max_p_denominator() == 1);
}

TEST_CASE("to_poly substitution and round trip") {
    // q = x (1+x)^3 at n = 1 becomes u^16 - u^12
    RadialExpr q = RadialExpr::monomial(Rat(1), 1, Rat(3));
    RadialPoly p = to_poly(q, 1);
    CHECK(p.N == 4);
    CHECK(p.cleared == 0);
    REQUIRE(poly_degree(p.coeffs) == 16);
    CHECK(p.coeffs[16] == 1);
    CHECK(p.coeffs[12] == -1);
    for (double r : {0.0, 0.4, 2.2}) {
        CHECK(p.eval_at_r(r) == doctest::Approx(q.eval(r)).epsilon(1e-13));
    }
    CHECK(p.eval_exact_u(ratq(3, 2)) == q.eval_exact_u(ratq(3, 2), 4));

    // negative exponents are cleared by a recorded power of u
    RadialExpr neg = RadialExpr::one_plus_x_pow(ratq(-7, 4)) + RadialExpr::constant(Rat(1));
    RadialPoly pn = to_poly(neg, 1);
    CHECK(pn.cleared == 7);
    for (double r : {0.3, 1.9}) {
        CHECK(pn.eval_at_r(r) == doctest::Approx(neg.eval(r)).epsilon(1e-13));
    }

    // denominator 3 does not divide any 2^{n+1}
    RadialExpr bad = RadialExpr::one_plus_x_pow(ratq(1, 3));
    CHECK_THROWS_AS(to_poly(bad, 1), std::domain_error);
}

TEST_CASE("exact and scaled evaluation at rational u") {
    RadialExpr q = RadialExpr::monomial(Rat(1), 1, Rat(3));  // x(1+x)^3, n = 1
    // u = 3/2: x = 65/16, value = 65 * 81^3 / 16^4
    CHECK(q.eval_exact_u(ratq(3, 2), 4) == ratq(34543665, 65536));

    ScaledReal s = q.eval_scaled_u(ratq(3, 2), 4);
    CHECK(s.to_double() == doctest::Approx(rat_to_double(ratq(34543665, 65536))).epsilon(1e-14));

    // magnitudes far beyond double range stay consistent with exact values
    Rat u = rat_pow(Rat(2), 25);
    RadialExpr cube = RadialExpr::one_plus_x_pow(Rat(3));  // (1+x)^3 = u^12 = 2^300
    ScaledReal big = cube.eval_scaled_u(u, 4);
    CHECK(big.sign() == 1);
    ScaledReal expected = ScaledReal::pow(ScaledReal(2.0), 300);
    CHECK((big / expected).to_double() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ScaledReal arithmetic") {
    CHECK(ScaledReal::from_rat(ratq(3, 4)).to_double() == 0.75);
    CHECK(ScaledReal::from_int(Int(-12)).to_double() == -12.0);
    CHECK(ScaledReal::pow2(ratq(1, 2)).to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    ScaledReal a(1.5), b(-0.375);
    CHECK((a + b).to_double() == doctest::Approx(1.125));
    CHECK((a * b).to_double() == doctest::Approx(-0.5625));
    CHECK((a / b).to_double() == doctest::Approx(-4.0));
    CHECK((a - a).is_zero());
    CHECK(a.abs().sign() == 1);
    CHECK((-a).sign() == -1);

    ScaledReal huge = ScaledReal::pow(ScaledReal(2.0), 5000);
    CHECK(huge.exp2 == 5001);  // mantissa normalized into [0.5, 1)
    CHECK(huge.mant == 0.5);
    CHECK(huge.compare(ScaledReal::pow(ScaledReal(2.0), 4999)) > 0);
    CHECK(huge.compare(huge) == 0);
    CHECK((huge + ScaledReal(1.0)).compare(huge) >= 0);
    CHECK(huge.to_double() == HUGE_VAL);  // saturates
    CHECK((ScaledReal(1.0) / huge).sign() == 1);
}

TEST_CASE("rational helpers") {
    CHECK(ratq(2, 4) == Rat(1, 2));
    CHECK(ratq(-6, -4) == ratq(3, 2));
    CHECK(rat_from_string("-13/8") == ratq(-13, 8));
    CHECK(rat_to_string(ratq(25, 16)) == "25/16");
    CHECK(rat_to_string(Rat(7)) == "7");
    CHECK_THROWS(rat_from_string("7/"));
    CHECK(rat_pow(ratq(2, 3), 3) == ratq(8, 27));
    CHECK(rat_pow(ratq(2, 3), -2) == ratq(9, 4));
    CHECK(int_pow(Int(3), 4) == 81);
}
