#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nilric/nilalg.hpp"
#include "nilric/report.hpp"

using namespace nilric;

namespace {
std::string data_path(const char* name) { return std::string(NILRIC_DATA) + "/" + name; }
}  // namespace

TEST_CASE("catalog contents") {
    auto cat = catalog();
    CHECK(cat.size() == 12);
    for (const auto& [name, dim] : cat) {
        NilpotentAlgebra a = catalog_algebra(name);
        CHECK(a.dim == dim);
        CHECK(validate(a).passed);
    }
    CHECK(catalog_algebra("abelian2").dim == 2);
    CHECK(catalog_algebra("Heisenberg(3)").name == "heisenberg(3)");
    CHECK(catalog_algebra("ut4").dim == 6);
    CHECK_THROWS_AS(catalog_algebra("so(3)"), std::invalid_argument);
}

TEST_CASE("bracket tables") {
    NilpotentAlgebra h = make_heisenberg(3);
    CHECK(h.at(1, 2, 0) == 1);   // [X2, X3] = X1, 0-based storage
    CHECK(h.at(2, 1, 0) == -1);  // antisymmetric partner
    CHECK(h.at(0, 1, 2) == 0);

    NilpotentAlgebra t = make_twisted4();
    CHECK(t.at(1, 3, 0) == 1);  // [X2, X4] = X1
    CHECK(t.at(2, 3, 0) == 1);  // [X3, X4] = X1

    // ut(4): strictly upper triangular 4x4, adapted ordering by diagonal distance
    NilpotentAlgebra u = make_ut(4);
    CHECK(u.dim == 6);
    CHECK(u.at(1, 5, 0) == 1);   // [E13, E34] = E14
    CHECK(u.at(2, 3, 0) == -1);  // [E24, E12] = -E14
    CHECK(u.at(3, 4, 1) == 1);   // [E12, E23] = E13
    CHECK(u.at(4, 5, 2) == 1);   // [E23, E34] = E24

    CHECK(make_ut(2).dim == 1);
    CHECK(make_ut(3).dim == 3);
    CHECK_THROWS_AS(make_ut(5), std::out_of_range);
    CHECK_THROWS_AS(make_heisenberg(4), std::out_of_range);
}

TEST_CASE("validation catches planted violations") {
    NilpotentAlgebra bad = make_abelian(3);
    bad.set_bracket(2, 3, 3, Rat(1));  // [X2, X3] = X3 is not adapted
    auto rep = validate(bad);
    REQUIRE(!rep.passed);
    bool saw_adapted = false;
    for (const auto& v : rep.violations) saw_adapted |= v.check == "adapted";
    CHECK(saw_adapted);
    CHECK_THROWS_AS(algebra_bound_c(bad), std::domain_error);

    // breaking antisymmetry by editing one orientation only
    NilpotentAlgebra asym = make_heisenberg(3);
    asym.at(2, 1, 0) = Rat(1);
    auto rep2 = validate(asym);
    REQUIRE(!rep2.passed);
    bool saw_antisym = false;
    for (const auto& v : rep2.violations) saw_antisym |= v.check == "antisymmetry";
    CHECK(saw_antisym);
}

TEST_CASE("jacobi violation detected on a handcrafted adapted table") {
    NilpotentAlgebra a;
    a.name = "bad-jacobi";
    a.dim = 5;
    a.c.assign(5 * 5 * 5, Rat(0));
    a.set_bracket(2, 5, 1, Rat(1));
    a.set_bracket(3, 4, 2, Rat(1));
    a.set_bracket(3, 5, 1, Rat(1));
    a.set_bracket(4, 5, 3, Rat(1));
    auto rep = validate(a);
    REQUIRE(!rep.passed);
    bool saw_jacobi = false;
    for (const auto& v : rep.violations) {
        CHECK(v.check != "antisymmetry");
        CHECK(v.check != "adapted");
        saw_jacobi |= v.check == "jacobi";
    }
    CHECK(saw_jacobi);
}

TEST_CASE("heisenberg(3) rescaled Ricci closed form") {
    auto ric = ricci_monomials(make_heisenberg(3));
    // diag(+1/2, -1/2, -1/2) * (1+x)^{-41/8}
    Rat p = ratq(-41, 8);
    CHECK(ric[0][0] == RadialExpr::monomial(ratq(1, 2), 0, p));
    CHECK(ric[1][1] == RadialExpr::monomial(ratq(-1, 2), 0, p));
    CHECK(ric[2][2] == RadialExpr::monomial(ratq(-1, 2), 0, p));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(ric[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero());
    // exponent check: 2(alpha_2 + alpha_3 - alpha_1) = -41/4, so the trace-free
    // scaling decays strictly faster than (1+x)^{-1}
    CHECK(p < Rat(-1));
}

TEST_CASE("twisted4 has the lone off-diagonal monomial") {
    auto ric = ricci_monomials(make_twisted4());
    CHECK(ric[1][2] == RadialExpr::monomial(ratq(-1, 2), 0, ratq(-69, 4)));
    CHECK(ric[1][2] == ric[2][1]);
    CHECK(ric[0][1].is_zero());
    CHECK(ric[0][0] ==
          RadialExpr::monomial(ratq(1, 2), 0, ratq(-211, 16)) +
              RadialExpr::monomial(ratq(1, 2), 0, ratq(-341, 16)));
}

TEST_CASE("abelian Ricci vanishes") {
    auto ric = ricci_monomials(make_abelian(4));
    for (const auto& row : ric)
        for (const auto& e : row) CHECK(e.is_zero());
}

TEST_CASE("scaled_ricci is symmetric and matches the monomials") {
    for (const char* name : {"heisenberg(3)", "twisted4", "ut(4)"}) {
        NilpotentAlgebra a = catalog_algebra(name);
        auto mono = ricci_monomials(a);
        for (double r : {0.0, 0.6, 1.3, 4.0}) {
            auto m = scaled_ricci(a, a.dim, r);
            for (int i = 0; i < a.dim; ++i)
                for (int j = 0; j < a.dim; ++j) {
                    CHECK(m[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
                          m[static_cast<size_t>(j)][static_cast<size_t>(i)]);
                    CHECK(m[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
                          doctest::Approx(mono[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(r))
                              .epsilon(1e-12));
                }
        }
    }
}

TEST_CASE("commutation condition") {
    CHECK(check_commutation_condition(make_abelian(5)));
    CHECK(check_commutation_condition(make_heisenberg(3)));
    CHECK(check_commutation_condition(make_heisenberg(5)));
    CHECK(check_commutation_condition(make_ut(4)));
    CHECK(!check_commutation_condition(make_twisted4()));
    auto viol = find_commutation_violation(make_twisted4());
    REQUIRE(viol.has_value());
    auto [i, j, k, l] = *viol;
    // c_{ij}^l and c_{jk}^l both nonzero with i != k
    CHECK(make_twisted4().at(i - 1, j - 1, l - 1) != 0);
    CHECK(make_twisted4().at(j - 1, k - 1, l - 1) != 0);
    CHECK(i != k);
    CHECK(!find_commutation_violation(make_ut(4)).has_value());
}

TEST_CASE("off-diagonal decay constants") {
    struct Row {
        const char* name;
        Rat c, c_diag;
    };
    const Row rows[] = {
        {"abelian(3)", Rat(0), Rat(0)},
        {"heisenberg(3)", Rat(0), ratq(1, 2)},
        {"ut(4)", Rat(0), Rat(1)},
        {"twisted4", ratq(1, 2), Rat(1)},
    };
    for (const auto& row : rows) {
        auto b = algebra_bound_c(catalog_algebra(row.name));
        CHECK(b.certified);
        CHECK(b.c == row.c);
        CHECK(b.c_diag == row.c_diag);
    }
    auto tb = algebra_bound_c(make_twisted4());
    REQUIRE(!tb.worst.empty());
    CHECK(tb.worst.front() == std::array<int, 4>{2, 4, 3, 1});
    CHECK(!tb.exponent_table.empty());
    for (const auto& [key, e] : tb.exponent_table) CHECK(e <= Rat(-1));

    // the certified decay: (1+r^2) |Ric_G(Y_i, Y_j)| <= c on a dense grid
    NilpotentAlgebra tw = make_twisted4();
    for (double r = 0.0; r <= 25.0; r += 0.25) {
        auto m = scaled_ricci(tw, tw.dim, r);
        for (int i = 0; i < tw.dim; ++i)
            for (int j = 0; j < tw.dim; ++j) {
                if (i == j) continue;
                CHECK((1 + r * r) * std::fabs(m[static_cast<size_t>(i)][static_cast<size_t>(j)]) <=
                      rat_to_double(tb.c) + 1e-12);
            }
    }
}

TEST_CASE("algebra json round trip and fixtures") {
    NilpotentAlgebra h = load_algebra_json(data_path("heisenberg3.json"));
    CHECK(h.dim == 3);
    CHECK(validate(h).passed);
    NilpotentAlgebra ref = make_heisenberg(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) CHECK(h.at(i, j, l) == ref.at(i, j, l));

    NilpotentAlgebra bj = load_algebra_json(data_path("bad_jacobi.json"));
    auto rep = validate(bj);
    REQUIRE(!rep.passed);
    CHECK(rep.violations.front().check == "jacobi");

    NilpotentAlgebra ba = load_algebra_json(data_path("bad_adapted.json"));
    auto rep2 = validate(ba);
    REQUIRE(!rep2.passed);
    CHECK(rep2.violations.front().check == "adapted");

    // serialize -> parse round trip preserves every structure constant
    NilpotentAlgebra u = make_ut(4);
    NilpotentAlgebra u2 = algebra_from_json_text(algebra_to_json_text(u));
    CHECK(u2.dim == u.dim);
    for (int i = 0; i < u.dim; ++i)
        for (int j = 0; j < u.dim; ++j)
            for (int l = 0; l < u.dim; ++l) CHECK(u2.at(i, j, l) == u.at(i, j, l));

    CHECK_THROWS(load_algebra_json(data_path("missing.json")));
    CHECK_THROWS(algebra_from_json_text("{\"name\": \"x\", \"dim\": 0, \"brackets\": []}"));
    CHECK_THROWS(algebra_from_json_text(
        "{\"name\": \"x\", \"dim\": 2, \"brackets\": [{\"i\": 2, \"j\": 1, \"coeffs\": {\"1\": \"1\"}}]}"));
}
