#include "nilric/nilalg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nilric {

void NilpotentAlgebra::set_bracket(int i, int j, int l, const Rat& v) {
    if (i < 1 || j < 1 || l < 1 || i > dim || j > dim || l > dim)
        throw std::out_of_range("set_bracket: index out of range");
    if (i == j) throw std::invalid_argument("set_bracket: i == j");
    at(i - 1, j - 1, l - 1) = v;
    at(j - 1, i - 1, l - 1) = -v;
}

namespace {

NilpotentAlgebra blank(const std::string& name, int dim) {
    NilpotentAlgebra a;
    a.name = name;
    a.dim = dim;
    a.c.assign(static_cast<size_t>(dim) * dim * dim, Rat(0));
    return a;
}

}  // namespace

NilpotentAlgebra make_abelian(int n) {
    if (n < 1 || n > 6) throw std::out_of_range("abelian(n): n must be in [1, 6]");
    return blank("abelian(" + std::to_string(n) + ")", n);
}

NilpotentAlgebra make_heisenberg(int dim) {
    if (dim < 3 || dim > 5 || dim % 2 == 0)
        throw std::out_of_range("heisenberg(d): d must be 3 or 5");
    auto a = blank("heisenberg(" + std::to_string(dim) + ")", dim);
    for (int i = 2; i + 1 <= dim; i += 2) a.set_bracket(i, i + 1, 1, Rat(1));
    return a;
}

NilpotentAlgebra make_ut(int d) {
    if (d < 2 || d > 4) throw std::out_of_range("ut(d): d must be in [2, 4]");
    // triangular basis E_{ab}, a < b, ordered by decreasing b-a so that the
    // filtration is adapted (brackets strictly increase b-a)
    struct Pos { int a, b; };
    std::vector<Pos> basis;
    for (int len = d - 1; len >= 1; --len)
        for (int a1 = 1; a1 + len <= d; ++a1) basis.push_back({a1, a1 + len});
    int n = static_cast<int>(basis.size());
    auto idx_of = [&](int a1, int b1) -> int {
        for (int s = 0; s < n; ++s)
            if (basis[static_cast<size_t>(s)].a == a1 && basis[static_cast<size_t>(s)].b == b1) return s + 1;
        return 0;
    };
    auto alg = blank("ut(" + std::to_string(d) + ")", n);
    for (int s = 1; s <= n; ++s)
        for (int t = s + 1; t <= n; ++t) {
            auto [a1, b1] = basis[static_cast<size_t>(s - 1)];
            auto [a2, b2] = basis[static_cast<size_t>(t - 1)];
            // [E_{a1 b1}, E_{a2 b2}] = delta_{b1 a2} E_{a1 b2} - delta_{b2 a1} E_{a2 b1}
            if (b1 == a2) alg.set_bracket(s, t, idx_of(a1, b2), Rat(1));
            else if (b2 == a1) alg.set_bracket(s, t, idx_of(a2, b1), Rat(-1));
        }
    return alg;
}

NilpotentAlgebra make_twisted4() {
    auto a = blank("twisted4", 4);
    a.set_bracket(2, 4, 1, Rat(1));
    a.set_bracket(3, 4, 1, Rat(1));
    return a;
}

NilpotentAlgebra catalog_algebra(const std::string& name) {
    std::string base;
    std::string digits;
    for (char ch : name) {
        if (std::isalpha(static_cast<unsigned char>(ch))) base.push_back(static_cast<char>(std::tolower(ch)));
        else if (std::isdigit(static_cast<unsigned char>(ch))) digits.push_back(ch);
        else if (ch != '(' && ch != ')' && ch != '_')
            throw std::invalid_argument("unknown algebra name: " + name);
    }
    int p = digits.empty() ? -1 : std::stoi(digits);
    if (base == "abelian" && p >= 1) return make_abelian(p);
    if (base == "heisenberg" && p >= 3) return make_heisenberg(p);
    if (base == "ut" && p >= 2) return make_ut(p);
    if (base == "twisted" && p == 4) return make_twisted4();
    throw std::invalid_argument("unknown algebra name: " + name);
}

std::vector<std::pair<std::string, int>> catalog() {
    std::vector<std::pair<std::string, int>> out;
    for (int n = 1; n <= 6; ++n) out.emplace_back("abelian(" + std::to_string(n) + ")", n);
    out.emplace_back("heisenberg(3)", 3);
    out.emplace_back("heisenberg(5)", 5);
    out.emplace_back("ut(2)", 1);
    out.emplace_back("ut(3)", 3);
    out.emplace_back("ut(4)", 6);
    out.emplace_back("twisted4", 4);
    return out;
}

ValidationReport validate(const NilpotentAlgebra& a) {
    ValidationReport rep;
    int n = a.dim;
    auto fail = [&](const std::string& check, std::vector<int> idx, const Rat& w) {
        rep.passed = false;
        rep.violations.push_back({check, std::move(idx), w});
    };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                Rat s = a.at(i, j, l) + a.at(j, i, l);
                if (s != 0) fail("antisymmetry", {i + 1, j + 1, l + 1}, s);
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                if (a.at(i, j, l) != 0 && l >= std::min(i, j))
                    fail("adapted", {i + 1, j + 1, l + 1}, a.at(i, j, l));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Rat s(0);
                    for (int m = 0; m < n; ++m)
                        s += a.at(i, j, m) * a.at(m, k, l) + a.at(j, k, m) * a.at(m, i, l) +
                             a.at(k, i, m) * a.at(m, j, l);
                    if (s != 0) fail("jacobi", {i + 1, j + 1, k + 1, l + 1}, s);
                }
    return rep;
}

std::optional<std::array<int, 4>> find_commutation_violation(const NilpotentAlgebra& a) {
    int n = a.dim;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == k) continue;
                for (int l = 0; l < n; ++l)
                    if (a.at(i, j, l) * a.at(j, k, l) != 0)
                        return std::array<int, 4>{i + 1, j + 1, k + 1, l + 1};
            }
    return std::nullopt;
}

bool check_commutation_condition(const NilpotentAlgebra& a) {
    return !find_commutation_violation(a).has_value();
}

std::vector<std::vector<RadialExpr>> ricci_monomials(const NilpotentAlgebra& a) {
    int n = a.dim;
    auto al = alphas(n);
    auto gamma_exp = [&](int i, int j, int l) -> Rat {
        return al[static_cast<size_t>(i)] + al[static_cast<size_t>(j)] - al[static_cast<size_t>(l)];
    };
    std::vector<std::vector<RadialExpr>> ric(static_cast<size_t>(n),
                                             std::vector<RadialExpr>(static_cast<size_t>(n)));
    for (int p = 0; p < n; ++p)
        for (int q = p; q < n; ++q) {
            RadialExpr e;
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) {
                    Rat cc = a.at(p, i, l) * a.at(q, i, l);
                    if (cc != 0)
                        e += RadialExpr::monomial(Rat(-1, 2) * cc, 0, gamma_exp(p, i, l) + gamma_exp(q, i, l));
                }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Rat cc = a.at(i, j, p) * a.at(i, j, q);
                    if (cc != 0)
                        e += RadialExpr::monomial(Rat(1, 4) * cc, 0, gamma_exp(i, j, p) + gamma_exp(i, j, q));
                }
            ric[static_cast<size_t>(p)][static_cast<size_t>(q)] = e;
            ric[static_cast<size_t>(q)][static_cast<size_t>(p)] = e;
        }
    return ric;
}

std::vector<std::vector<double>> scaled_ricci(const NilpotentAlgebra& a, int n, double r) {
    if (n != a.dim) throw std::invalid_argument("scaled_ricci: dimension mismatch");
    auto mono = ricci_monomials(a);
    std::vector<std::vector<double>> out(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = mono[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(r);
    return out;
}

AlgebraBound algebra_bound_c(const NilpotentAlgebra& a) {
    int n = a.dim;
    auto al = alphas(n);
    auto gamma_exp = [&](int i, int j, int l) -> Rat {
        return al[static_cast<size_t>(i)] + al[static_cast<size_t>(j)] - al[static_cast<size_t>(l)];
    };
    AlgebraBound b;
    b.c = 0;
    b.c_diag = 0;
    b.certified = true;
    auto label = [](const std::string& tag, std::initializer_list<int> idx) {
        std::ostringstream os;
        os << tag << "(";
        bool first = true;
        for (int v : idx) {
            if (!first) os << ",";
            os << v;
            first = false;
        }
        os << ")";
        return os.str();
    };
    auto note_exponent = [&](const std::string& key, const Rat& e) {
        b.exponent_table.emplace_back(key, e);
        if (e > -1) b.certified = false;
    };

    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            Rat total(0);
            std::vector<std::array<int, 4>> quads;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Rat cc = a.at(p, k, l) * a.at(q, k, l);
                    if (cc == 0) continue;
                    total += abs(Rat(-1, 2) * cc);
                    quads.push_back({p + 1, k + 1, q + 1, l + 1});
                    note_exponent(label("", {p + 1, k + 1, q + 1, l + 1}),
                                  gamma_exp(p, k, l) + gamma_exp(q, k, l));
                }
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    Rat cc = a.at(i, j, p) * a.at(i, j, q);
                    if (cc == 0) continue;
                    total += abs(Rat(1, 2) * cc);  // ordered pairs (i,j) and (j,i)
                    quads.push_back({i + 1, j + 1, p + 1, q + 1});
                    note_exponent(label("sq", {i + 1, j + 1, p + 1, q + 1}),
                                  gamma_exp(i, j, p) + gamma_exp(i, j, q));
                }
            if (total > b.c) {
                b.c = total;
                b.worst = quads;
            } else if (total == b.c && total != 0) {
                b.worst.insert(b.worst.end(), quads.begin(), quads.end());
            }
        }

    for (int p = 0; p < n; ++p) {
        Rat neg(0);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                const Rat& cc = a.at(p, k, l);
                if (cc == 0) continue;
                neg += Rat(1, 2) * cc * cc;
                note_exponent(label("diag", {p + 1, k + 1, l + 1}), Rat(2) * gamma_exp(p, k, l));
            }
        if (neg > b.c_diag) b.c_diag = neg;
    }

    if (!b.certified)
        throw std::domain_error("algebra_bound_c: monomial exponent exceeds -1 (basis not adapted)");
    return b;
}

}  // namespace nilric
