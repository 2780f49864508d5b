#include "nilric/chartop.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

namespace nilric {

namespace {

void check_d(int d) {
    if (d < 1 || d > 32) throw std::invalid_argument("ExtClass: need 1 <= d <= 32");
}

void drop_zero(ExtClass& a, uint32_t mask) {
    auto it = a.terms.find(mask);
    if (it != a.terms.end() && it->second == 0) a.terms.erase(it);
}

// Sign of merging the sorted generator lists of a and b (disjoint masks):
// parity of the number of crossings, one per pair (i in a, j in b, i > j).
int merge_sign(uint32_t a, uint32_t b) {
    int crossings = 0;
    while (b) {
        int j = std::countr_zero(b);
        crossings += std::popcount(a >> (j + 1));
        b &= b - 1;
    }
    return crossings % 2 == 0 ? 1 : -1;
}

}  // namespace

ExtClass ext_zero(int d) {
    check_d(d);
    return ExtClass{d, {}};
}

ExtClass ext_unit(int d) {
    check_d(d);
    ExtClass e{d, {}};
    e.terms[0] = 1;
    return e;
}

ExtClass ext_generator(int d, int i) {
    check_d(d);
    if (i < 1 || i > d) throw std::out_of_range("ext_generator: index");
    ExtClass e{d, {}};
    e.terms[1u << (i - 1)] = 1;
    return e;
}

ExtClass ext_monomial(int d, std::initializer_list<int> gens, const Int& coef) {
    ExtClass e = ext_unit(d);
    e.terms[0] = coef;
    for (int g : gens) e = wedge(e, ext_generator(d, g));
    return e;
}

ExtClass wedge(const ExtClass& a, const ExtClass& b) {
    if (a.d != b.d) throw std::invalid_argument("wedge: mismatched algebras");
    ExtClass out{a.d, {}};
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            if (ma & mb) continue;
            Int c = ca * cb * merge_sign(ma, mb);
            uint32_t m = ma | mb;
            out.terms[m] += c;
            drop_zero(out, m);
        }
    }
    return out;
}

ExtClass ext_add(const ExtClass& a, const ExtClass& b) {
    if (a.d != b.d) throw std::invalid_argument("ext_add: mismatched algebras");
    ExtClass out = a;
    for (const auto& [m, c] : b.terms) {
        out.terms[m] += c;
        drop_zero(out, m);
    }
    return out;
}

ExtClass ext_scale(const ExtClass& a, const Int& s) {
    ExtClass out{a.d, {}};
    if (s == 0) return out;
    for (const auto& [m, c] : a.terms) out.terms[m] = c * s;
    return out;
}

ExtClass ext_pow(const ExtClass& a, int e) {
    if (e < 0) throw std::invalid_argument("ext_pow: negative exponent");
    ExtClass acc = ext_unit(a.d);
    for (int i = 0; i < e; ++i) acc = wedge(acc, a);
    return acc;
}

ExtClass ext_part(const ExtClass& a, int degree) {
    ExtClass out{a.d, {}};
    for (const auto& [m, c] : a.terms)
        if (std::popcount(m) == degree) out.terms[m] = c;
    return out;
}

int ext_top_degree(const ExtClass& a) {
    int top = -1;
    for (const auto& [m, c] : a.terms) {
        (void)c;
        top = std::max(top, std::popcount(m));
    }
    return top;
}

std::string ext_to_string(const ExtClass& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : a.terms) {
        if (!s.empty()) s += c >= 0 ? " + " : " - ";
        else if (c < 0) s += "-";
        Int ac = ::abs(c);
        std::string mono;
        for (int i = 0; i < a.d; ++i) {
            if (!(m & (1u << i))) continue;
            if (!mono.empty()) mono += "^";
            mono += "x" + std::to_string(i + 1);
        }
        if (mono.empty()) {
            s += ac.get_str();
        } else {
            if (ac != 1) s += ac.get_str() + "*";
            s += mono;
        }
    }
    return s;
}

std::vector<uint32_t> ext_basis(int d, int degree) {
    check_d(d);
    if (degree < 0 || degree > d) return {};
    std::vector<uint32_t> basis;
    uint64_t top = d == 32 ? 0x100000000ULL : (1ULL << d);
    for (uint64_t m = 0; m < top; ++m)
        if (std::popcount(static_cast<uint32_t>(m)) == degree)
            basis.push_back(static_cast<uint32_t>(m));
    return basis;
}

std::vector<std::vector<Int>> cup_matrix(const ExtClass& e, int from_degree) {
    int deg = ext_top_degree(e);
    if (deg < 0) throw std::invalid_argument("cup_matrix: zero class");
    for (const auto& [m, c] : e.terms) {
        (void)c;
        if (std::popcount(m) != deg)
            throw std::invalid_argument("cup_matrix: class is not homogeneous");
    }
    auto src = ext_basis(e.d, from_degree);
    auto dst = ext_basis(e.d, from_degree + deg);
    std::map<uint32_t, size_t> dst_index;
    for (size_t i = 0; i < dst.size(); ++i) dst_index[dst[i]] = i;
    std::vector<std::vector<Int>> mat(dst.size(), std::vector<Int>(src.size(), Int(0)));
    for (size_t col = 0; col < src.size(); ++col) {
        ExtClass b{e.d, {}};
        b.terms[src[col]] = 1;
        ExtClass prod = wedge(e, b);
        for (const auto& [m, c] : prod.terms) mat[dst_index.at(m)][col] = c;
    }
    return mat;
}

Int det_bareiss(std::vector<std::vector<Int>> m) {
    size_t nn = m.size();
    if (nn == 0) return Int(1);
    for (const auto& row : m)
        if (row.size() != nn) throw std::invalid_argument("det_bareiss: not square");
    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < nn; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < nn && m[piv][k] == 0) ++piv;
            if (piv == nn) return Int(0);
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < nn; ++i)
            for (size_t j = k + 1; j < nn; ++j) {
                Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign > 0 ? m[nn - 1][nn - 1] : -m[nn - 1][nn - 1];
}

BundleClasses pontryagin(const ExtClass& alpha, long k, long m) {
    if (k < 1) throw std::invalid_argument("pontryagin: k must be >= 1");
    BundleClasses out;
    out.c1 = ext_scale(alpha, Int(m));
    ExtClass c1sq = wedge(out.c1, out.c1);
    ExtClass factor = ext_add(ext_unit(alpha.d), ext_scale(c1sq, Int(-1)));
    ExtClass total = ext_unit(alpha.d);
    for (long i = 0; i < k; ++i) total = wedge(total, factor);
    out.total_p = total;
    out.p1 = ext_scale(c1sq, Int(-k));
    return out;
}

bool has_nontorsion_square(const ExtClass& alpha) {
    return !wedge(alpha, alpha).is_zero();
}

GysinData gysin_demo(const ExtClass& e) {
    GysinData g;
    g.e = e;
    g.mat = cup_matrix(e, 1);
    g.det = g.mat.empty() || g.mat.size() != g.mat[0].size() ? Int(0) : det_bareiss(g.mat);
    g.e_squared = wedge(e, e);
    return g;
}

ExtClass parse_class(const std::string& text, int d) {
    check_d(d);
    ExtClass out = ext_zero(d);
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw std::invalid_argument("parse_class: empty expression");
    while (i < text.size()) {
        int sign = 1;
        skip_ws();
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        }
        Int coef(1);
        bool saw_number = false;
        std::string digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits += text[i++];
        }
        if (!digits.empty()) {
            coef = Int(digits);
            saw_number = true;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        ExtClass term = ext_unit(d);
        term.terms[0] = coef * sign;
        bool saw_gen = false;
        while (i < text.size() && text[i] == 'x') {
            ++i;
            std::string idx;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                idx += text[i++];
            }
            if (idx.empty()) throw std::invalid_argument("parse_class: generator needs an index");
            int gi = std::stoi(idx);
            term = wedge(term, ext_generator(d, gi));
            saw_gen = true;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                if (i >= text.size() || text[i] != 'x')
                    throw std::invalid_argument("parse_class: '^' must join generators");
            }
        }
        if (!saw_gen && !saw_number)
            throw std::invalid_argument("parse_class: malformed term");
        out = ext_add(out, term);
        skip_ws();
        if (i < text.size() && text[i] != '+' && text[i] != '-')
            throw std::invalid_argument("parse_class: unexpected character '" +
                                        std::string(1, text[i]) + "'");
    }
    return out;
}

}  // namespace nilric
