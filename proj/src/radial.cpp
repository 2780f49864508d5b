#include "nilric/radial.hpp"

#include <cmath>
#include <stdexcept>

namespace nilric {

std::vector<Rat> alphas(int n) {
    if (n < 1 || n > 6) throw std::out_of_range("alphas: n must be in [1, 6]");
    std::vector<Rat> a(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        // 2^{n-i+1} + 2^{-1-i} - 1/2
        Rat v = rat_pow(Rat(2), n - i + 1) + rat_pow(Rat(2), -1 - i) - Rat(1, 2);
        a[static_cast<size_t>(i - 1)] = v;
    }
    return a;
}

WarpProfile warp_profile(int n) {
    return WarpProfile{n, alphas(n)};
}

RadialEval radial_eval(int n, double r) {
    if (r < 0) throw std::domain_error("radial_eval: r must be nonnegative");
    auto al = alphas(n);
    RadialEval e;
    e.r = r;
    double x = r * r;
    double opx = 1.0 + x;
    e.f = r * std::pow(opx, -0.25);
    // f' = (1 + x/2)(1+x)^{-5/4}, f'' = f * (-(3/2 + x/4)/(1+x)^2)
    e.fp = (1.0 + 0.5 * x) * std::pow(opx, -1.25);
    e.fpp = -e.f * (1.5 + 0.25 * x) / (opx * opx);
    e.h.resize(al.size());
    e.hp.resize(al.size());
    e.hpp.resize(al.size());
    for (size_t i = 0; i < al.size(); ++i) {
        double ai = rat_to_double(al[i]);
        double hi = std::pow(opx, -ai);
        e.h[i] = hi;
        e.hp[i] = hi * (-2.0 * ai * r / opx);
        e.hpp[i] = hi * (2.0 * ai * ((2.0 * ai + 1.0) * x - 1.0) / (opx * opx));
    }
    return e;
}

void RadialExpr::add_term(long a, const Rat& p, const Rat& c) {
    if (c == 0) return;
    Key k{a, p};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

RadialExpr RadialExpr::constant(const Rat& c) {
    RadialExpr e;
    e.add_term(0, Rat(0), c);
    return e;
}

RadialExpr RadialExpr::monomial(const Rat& c, long a, const Rat& p) {
    if (a < 0) throw std::domain_error("RadialExpr: negative x power");
    RadialExpr e;
    e.add_term(a, p, c);
    return e;
}

RadialExpr RadialExpr::x() { return monomial(Rat(1), 1, Rat(0)); }

RadialExpr RadialExpr::one_plus_x_pow(const Rat& p) { return monomial(Rat(1), 0, p); }

RadialExpr& RadialExpr::operator+=(const RadialExpr& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
}

RadialExpr& RadialExpr::operator-=(const RadialExpr& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
}

RadialExpr RadialExpr::operator+(const RadialExpr& o) const {
    RadialExpr e(*this);
    e += o;
    return e;
}

RadialExpr RadialExpr::operator-(const RadialExpr& o) const {
    RadialExpr e(*this);
    e -= o;
    return e;
}

RadialExpr RadialExpr::operator-() const {
    RadialExpr e;
    for (const auto& [k, c] : terms_) e.terms_.emplace(k, -c);
    return e;
}

RadialExpr RadialExpr::operator*(const RadialExpr& o) const {
    RadialExpr e;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_)
            e.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return e;
}

RadialExpr RadialExpr::operator*(const Rat& c) const {
    RadialExpr e;
    if (c == 0) return e;
    for (const auto& [k, v] : terms_) e.terms_.emplace(k, v * c);
    return e;
}

Int RadialExpr::max_p_denominator() const {
    Int d(1);
    for (const auto& [k, c] : terms_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), k.second.get_den_mpz_t());
    return d;
}

double RadialExpr::eval(double r) const {
    double x = r * r, opx = 1.0 + x;
    double acc = 0.0;
    for (const auto& [k, c] : terms_)
        acc += rat_to_double(c) * std::pow(x, static_cast<double>(k.first)) *
               std::pow(opx, rat_to_double(k.second));
    return acc;
}

Rat RadialExpr::eval_exact_u(const Rat& u, long N) const {
    Rat uN = rat_pow(u, N);
    Rat x = uN - 1;
    Rat acc(0);
    for (const auto& [k, c] : terms_) {
        Rat pN = k.second * Rat(N);
        if (pN.get_den() != 1) throw std::domain_error("eval_exact_u: p*N not integral");
        long e = mpz_get_si(pN.get_num_mpz_t());
        acc += c * rat_pow(x, k.first) * rat_pow(u, e);
    }
    return acc;
}

ScaledReal RadialExpr::eval_scaled_u(const Rat& u, long N) const {
    ScaledReal su = ScaledReal::from_rat(u);
    ScaledReal x = ScaledReal::pow(su, static_cast<unsigned long>(N)) - ScaledReal(1.0);
    ScaledReal acc;
    for (const auto& [k, c] : terms_) {
        Rat pN = k.second * Rat(N);
        if (pN.get_den() != 1) throw std::domain_error("eval_scaled_u: p*N not integral");
        long e = mpz_get_si(pN.get_num_mpz_t());
        ScaledReal term = ScaledReal::from_rat(c);
        term *= ScaledReal::pow(x, static_cast<unsigned long>(k.first));
        if (e >= 0)
            term *= ScaledReal::pow(su, static_cast<unsigned long>(e));
        else {
            ScaledReal inv(1.0 / su.to_double());
            // u is a modest rational here; 1/u stays well inside double range
            term *= ScaledReal::pow(inv, static_cast<unsigned long>(-e));
        }
        acc += term;
    }
    return acc;
}

double RadialPoly::eval_at_r(double r) const {
    double u = std::pow(1.0 + r * r, 1.0 / static_cast<double>(N));
    double acc = 0.0;
    for (long i = poly_degree(coeffs); i >= 0; --i) acc = acc * u + rat_to_double(coeffs[static_cast<size_t>(i)]);
    return acc / std::pow(u, static_cast<double>(cleared));
}

Rat RadialPoly::eval_exact_u(const Rat& u) const {
    return poly_eval(coeffs, u) / rat_pow(u, cleared);
}

RadialPoly to_poly(const RadialExpr& e, int n) {
    if (n < 1 || n > 6) throw std::out_of_range("to_poly: n must be in [1, 6]");
    long N = 1L << (n + 1);
    std::map<long, Rat> lau;  // Laurent coefficients in u
    for (const auto& [k, c] : e.terms()) {
        Rat pN = k.second * Rat(N);
        if (pN.get_den() != 1)
            throw std::domain_error("to_poly: exponent denominator does not divide 2^{n+1}");
        long base = mpz_get_si(pN.get_num_mpz_t());
        // c * (u^N - 1)^a * u^{pN}
        long a = k.first;
        Rat binom(1);
        for (long j = 0; j <= a; ++j) {
            // binom = C(a, j) * (-1)^{a-j}
            Rat coef = binom;
            if ((a - j) % 2 != 0) coef = -coef;
            long idx = base + j * N;
            auto it = lau.find(idx);
            if (it == lau.end())
                lau.emplace(idx, c * coef);
            else {
                it->second += c * coef;
                if (it->second == 0) lau.erase(it);
            }
            binom = binom * Rat(a - j) / Rat(j + 1);
        }
    }
    RadialPoly rp;
    rp.n = n;
    rp.N = N;
    if (lau.empty()) return rp;
    long lo = lau.begin()->first;
    long hi = lau.rbegin()->first;
    rp.cleared = lo < 0 ? -lo : 0;
    rp.coeffs.assign(static_cast<size_t>(hi + rp.cleared + 1), Rat(0));
    for (const auto& [idx, c] : lau) rp.coeffs[static_cast<size_t>(idx + rp.cleared)] = c;
    return rp;
}

}  // namespace nilric
