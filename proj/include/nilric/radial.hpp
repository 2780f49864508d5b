#pragma once

#include <map>
#include <utility>
#include <vector>

#include "nilric/poly.hpp"

namespace nilric {

// Warping exponents alpha_i = 2^{n-i+1} + 2^{-1-i} - 1/2, strictly decreasing,
// alpha_1 = 2^n - 1/4. Exact dyadic rationals.
std::vector<Rat> alphas(int n);

struct WarpProfile {
    int n = 0;
    std::vector<Rat> alpha;
};

WarpProfile warp_profile(int n);

// f = r(1+r^2)^{-1/4}, h_i = (1+r^2)^{-alpha_i} and their first two derivatives.
struct RadialEval {
    double r = 0;
    double f = 0, fp = 0, fpp = 0;
    std::vector<double> h, hp, hpp;
};

RadialEval radial_eval(int n, double r);

struct RatLess {
    bool operator()(const Rat& a, const Rat& b) const { return cmp(a, b) < 0; }
};

// Finite sum  sum_j  c_j * x^{a_j} * (1+x)^{p_j}  in x = r^2, with a_j >= 0
// integer and p_j rational. Closed under ring operations; every curvature
// row assembled downstream lives in this class.
class RadialExpr {
  public:
    using Key = std::pair<long, Rat>;  // (a, p)
    struct KeyLess {
        bool operator()(const Key& u, const Key& v) const {
            if (u.first != v.first) return u.first < v.first;
            return cmp(u.second, v.second) < 0;
        }
    };
    using Terms = std::map<Key, Rat, KeyLess>;

    RadialExpr() = default;
    static RadialExpr constant(const Rat& c);
    static RadialExpr monomial(const Rat& c, long a, const Rat& p);
    static RadialExpr x();                  // x
    static RadialExpr one_plus_x_pow(const Rat& p);

    RadialExpr& operator+=(const RadialExpr& o);
    RadialExpr& operator-=(const RadialExpr& o);
    RadialExpr operator+(const RadialExpr& o) const;
    RadialExpr operator-(const RadialExpr& o) const;
    RadialExpr operator-() const;
    RadialExpr operator*(const RadialExpr& o) const;
    RadialExpr operator*(const Rat& c) const;
    bool operator==(const RadialExpr& o) const { return terms_ == o.terms_; }

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    // Largest p-denominator across terms (1 for pure polynomials in x).
    Int max_p_denominator() const;

    double eval(double r) const;
    // Exact value at x = u^N - 1 for rational u > 0; every p*N must be integral.
    Rat eval_exact_u(const Rat& u, long N) const;
    // Same point, scaled floating arithmetic (for magnitudes beyond doubles).
    ScaledReal eval_scaled_u(const Rat& u, long N) const;

  private:
    void add_term(long a, const Rat& p, const Rat& c);
    Terms terms_;
};

// Polynomial in u = (1+r^2)^{1/2^{n+1}} obtained from a RadialExpr after the
// substitutions x -> u^N - 1, (1+x)^p -> u^{pN} with N = 2^{n+1}. Negative
// u-exponents are cleared by multiplying through by u^{cleared} (u >= 1, so
// sign questions are unaffected); eval divides the power back out.
struct RadialPoly {
    QPolyV coeffs;
    int n = 0;
    long N = 0;
    long cleared = 0;

    double eval_at_r(double r) const;
    Rat eval_exact_u(const Rat& u) const;
};

// Throws std::domain_error if some exponent denominator does not divide 2^{n+1}.
RadialPoly to_poly(const RadialExpr& e, int n);

}  // namespace nilric
