#include "nilric/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace nilric {

namespace {

struct FiberParts {
    double x = 0;
    long N = 0;
    ScaledReal opx;   // 1 + x
    ScaledReal powN1; // (1+x)^{N-1}
    ScaledReal q, D, P1, P2;
};

FiberParts fiber_parts(int n, long m, double r) {
    FiberParts fp;
    fp.x = r * r;
    fp.N = 1L << (n + 1);
    double a1 = rat_to_double(alphas(n)[0]);
    ScaledReal m2 = ScaledReal(static_cast<double>(m)) * ScaledReal(static_cast<double>(m));
    fp.opx = ScaledReal(1.0 + fp.x);
    fp.powN1 = ScaledReal::pow(fp.opx, static_cast<unsigned long>(fp.N - 1));
    fp.q = ScaledReal(fp.x) * fp.powN1;
    fp.D = ScaledReal(1.0) + m2 * fp.q;
    fp.P1 = ScaledReal(-2.0 * a1) + m2 * ScaledReal(1.0 + 0.5 * fp.x) * fp.powN1;
    fp.P2 = ScaledReal(1.0 + 0.5 * fp.x) -
            ScaledReal(2.0 * a1) * m2 * ScaledReal(fp.x) * ScaledReal(fp.x) * fp.powN1;
    return fp;
}

}  // namespace

FiberGeometry fiber_geometry(int n, long m, double r) {
    auto re = radial_eval(n, r);
    auto fp = fiber_parts(n, m, r);
    FiberGeometry g;
    g.r = r;
    double md = static_cast<double>(m);
    g.norm2 = re.h[0] * re.h[0] + md * md * re.f * re.f;
    g.q = fp.q.to_double();
    g.D = fp.D.to_double();
    g.g_mean = (ScaledReal(r) * fp.P1 / (fp.opx * fp.D)).to_double();
    double s = std::sqrt(g.norm2);
    g.w_y = re.h[0] / s;
    g.w_u = md * re.f / s;
    g.wp_y = md * re.f / s;
    g.wp_u = -re.h[0] / s;
    return g;
}

double error_rr(int n, long m, double r) {
    auto fp = fiber_parts(n, m, r);
    double a1 = rat_to_double(alphas(n)[0]);
    ScaledReal m2 = ScaledReal(static_cast<double>(m)) * ScaledReal(static_cast<double>(m));
    ScaledReal lin(1.0 + (0.5 + 2.0 * a1) * fp.x);
    // (1+x)^{N-3} = (1+x)^{N-1} / (1+x)^2
    ScaledReal term1 = ScaledReal(3.0) * m2 * lin * lin * fp.powN1 /
                       (fp.opx * fp.opx * fp.D * fp.D);
    ScaledReal bracket = ScaledReal(2.0 * a1 * ((2.0 * a1 + 1.0) * fp.x - 1.0)) -
                         m2 * ScaledReal((fp.x + 6.0) / 4.0 * fp.x) * fp.powN1;
    ScaledReal term2 = bracket / (fp.opx * fp.opx * fp.D);
    return (term1 + term2).to_double();
}

double nabla_ys(int n, long m, int i, double r) {
    if (i < 1 || i > n) throw std::out_of_range("nabla_ys: index");
    auto fp = fiber_parts(n, m, r);
    double ai = rat_to_double(alphas(n)[static_cast<size_t>(i - 1)]);
    return (ScaledReal(2.0 * ai * fp.x) * fp.P1 / (fp.D * fp.opx * fp.opx)).to_double();
}

double error_yy(const NilpotentAlgebra& a, long m, int i, double r, DiagMode mode) {
    int n = a.dim;
    double v = -nabla_ys(n, m, i, r);
    if (mode == DiagMode::exact) {
        auto fp = fiber_parts(n, m, r);
        auto al = alphas(n);
        double x = r * r;
        double acc = 0;
        for (int j = 1; j <= n; ++j) {
            double cji = rat_to_double(a.at(j - 1, i - 1, 0));
            if (cji == 0.0) continue;
            double e = 2.0 * rat_to_double(al[static_cast<size_t>(j - 1)] +
                                           al[static_cast<size_t>(i - 1)] - al[0]);
            acc += 0.5 * cji * cji * std::pow(1.0 + x, e);
        }
        v += (ScaledReal(acc) / fp.D).to_double();
    }
    return v;
}

double error_uu(int n, long m, double r) {
    auto fp = fiber_parts(n, m, r);
    return (ScaledReal(1.0 + 0.5 * fp.x) * fp.P1 / (fp.opx * fp.opx * fp.D)).to_double();
}

double error_wprime(int n, long m, double r) {
    auto fp = fiber_parts(n, m, r);
    return (fp.P1 * fp.P2 / (fp.opx * fp.opx * fp.D * fp.D)).to_double();
}

double wprime_entry(const SubmersionParams& p, double r, DiagMode mode) {
    auto fp = fiber_parts(p.n, p.m, r);
    ScaledReal m2 = ScaledReal(static_cast<double>(p.m)) * ScaledReal(static_cast<double>(p.m));
    ScaledReal mix = (m2 * fp.q * ScaledReal(total_ric_yy(p, 1, r, mode)) +
                      ScaledReal(total_ric_uu(p, r))) /
                     fp.D;
    return mix.to_double() + error_wprime(p.n, p.m, r);
}

BaseDiag base_ricci(const SubmersionParams& p, double r, DiagMode mode) {
    BaseDiag out;
    out.r = r;
    out.err_rr = error_rr(p.n, p.m, r);
    out.ric_rr = total_ric_rr(p, r) + out.err_rr;
    out.err_u = error_uu(p.n, p.m, r);
    out.ric_u = total_ric_uu(p, r) + out.err_u;
    for (int i = 2; i <= p.n; ++i) {
        double e = error_yy(p.algebra, p.m, i, r, mode);
        out.err_y.push_back(e);
        out.ric_y.push_back(total_ric_yy(p, i, r, mode) + e);
    }
    out.err_wprime = error_wprime(p.n, p.m, r);
    out.ric_wprime = wprime_entry(p, r, mode);
    double ob = rat_to_double(algebra_bound_c(p.algebra).c) / (1.0 + r * r);
    out.offdiag_bound = ob;
    double gmin = out.ric_rr;
    for (double ry : out.ric_y) gmin = std::min(gmin, ry - (2.0 * p.n - 3.0) * ob);
    if (p.k >= 2) gmin = std::min(gmin, out.ric_u);
    gmin = std::min(gmin, out.ric_wprime - (p.n - 1.0) * ob);
    out.gershgorin_min = gmin;
    return out;
}

std::vector<BaseDiag> scan(const SubmersionParams& p, double r_max, int steps, DiagMode mode) {
    if (steps < 1) throw std::invalid_argument("scan: steps must be >= 1");
    if (!(r_max > 0)) throw std::invalid_argument("scan: r_max must be positive");
    std::vector<BaseDiag> rows;
    rows.reserve(static_cast<size_t>(steps) + 1);
    for (int j = 0; j <= steps; ++j) {
        rows.push_back(base_ricci(p, r_max * j / steps, mode));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Symbolic rows.

RadialExpr expr_D(int n, long m) {
    long N = 1L << (n + 1);
    Rat m2 = Rat(m) * Rat(m);
    return RadialExpr::constant(Rat(1)) + RadialExpr::monomial(m2, 1, Rat(N - 1));
}

RadialExpr expr_P1(int n, long m) {
    long N = 1L << (n + 1);
    Rat a1 = alphas(n)[0];
    Rat m2 = Rat(m) * Rat(m);
    return RadialExpr::monomial(-2 * a1, 0, Rat(0)) +
           RadialExpr::monomial(m2, 0, Rat(N - 1)) +
           RadialExpr::monomial(m2 / 2, 1, Rat(N - 1));
}

RadialExpr expr_P2(int n, long m) {
    long N = 1L << (n + 1);
    Rat a1 = alphas(n)[0];
    Rat m2 = Rat(m) * Rat(m);
    return RadialExpr::constant(Rat(1)) + RadialExpr::monomial(ratq(1, 2), 1, Rat(0)) -
           RadialExpr::monomial(2 * a1 * m2, 2, Rat(N - 1));
}

namespace {

// Total-space partial_r numerator over (1+x)^2.
RadialExpr rr_num_total(const std::vector<Rat>& al, long k) {
    Rat c0 = Rat(2 * k - 1) * ratq(6, 4), c1 = Rat(2 * k - 1) / 4;
    for (const auto& ai : al) {
        c0 += 2 * ai;
        c1 -= 2 * ai * (2 * ai + 1);
    }
    return RadialExpr::constant(c0) + RadialExpr::monomial(c1, 1, Rat(0));
}

// Total-space Y_i numerator over (1+x)^2, exact or bounded Ric_G part,
// no Gershgorin subtraction.
RadialExpr y_num_total(const NilpotentAlgebra& a, const std::vector<Rat>& al, long k, int i,
                       DiagMode mode, const std::vector<std::vector<RadialExpr>>& ricg,
                       const Rat& c_diag) {
    const Rat& ai = al[static_cast<size_t>(i - 1)];
    Rat c0 = 2 * ai + Rat(2 * k - 1) * 2 * ai;
    Rat c1 = -2 * ai * (2 * ai + 1) + Rat(2 * k - 1) * ai;
    for (int j = 1; j <= a.dim; ++j) {
        if (j == i) continue;
        c1 -= 4 * ai * al[static_cast<size_t>(j - 1)];
    }
    RadialExpr row = RadialExpr::constant(c0) + RadialExpr::monomial(c1, 1, Rat(0));
    if (mode == DiagMode::exact) {
        row += ricg[static_cast<size_t>(i - 1)][static_cast<size_t>(i - 1)] *
               RadialExpr::one_plus_x_pow(Rat(2));
    } else {
        row -= RadialExpr::one_plus_x_pow(Rat(1)) * c_diag;
    }
    return row;
}

// Total-space U numerator over (1+x)^2 with (1 - f'^2)/f^2 replaced by its
// certified lower bound (3/2 + x)/(1+x)^2.
RadialExpr u_num_sub(const std::vector<Rat>& al, long k) {
    Rat c0 = ratq(6, 4) + Rat(2 * k - 2) * ratq(3, 2);
    Rat c1 = ratq(1, 4) + Rat(2 * k - 2);
    for (const auto& ai : al) {
        c0 += 2 * ai;
        c1 += ai;
    }
    return RadialExpr::constant(c0) + RadialExpr::monomial(c1, 1, Rat(0));
}

// 2 |A_{Y_i} W|^2 times (1+x)^2 D: the D cancels, leaving pure monomials.
RadialExpr y_aterm(const NilpotentAlgebra& a, const std::vector<Rat>& al, int i) {
    RadialExpr e;
    for (int j = 1; j <= a.dim; ++j) {
        const Rat& cji = a.at(j - 1, i - 1, 0);
        if (cji == 0) continue;
        Rat p = 2 * (al[static_cast<size_t>(j - 1)] + al[static_cast<size_t>(i - 1)] - al[0]) + 2;
        e += RadialExpr::monomial(cji * cji / 2, 0, p);
    }
    return e;
}

// Quotient partial_r numerator over (1+x)^2 D^2 (the exact diagonal).
RadialExpr rr_num_quotient(const NilpotentAlgebra& a, long k, long m) {
    int n = a.dim;
    long N = 1L << (n + 1);
    auto al = alphas(n);
    Rat a1 = al[0];
    Rat m2 = Rat(m) * Rat(m);
    RadialExpr D = expr_D(n, m);
    RadialExpr row = rr_num_total(al, k) * D * D;
    // 3 m^2 (1+x)^{N-1} (1 + (2a_1 + 1/2) x)^2
    Rat cc = 2 * a1 + ratq(1, 2);
    row += RadialExpr::monomial(3 * m2, 0, Rat(N - 1)) +
           RadialExpr::monomial(6 * m2 * cc, 1, Rat(N - 1)) +
           RadialExpr::monomial(3 * m2 * cc * cc, 2, Rat(N - 1));
    // [2a_1((2a_1+1)x - 1) - (m^2/4)(6+x) x (1+x)^{N-1}] D
    RadialExpr bracket = RadialExpr::monomial(2 * a1 * (2 * a1 + 1), 1, Rat(0)) -
                         RadialExpr::constant(2 * a1) -
                         RadialExpr::monomial(6 * m2 / 4, 1, Rat(N - 1)) -
                         RadialExpr::monomial(m2 / 4, 2, Rat(N - 1));
    row += bracket * D;
    return row;
}

}  // namespace

std::vector<RadialExpr> quotient_row_numerators(const SubmersionParams& p, DiagMode diag_mode) {
    const NilpotentAlgebra& a = p.algebra;
    int n = p.n;
    auto al = alphas(n);
    auto bound = algebra_bound_c(a);
    std::vector<std::vector<RadialExpr>> ricg;
    if (diag_mode == DiagMode::exact) ricg = ricci_monomials(a);
    RadialExpr D = expr_D(n, p.m);
    RadialExpr P1 = expr_P1(n, p.m);
    RadialExpr one_plus_x = RadialExpr::one_plus_x_pow(Rat(1));

    std::vector<RadialExpr> rows;
    rows.push_back(rr_num_quotient(a, p.k, p.m));

    // Y_i rows over (1+x)^2 D, i = 2..n.
    for (int i = 2; i <= n; ++i) {
        RadialExpr row = y_num_total(a, al, p.k, i, diag_mode, ricg, bound.c_diag) * D;
        if (diag_mode == DiagMode::exact) row += y_aterm(a, al, i);
        row -= RadialExpr::monomial(2 * al[static_cast<size_t>(i - 1)], 1, Rat(0)) * P1;
        row -= one_plus_x * (bound.c * Rat(2 * n - 3)) * D;
        rows.push_back(row);
    }

    // U row over (1+x)^2 D, present only when the sphere has non-Hopf
    // directions.
    if (p.k >= 2) {
        rows.push_back(u_num_sub(al, p.k) * D +
                       (RadialExpr::constant(Rat(1)) + RadialExpr::monomial(ratq(1, 2), 1, Rat(0))) * P1);
    }

    // W' row over (1+x)^2 D^2 (a certified lower bound).
    {
        long N = 1L << (n + 1);
        Rat m2 = Rat(p.m) * Rat(p.m);
        RadialExpr q = RadialExpr::monomial(Rat(1), 1, Rat(N - 1));
        RadialExpr y1 = y_num_total(a, al, p.k, 1, diag_mode, ricg, bound.c_diag);
        RadialExpr row = (q * m2 * y1 + u_num_sub(al, p.k)) * D + expr_P1(n, p.m) * expr_P2(n, p.m);
        row -= one_plus_x * (bound.c * Rat(n - 1)) * D * D;
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::pair<RadialExpr, RadialExpr>> quotient_exact_diagonals(
    const SubmersionParams& p) {
    const NilpotentAlgebra& a = p.algebra;
    int n = p.n;
    auto al = alphas(n);
    auto bound = algebra_bound_c(a);
    auto ricg = ricci_monomials(a);
    RadialExpr D = expr_D(n, p.m);
    RadialExpr P1 = expr_P1(n, p.m);
    RadialExpr opx2 = RadialExpr::one_plus_x_pow(Rat(2));

    std::vector<std::pair<RadialExpr, RadialExpr>> out;
    out.emplace_back(rr_num_quotient(a, p.k, p.m), opx2 * D * D);

    for (int i = 2; i <= n; ++i) {
        RadialExpr num = y_num_total(a, al, p.k, i, DiagMode::exact, ricg, bound.c_diag) * D +
                         y_aterm(a, al, i) -
                         RadialExpr::monomial(2 * al[static_cast<size_t>(i - 1)], 1, Rat(0)) * P1;
        out.emplace_back(num, opx2 * D);
    }

    if (p.k >= 2) {
        // x [(6+x)/4 + sum 2a_i(1+x/2)] D + (2k-2)[(1+x)^{5/2} - (1+x/2)^2] D
        // + x (1+x/2) P1, over x (1+x)^2 D; valid for u > 1.
        Rat c0 = ratq(6, 4), c1 = ratq(1, 4);
        for (const auto& ai : al) {
            c0 += 2 * ai;
            c1 += ai;
        }
        RadialExpr warped = RadialExpr::monomial(c0, 1, Rat(0)) + RadialExpr::monomial(c1, 2, Rat(0));
        RadialExpr fterm = RadialExpr::monomial(Rat(2 * p.k - 2), 0, ratq(5, 2)) -
                           RadialExpr::constant(Rat(2 * p.k - 2)) -
                           RadialExpr::monomial(Rat(2 * p.k - 2), 1, Rat(0)) -
                           RadialExpr::monomial(Rat(2 * p.k - 2) / 4, 2, Rat(0));
        RadialExpr num = (warped + fterm) * D +
                         (RadialExpr::monomial(Rat(1), 1, Rat(0)) +
                          RadialExpr::monomial(ratq(1, 2), 2, Rat(0))) *
                             P1;
        out.emplace_back(num, RadialExpr::monomial(Rat(1), 1, Rat(0)) * opx2 * D);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Certification.

namespace {

std::string quotient_row_label(const SubmersionParams& p, size_t idx) {
    size_t ny = static_cast<size_t>(p.n) - 1;
    if (idx == 0) return "partial_r";
    if (idx <= ny) return "Y_" + std::to_string(idx + 1);
    if (p.k >= 2 && idx == ny + 1) return "U";
    return "W'";
}

double witness_radius(const Rat& u, long N) {
    double ud = rat_to_double(u);
    double x = std::pow(ud, static_cast<double>(N)) - 1.0;
    return x > 0 ? std::sqrt(x) : 0.0;
}

// Hunts for a rational u > 1 where some exact diagonal is negative; that is
// the only evidence strong enough for a not_positive verdict.
std::optional<PositivityCertificate> hunt_not_positive(
    const SubmersionParams& p, const std::vector<Rat>& candidates, CertMode mode) {
    long N = 1L << (p.n + 1);
    auto diags = quotient_exact_diagonals(p);
    static const char* names[] = {"partial_r", "Y", "U"};
    for (const auto& u : candidates) {
        if (!(u > 1)) continue;
        for (size_t d = 0; d < diags.size(); ++d) {
            Rat num = diags[d].first.eval_exact_u(u, N);
            if (sgn(num) < 0) {
                PositivityCertificate cert;
                cert.verdict = Verdict::not_positive;
                cert.mode = mode;
                cert.rigorous = true;
                cert.witness_r = witness_radius(u, N);
                ScaledReal den = diags[d].second.eval_scaled_u(u, N);
                cert.min_margin = (ScaledReal::from_rat(num) / den).to_double();
                const char* which = d == 0 ? names[0]
                                   : (d < diags.size() - 1 || p.k == 1 ? names[1] : names[2]);
                cert.detail = std::string("exact ") + which +
                              " diagonal negative at u = " + rat_to_string(u);
                return cert;
            }
        }
    }
    return std::nullopt;
}

PositivityCertificate certify_sturm(const SubmersionParams& p, long degree_cap) {
    auto rows = quotient_row_numerators(p, DiagMode::exact);
    PositivityCertificate out;
    out.mode = CertMode::sturm;
    bool all_pos = true, any_overflow = false;
    std::vector<Rat> candidates;
    std::string first_fail;
    for (size_t idx = 0; idx < rows.size(); ++idx) {
        auto rp = to_poly(rows[idx], p.n);
        auto cert = certify_ray_positive(rp.coeffs, degree_cap);
        if (cert.status == RaySign::positive) continue;
        all_pos = false;
        if (cert.status == RaySign::overflow) {
            any_overflow = true;
        } else if (cert.has_negative_witness) {
            candidates.push_back(cert.witness_w);
        }
        if (first_fail.empty()) {
            first_fail = quotient_row_label(p, idx) + " row (" + cert.method + ")";
        }
    }
    if (all_pos) {
        out.verdict = Verdict::positive;
        out.rigorous = true;
        out.detail = "all row numerators strictly positive on [0, inf)";
        return out;
    }
    for (int j = 1; j <= 40; ++j) candidates.push_back(Rat(1) + ratq(j, 8));
    for (int t = 1; t <= 40; ++t) candidates.push_back(rat_pow(Rat(2), t));
    if (auto np = hunt_not_positive(p, candidates, CertMode::sturm)) return *np;
    out.verdict = Verdict::inconclusive;
    out.rigorous = false;
    out.detail = any_overflow && first_fail.empty()
                     ? "certifier degree cap exceeded"
                     : "row bound fails (" + first_fail + ") but no exact diagonal went negative";
    return out;
}

struct TailResult {
    enum class Kind { positive, negative, unknown } kind = Kind::unknown;
    long log2_radius = 0;  // x-cutoff 2^log2_radius
};

// Beyond x = 2^t with 2^t >= 4 max|p|, each monomial c x^a (1+x)^p lies
// between (3/5) c x^{a+p} and (5/3) c x^{a+p} (signs permuting), since
// 3/5 < e^{-1/4} and e^{1/4} < 5/3. Grouping by total degree e = a+p and
// asking the top group to dominate the rest at the cutoff settles the sign
// of the whole tail.
TailResult tail_sign(const RadialExpr& row) {
    TailResult res;
    if (row.is_zero()) return res;
    double maxp = 0;
    for (const auto& [key, coef] : row.terms()) {
        (void)coef;
        maxp = std::max(maxp, std::fabs(rat_to_double(key.second)));
    }
    long t0 = 4;
    while (static_cast<double>(1L << t0) < 4.0 * maxp && t0 < 60) ++t0;

    std::map<Rat, std::pair<Rat, Rat>, RatLess> groups;  // e -> (pos sum, neg sum)
    for (const auto& [key, coef] : row.terms()) {
        Rat e = Rat(key.first) + key.second;
        auto& g = groups[e];
        if (coef > 0) {
            g.first += coef;
        } else {
            g.second += -coef;
        }
    }
    auto top = groups.rbegin();
    Rat L_top = ratq(3, 5) * top->second.first - ratq(5, 3) * top->second.second;
    Rat U_top = ratq(5, 3) * top->second.first - ratq(3, 5) * top->second.second;
    int want = L_top > 0 ? 1 : (U_top < 0 ? -1 : 0);
    if (want == 0) return res;

    for (long t = t0; t <= t0 + 40; ++t) {
        ScaledReal lhs, rhs;
        if (want > 0) {
            lhs = ScaledReal::from_rat(L_top) * ScaledReal::pow2(Rat(t) * top->first);
        } else {
            lhs = ScaledReal::from_rat(-U_top) * ScaledReal::pow2(Rat(t) * top->first);
        }
        for (auto it = std::next(groups.rbegin()); it != groups.rend(); ++it) {
            Rat L = ratq(3, 5) * it->second.first - ratq(5, 3) * it->second.second;
            Rat U = ratq(5, 3) * it->second.first - ratq(3, 5) * it->second.second;
            Rat worst = std::max(abs(L), abs(U));
            rhs += ScaledReal::from_rat(worst) * ScaledReal::pow2(Rat(t) * it->first);
        }
        // factor 2 suffices for dominance; 2.5 absorbs the float rounding
        if ((rhs * ScaledReal(2.5)) < lhs || rhs.is_zero()) {
            res.kind = want > 0 ? TailResult::Kind::positive : TailResult::Kind::negative;
            res.log2_radius = t;
            return res;
        }
    }
    return res;
}

// Rational u slightly above (1 + 2^t)^{1/N}.
Rat u_cut_for(long t, long N) {
    double d = std::pow(1.0 + std::ldexp(1.0, static_cast<int>(t)), 1.0 / static_cast<double>(N));
    long scaled = static_cast<long>(std::ceil(d * 4096.0)) + 1;
    Rat u(scaled);
    u /= 4096;
    return u;
}

PositivityCertificate certify_grid(const SubmersionParams& p) {
    auto rows = quotient_row_numerators(p, DiagMode::exact);
    long N = 1L << (p.n + 1);
    RadialExpr D = expr_D(p.n, p.m);
    RadialExpr opx2 = RadialExpr::one_plus_x_pow(Rat(2));
    size_t wrow = rows.size() - 1;

    PositivityCertificate out;
    out.mode = CertMode::grid;

    std::vector<Rat> suspects;
    bool tails_ok = true;
    std::string tail_detail;
    long max_cut = 4;
    for (size_t idx = 0; idx < rows.size(); ++idx) {
        auto tr = tail_sign(rows[idx]);
        if (tr.kind == TailResult::Kind::positive) {
            max_cut = std::max(max_cut, tr.log2_radius);
        } else if (tr.kind == TailResult::Kind::negative) {
            // the row is provably negative far out; look for a diagonal witness
            for (long w = 1; w <= 50; ++w) {
                Rat u = rat_pow(Rat(2), w);
                Rat x = rat_pow(u, N) - 1;
                if (x >= rat_pow(Rat(2), tr.log2_radius)) {
                    suspects.push_back(u);
                    suspects.push_back(u * 2);
                    suspects.push_back(u * 4);
                    break;
                }
            }
            tails_ok = false;
            if (tail_detail.empty())
                tail_detail = quotient_row_label(p, idx) + " row negative for large r";
        } else {
            tails_ok = false;
            if (tail_detail.empty())
                tail_detail = quotient_row_label(p, idx) + " row tail sign not determined";
        }
    }

    Rat u_cut = u_cut_for(max_cut, N);
    const int S = 512;
    double min_margin = HUGE_VAL;
    bool sampled_nonpositive = false;

    for (size_t idx = 0; idx < rows.size(); ++idx) {
        RadialExpr den = (idx == 0 || idx == wrow) ? opx2 * D * D : opx2 * D;
        Rat lo(1), hi = u_cut;
        for (int round = 0; round < 3; ++round) {
            int steps = round == 0 ? S : 64;
            Rat h = (hi - lo) / steps;
            ScaledReal best;
            Rat best_u = lo;
            bool have_best = false;
            for (int j = 0; j <= steps; ++j) {
                Rat u = lo + h * j;
                ScaledReal v = rows[idx].eval_scaled_u(u, N);
                if (v.mant <= 0.0 && u > 1) {
                    sampled_nonpositive = true;
                    suspects.push_back(u);
                }
                ScaledReal margin = v / den.eval_scaled_u(u, N);
                if (!have_best || margin < best) {
                    best = margin;
                    best_u = u;
                    have_best = true;
                }
            }
            min_margin = std::min(min_margin, best.to_double());
            Rat nlo = best_u - h, nhi = best_u + h;
            if (nlo < 1) nlo = 1;
            if (nhi > u_cut) nhi = u_cut;
            lo = nlo;
            hi = nhi;
        }
    }

    if (sampled_nonpositive || !tails_ok) {
        for (int t = 1; t <= 40; ++t) suspects.push_back(rat_pow(Rat(2), t));
        if (auto np = hunt_not_positive(p, suspects, CertMode::grid)) return *np;
        out.verdict = Verdict::inconclusive;
        out.rigorous = false;
        out.min_margin = min_margin;
        out.detail = sampled_nonpositive
                         ? "a sampled row bound was nonpositive but no exact diagonal went negative"
                         : tail_detail + "; no exact diagonal went negative";
        return out;
    }

    out.verdict = Verdict::positive;
    out.rigorous = false;
    out.min_margin = min_margin;
    out.detail = "rows positive on a " + std::to_string(S) + "-point grid up to u = " +
                 rat_to_string(u_cut) + "; tails dominated beyond x = 2^" +
                 std::to_string(max_cut);
    return out;
}

}  // namespace

PositivityCertificate certify_positivity(const SubmersionParams& p, CertMode mode,
                                         long degree_cap) {
    if (mode == CertMode::sturm) return certify_sturm(p, degree_cap);
    return certify_grid(p);
}

MinKResult min_k(const NilpotentAlgebra& a, long m, CertMode mode) {
    auto passes = [&](long k) {
        return certify_positivity(SubmersionParams(a, k, m), mode).verdict == Verdict::positive;
    };
    long hi = 1;
    while (!passes(hi)) {
        hi *= 2;
        if (hi > (1L << 30)) throw std::runtime_error("min_k: no positive k found");
    }
    long lo = hi / 2;
    while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        if (passes(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    MinKResult res;
    res.k = hi;
    res.cert = certify_positivity(SubmersionParams(a, hi, m), mode);
    return res;
}

}  // namespace nilric
