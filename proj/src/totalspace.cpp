#include "nilric/totalspace.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>

namespace nilric {

double one_minus_fp2_over_f2(double r) {
    double x = r * r;
    if (x < 1e-6) return 1.5 - 1.375 * x + 1.5625 * x * x;
    double opx = 1.0 + x;
    double half = 1.0 + 0.5 * x;
    return (std::pow(opx, 2.5) - half * half) / (x * opx * opx);
}

// Warped part of the Y_i diagonal over (1+x)^2: -h_i''/h_i, the (2k-1) mixed
// terms against f, and the mixed terms against the other h_j.
static double yy_warp_numerator(const std::vector<Rat>& al, long k, int i, double x) {
    double ai = rat_to_double(al[static_cast<size_t>(i - 1)]);
    double num = -2.0 * ai * ((2.0 * ai + 1.0) * x - 1.0) +
                 (2.0 * k - 1.0) * 2.0 * ai * (1.0 + 0.5 * x);
    for (size_t j = 0; j < al.size(); ++j) {
        if (static_cast<int>(j) == i - 1) continue;
        num -= 4.0 * ai * rat_to_double(al[j]) * x;
    }
    return num;
}

double total_ric_rr(const SubmersionParams& p, double r) {
    auto al = alphas(p.n);
    double x = r * r, opx = 1.0 + x;
    double num = (2.0 * p.k - 1.0) * (x + 6.0) / 4.0;
    for (const auto& a : al) {
        double ad = rat_to_double(a);
        num -= 2.0 * ad * ((2.0 * ad + 1.0) * x - 1.0);
    }
    return num / (opx * opx);
}

double total_ric_yy(const SubmersionParams& p, int i, double r, DiagMode mode) {
    if (i < 1 || i > p.n) throw std::out_of_range("total_ric_yy: index");
    auto al = alphas(p.n);
    double x = r * r, opx = 1.0 + x;
    double v = yy_warp_numerator(al, p.k, i, x) / (opx * opx);
    if (mode == DiagMode::exact) {
        v += scaled_ricci(p.algebra, p.n, r)[static_cast<size_t>(i - 1)]
                         [static_cast<size_t>(i - 1)];
    } else {
        v -= rat_to_double(algebra_bound_c(p.algebra).c_diag) / opx;
    }
    return v;
}

double total_ric_uu(const SubmersionParams& p, double r) {
    auto al = alphas(p.n);
    double x = r * r, opx = 1.0 + x;
    double v = (x + 6.0) / 4.0;
    for (const auto& a : al) v += 2.0 * rat_to_double(a) * (1.0 + 0.5 * x);
    v /= opx * opx;
    v += (2.0 * p.k - 2.0) * one_minus_fp2_over_f2(r);
    return v;
}

TotalRicci total_ricci(const SubmersionParams& p, double r, DiagMode mode) {
    TotalRicci out;
    out.r = r;
    out.ric_rr = total_ric_rr(p, r);
    auto al = alphas(p.n);
    auto bound = algebra_bound_c(p.algebra);
    double x = r * r, opx = 1.0 + x;
    std::vector<std::vector<double>> ricg;
    if (mode == DiagMode::exact) ricg = scaled_ricci(p.algebra, p.n, r);
    double cd = rat_to_double(bound.c_diag);
    out.ric_yy.reserve(static_cast<size_t>(p.n));
    for (int i = 1; i <= p.n; ++i) {
        double v = yy_warp_numerator(al, p.k, i, x) / (opx * opx);
        if (mode == DiagMode::exact) {
            v += ricg[static_cast<size_t>(i - 1)][static_cast<size_t>(i - 1)];
        } else {
            v -= cd / opx;
        }
        out.ric_yy.push_back(v);
    }
    out.ric_uu = total_ric_uu(p, r);
    out.offdiag_bound = rat_to_double(bound.c) / opx;
    return out;
}

std::vector<RadialExpr> total_row_numerators(const NilpotentAlgebra& a, long k, DiagMode mode) {
    int n = a.dim;
    auto al = alphas(n);
    auto bound = algebra_bound_c(a);
    Rat two_k1 = Rat(2 * k - 1);

    std::vector<RadialExpr> rows;
    rows.reserve(static_cast<size_t>(n) + 2);

    // partial_r row: -sum 2a_i[(2a_i+1)x - 1] + (2k-1)(6+x)/4.
    {
        Rat c0 = two_k1 * ratq(6, 4), c1 = two_k1 / 4;
        for (const auto& ai : al) {
            c0 += 2 * ai;
            c1 -= 2 * ai * (2 * ai + 1);
        }
        RadialExpr row = RadialExpr::constant(c0) + RadialExpr::monomial(c1, 1, Rat(0));
        rows.push_back(row);
    }

    std::vector<std::vector<RadialExpr>> ricg;
    if (mode == DiagMode::exact) ricg = ricci_monomials(a);
    RadialExpr gersh = RadialExpr::one_plus_x_pow(Rat(1)) * (bound.c * Rat(n - 1));

    for (int i = 1; i <= n; ++i) {
        const Rat& ai = al[static_cast<size_t>(i - 1)];
        Rat c0 = 2 * ai + two_k1 * 2 * ai;
        Rat c1 = -2 * ai * (2 * ai + 1) + two_k1 * ai;
        for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            c1 -= 4 * ai * al[static_cast<size_t>(j - 1)];
        }
        RadialExpr row = RadialExpr::constant(c0) + RadialExpr::monomial(c1, 1, Rat(0));
        if (mode == DiagMode::exact) {
            row += ricg[static_cast<size_t>(i - 1)][static_cast<size_t>(i - 1)] *
                   RadialExpr::one_plus_x_pow(Rat(2));
        } else {
            row -= RadialExpr::one_plus_x_pow(Rat(1)) * bound.c_diag;
        }
        row -= gersh;
        rows.push_back(row);
    }

    // U row, with (1 - f'^2)/f^2 replaced by its certified lower bound
    // (3/2 + x)/(1+x)^2.
    {
        Rat c0 = ratq(6, 4) + Rat(2 * k - 2) * Rat(3, 2);
        Rat c1 = Rat(1, 4) + Rat(2 * k - 2);
        for (const auto& ai : al) {
            c0 += 2 * ai;
            c1 += ai;
        }
        rows.push_back(RadialExpr::constant(c0) + RadialExpr::monomial(c1, 1, Rat(0)));
    }
    return rows;
}

static std::string row_label(int idx, int n) {
    if (idx == 0) return "partial_r";
    if (idx <= n) return "Y_" + std::to_string(idx);
    return "U";
}

TotalCertificate certify_total(const NilpotentAlgebra& a, long k, DiagMode mode,
                               long degree_cap) {
    auto rows = total_row_numerators(a, k, mode);
    TotalCertificate out;
    bool all_pos = true, any_overflow = false;
    for (size_t idx = 0; idx < rows.size(); ++idx) {
        auto rp = to_poly(rows[idx], a.dim);
        auto cert = certify_ray_positive(rp.coeffs, degree_cap);
        if (cert.status == RaySign::overflow) {
            any_overflow = true;
            all_pos = false;
            if (out.failing_row < 0) {
                out.failing_row = static_cast<int>(idx);
                out.detail = "row " + row_label(static_cast<int>(idx), a.dim) +
                             " exceeded the certifier degree cap";
            }
            continue;
        }
        if (cert.status != RaySign::positive) {
            all_pos = false;
            if (out.failing_row < 0) {
                out.failing_row = static_cast<int>(idx);
                out.detail = "row " + row_label(static_cast<int>(idx), a.dim) +
                             " is not strictly positive (" + cert.method + ")";
            }
        }
    }
    if (all_pos) {
        out.verdict = Verdict::positive;
        out.rigorous = true;
    } else if (any_overflow) {
        out.verdict = Verdict::inconclusive;
        out.rigorous = false;
    } else {
        // Rows are Gershgorin lower bounds; the partial_r row is the exact
        // diagonal, the others witness failure of the row criterion only.
        out.verdict = Verdict::not_positive;
        out.rigorous = true;
    }
    return out;
}

static bool rows_positive_on_grid(const std::vector<RadialExpr>& rows, long N) {
    std::vector<Rat> points;
    for (int j = 0; j <= 160; ++j) points.push_back(ratq(16 + j, 16));
    for (int t = 1; t <= 30; ++t) points.push_back(rat_pow(Rat(2), t));
    for (const auto& row : rows) {
        for (const auto& u : points) {
            ScaledReal v = row.eval_scaled_u(u, N);
            if (!(v.mant > 0.0)) return false;
        }
    }
    return true;
}

K0Result find_k0(const NilpotentAlgebra& a, DiagMode mode) {
    long N = 1L << (a.dim + 1);
    bool overflowed = false;
    auto pass = [&](long k) -> std::optional<bool> {
        auto cert = certify_total(a, k, mode);
        if (cert.verdict == Verdict::inconclusive) return std::nullopt;
        return cert.verdict == Verdict::positive;
    };
    auto pass_grid = [&](long k) {
        return rows_positive_on_grid(total_row_numerators(a, k, mode), N);
    };
    auto check = [&](long k) {
        if (!overflowed) {
            auto p = pass(k);
            if (p) return *p;
            overflowed = true;
        }
        return pass_grid(k);
    };

    long hi = 1;
    while (!check(hi)) {
        hi *= 2;
        if (hi > (1L << 40)) throw std::runtime_error("find_k0: no passing k found");
    }
    long lo = hi / 2;  // fails (or 0 when hi == 1)
    while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        if (check(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {hi, !overflowed};
}

long k_star(const NilpotentAlgebra& a, DiagMode mode) {
    long N = 1L << (a.dim + 1);
    return find_k0(a, mode).k0 + (N + 4 + 2) / 3;
}

}  // namespace nilric
