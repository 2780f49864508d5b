#pragma once

#include <optional>

#include "nilric/totalspace.hpp"

namespace nilric {

// Geometry of the collapsed circle: the R-action rotates the distinguished
// central direction Y_1 against the Hopf circle U_1 with speed m, so the unit
// vertical direction is W = (h_1 Y_1 + m f U_1)/sqrt(norm2) and its horizontal
// complement in the (Y_1, U_1) plane is W'.
struct FiberGeometry {
    double r = 0;
    double norm2 = 0;   // h_1^2 + m^2 f^2
    double q = 0;       // (f/h_1)^2 = x (1+x)^{N-1}
    double D = 0;       // 1 + m^2 q = norm2/h_1^2 (saturates for large r)
    double g_mean = 0;  // <nabla_W partial_r, W> = r P_1 / ((1+x) D)
    double w_y = 0, w_u = 0;    // components of W along (Y_1, U_1)
    double wp_y = 0, wp_u = 0;  // components of W'
};

FiberGeometry fiber_geometry(int n, long m, double r);

// O'Neill corrections for the quotient by the free isometric R-action,
// relative to the total-space diagonals. All are exact closed forms; the
// W' entry additionally drops a nonnegative A-term and is therefore a
// certified lower bound rather than an equality.
double error_rr(int n, long m, double r);
double nabla_ys(int n, long m, int i, double r);  // <nabla_{Y_i} S, Y_i>
double error_yy(const NilpotentAlgebra& a, long m, int i, double r,
                DiagMode mode = DiagMode::exact);
double error_uu(int n, long m, double r);
double error_wprime(int n, long m, double r);
double wprime_entry(const SubmersionParams& p, double r, DiagMode mode = DiagMode::exact);

// Diagonal data of the base Ricci form in the frame
// (partial_r, Y_2..Y_n, U_1..U_{2k-2}, W'); dimension n + 2k - 1.
struct BaseDiag {
    double r = 0;
    double ric_rr = 0;       // includes err_rr
    double ric_u = 0;        // includes err_u; multiplicity 2k-2
    std::vector<double> ric_y;  // Y_i for i = 2..n, includes err_y
    double ric_wprime = 0;   // certified lower bound
    double err_rr = 0, err_u = 0, err_wprime = 0;
    std::vector<double> err_y;
    double offdiag_bound = 0;   // c/(1+r^2)
    double gershgorin_min = 0;  // U row ignored when k == 1
};

BaseDiag base_ricci(const SubmersionParams& p, double r, DiagMode mode = DiagMode::exact);

struct PositivityCertificate {
    Verdict verdict = Verdict::inconclusive;
    CertMode mode = CertMode::sturm;
    bool rigorous = false;
    std::optional<double> min_margin;
    std::optional<double> witness_r;
    std::string detail;
};

// Decides positivity of the base Ricci form for all r >= 0 via Gershgorin row
// numerators: exact Sturm certificates in sturm mode, scaled-float sampling
// plus a rigorous tail-dominance bound in grid mode. not_positive is only ever
// reported off an exact rational recheck of an exact diagonal entry.
PositivityCertificate certify_positivity(const SubmersionParams& p, CertMode mode,
                                         long degree_cap = 6000);

struct MinKResult {
    long k = 0;
    PositivityCertificate cert;
};

// Smallest k whose certificate comes back positive (rows are pointwise
// nondecreasing in k, so bisection applies).
MinKResult min_k(const NilpotentAlgebra& a, long m, CertMode mode = CertMode::sturm);

std::vector<BaseDiag> scan(const SubmersionParams& p, double r_max, int steps,
                           DiagMode mode = DiagMode::exact);

// Symbolic building blocks, exposed for tests.
RadialExpr expr_P1(int n, long m);
RadialExpr expr_P2(int n, long m);
RadialExpr expr_D(int n, long m);
// Row order: partial_r, Y_2..Y_n, U (skipped when k == 1), W'.
std::vector<RadialExpr> quotient_row_numerators(const SubmersionParams& p,
                                                DiagMode diag_mode = DiagMode::exact);
// Exact diagonals usable as not_positive witnesses, with their denominators:
// (numerator, denominator) pairs over x = u^N - 1, in row order
// partial_r, Y_2..Y_n, U (the U pair is only valid for u > 1).
std::vector<std::pair<RadialExpr, RadialExpr>> quotient_exact_diagonals(
    const SubmersionParams& p);

}  // namespace nilric
