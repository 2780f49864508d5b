#pragma once

#include "nilric/nilalg.hpp"

namespace nilric {

struct SubmersionParams {
    NilpotentAlgebra algebra;
    int n = 0;   // = algebra.dim
    long k = 1;  // complex fiber rank
    long m = 1;  // twist of the R-action

    SubmersionParams() = default;
    SubmersionParams(NilpotentAlgebra a, long k_, long m_)
        : algebra(std::move(a)), n(algebra.dim), k(k_), m(m_) {
        if (k < 1) throw std::invalid_argument("SubmersionParams: k must be >= 1");
        if (m == 0) throw std::invalid_argument("SubmersionParams: m must be nonzero");
    }
};

enum class DiagMode { exact, bound };
enum class CertMode { sturm, grid };

// (1 - f'^2)/f^2 evaluated stably (series near r = 0).
double one_minus_fp2_over_f2(double r);

// Diagonal entries of the total-space Ricci form in the orthonormal frame
// (partial_r, Y_i, U_j); r = 0 values are the analytic limits.
double total_ric_rr(const SubmersionParams& p, double r);
double total_ric_yy(const SubmersionParams& p, int i, double r, DiagMode mode = DiagMode::exact);
double total_ric_uu(const SubmersionParams& p, double r);

struct TotalRicci {
    double r = 0;
    double ric_rr = 0;
    std::vector<double> ric_yy;
    double ric_uu = 0;
    double offdiag_bound = 0;  // c/(1+r^2)
};

TotalRicci total_ricci(const SubmersionParams& p, double r, DiagMode mode = DiagMode::exact);

// Gershgorin row numerators of the total-space form over the common
// denominator (1+x)^2 (times the Ric_G denominators in exact mode), as exact
// monomial sums. Row indices: 0 = partial_r, 1..n = Y_i, n+1 = U.
// In sturm certificates the U row uses the certified lower bound
// (1 - f'^2)/f^2 >= (3/2 + x)/(1+x)^2.
std::vector<RadialExpr> total_row_numerators(const NilpotentAlgebra& a, long k, DiagMode mode);

enum class Verdict { positive, not_positive, inconclusive };

struct TotalCertificate {
    Verdict verdict = Verdict::inconclusive;
    bool rigorous = false;
    int failing_row = -1;
    std::string detail;
};

TotalCertificate certify_total(const NilpotentAlgebra& a, long k, DiagMode mode,
                               long degree_cap = 6000);

struct K0Result {
    long k0 = 0;
    bool rigorous = false;
};

// Smallest k whose total-space Gershgorin rows are positive for every r >= 0.
// Sturm-certified; falls back to a grid scan (flagged non-rigorous) when the
// certifier overflows its degree cap.
K0Result find_k0(const NilpotentAlgebra& a, DiagMode mode = DiagMode::bound);

// ceil(k0 + 2^{n+1}/3 + 4/3), the headline sufficient rank.
long k_star(const NilpotentAlgebra& a, DiagMode mode = DiagMode::bound);

}  // namespace nilric
