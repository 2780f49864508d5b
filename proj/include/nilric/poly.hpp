#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilric/numeric.hpp"

namespace nilric {

// Dense univariate polynomials, coefficient of w^i at index i.
using QPolyV = std::vector<Rat>;
using ZPolyV = std::vector<Int>;

long poly_degree(const QPolyV& p);         // -1 for the zero polynomial
long poly_degree(const ZPolyV& p);
void poly_trim(QPolyV& p);
void poly_trim(ZPolyV& p);

Rat poly_eval(const QPolyV& p, const Rat& x);
Rat poly_eval(const ZPolyV& p, const Rat& x);

QPolyV poly_derivative(const QPolyV& p);

// Multiplies through by the lcm of coefficient denominators and divides by the
// content, leaving a primitive integer polynomial with the same sign pattern.
ZPolyV poly_to_primitive(const QPolyV& p);
void make_primitive(ZPolyV& p);

// Exact deflation by (w - 1); remainder must vanish.
ZPolyV poly_deflate_at_one(const ZPolyV& p);

// Coefficients of p(v + 1).
ZPolyV poly_shift_by_one(const ZPolyV& p);

// Distinct real roots of p in the open interval (1, inf), via a Sturm chain
// over exact integers. p(1) must be nonzero.
long sturm_roots_beyond_one(const ZPolyV& p, long degree_cap, bool* overflowed);

// Sign behavior of P on the closed ray w in [1, inf).
//   positive:          P > 0 everywhere on [1, inf)
//   nonneg_zero_at_one P >= 0, vanishing exactly at w = 1
//   indefinite:        P vanishes somewhere in (1, inf) or is negative near 1
//   overflow:          degree cap exceeded before a fast path applied
enum class RaySign { positive, nonneg_zero_at_one, indefinite, overflow };

struct RayCert {
    RaySign status = RaySign::overflow;
    std::string method;           // "zero", "constant", "nonneg-coeffs", "descartes", "sturm", ...
    long root1_multiplicity = 0;  // stripped (w-1) factors
    long stripped_w_power = 0;    // stripped w^a factor
    long compression = 1;         // exponent gcd applied before analysis
    long roots_beyond_one = -1;   // Sturm count when the full chain ran
    bool has_negative_witness = false;
    Rat witness_w;                // point in (1, inf) with P < 0, if found
};

// Decides positivity of P on [1, inf). Exact; never returns a wrong sign
// (inconclusive outcomes surface as overflow, indefinite carries proof).
RayCert certify_ray_positive(const QPolyV& P, long degree_cap = 6000);

}  // namespace nilric
