#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "nilric/numeric.hpp"

namespace nilric {

// Element of the integral exterior algebra on d <= 32 generators x1..xd.
// Basis monomials are bitmasks (bit i-1 set = generator x_i present) with
// exact integer coefficients; this models the torsion-free cup structure
// of the relevant nilmanifold cohomology in the degrees the demos use.
struct ExtClass {
    int d = 0;
    std::map<uint32_t, Int> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const ExtClass& o) const { return d == o.d && terms == o.terms; }
};

ExtClass ext_zero(int d);
ExtClass ext_unit(int d);              // 1
ExtClass ext_generator(int d, int i);  // x_i, 1-based
ExtClass ext_monomial(int d, std::initializer_list<int> gens, const Int& coef = Int(1));

ExtClass wedge(const ExtClass& a, const ExtClass& b);
ExtClass ext_add(const ExtClass& a, const ExtClass& b);
ExtClass ext_scale(const ExtClass& a, const Int& s);
ExtClass ext_pow(const ExtClass& a, int e);
ExtClass ext_part(const ExtClass& a, int degree);
int ext_top_degree(const ExtClass& a);  // -1 for zero

std::string ext_to_string(const ExtClass& a);

// Basis masks of degree `degree` in increasing numeric order.
std::vector<uint32_t> ext_basis(int d, int degree);

// Matrix of the cup product with e, mapping degree `from_degree` to degree
// from_degree + deg(e); rows indexed by the target basis, columns by the
// source basis. e must be homogeneous.
std::vector<std::vector<Int>> cup_matrix(const ExtClass& e, int from_degree);

// Fraction-free integer determinant.
Int det_bareiss(std::vector<std::vector<Int>> m);

struct BundleClasses {
    ExtClass c1;       // m * alpha
    ExtClass total_p;  // (1 - c1^2)^k, degrees beyond the top vanish
    ExtClass p1;       // -k c1^2 = -k m^2 alpha^2
};

// Characteristic classes of the rank-k complex bundle with first Chern class
// m * alpha in each summand direction.
BundleClasses pontryagin(const ExtClass& alpha, long k, long m);

bool has_nontorsion_square(const ExtClass& alpha);

struct GysinData {
    ExtClass e;
    std::vector<std::vector<Int>> mat;  // cup with e from degree 1
    Int det;
    ExtClass e_squared;
};

GysinData gysin_demo(const ExtClass& e);

// Parses "x1^x2 + x3^x4" style expressions: '^' wedges generators, terms join
// with +/- and may carry integer coefficients ("2x1^x2", "-3*x3^x4").
ExtClass parse_class(const std::string& text, int d = 4);

}  // namespace nilric
