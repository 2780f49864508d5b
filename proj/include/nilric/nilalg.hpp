#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nilric/radial.hpp"

namespace nilric {

// Structure constants of a nilpotent Lie algebra in an adapted basis,
// stored dense with both orientations so antisymmetry is checkable data
// rather than a representation artifact.
struct NilpotentAlgebra {
    std::string name;
    int dim = 0;
    std::vector<Rat> c;  // index (i*dim + j)*dim + l, all 0-based

    Rat& at(int i, int j, int l) { return c[static_cast<size_t>((i * dim + j) * dim + l)]; }
    const Rat& at(int i, int j, int l) const {
        return c[static_cast<size_t>((i * dim + j) * dim + l)];
    }
    // Sets c_{ij}^l and its antisymmetric partner (1-based indices).
    void set_bracket(int i, int j, int l, const Rat& v);
};

struct Violation {
    std::string check;  // "antisymmetry" | "adapted" | "jacobi"
    std::vector<int> indices;  // 1-based
    Rat witness;
};

struct ValidationReport {
    bool passed = true;
    std::vector<Violation> violations;
};

struct AlgebraBound {
    Rat c;       // off-diagonal constant: max_{i != j} sum of |coefficients|
    Rat c_diag;  // diagonal negative-part constant, used by bound mode
    std::vector<std::array<int, 4>> worst;        // (i, k, j, l) quadruples attaining c
    std::vector<std::pair<std::string, Rat>> exponent_table;  // monomial -> (1+r^2)-exponent
    bool certified = false;  // every exponent <= -1
};

NilpotentAlgebra make_abelian(int n);
NilpotentAlgebra make_heisenberg(int dim);  // dim = 2p+1 <= 5
NilpotentAlgebra make_ut(int d);            // strictly upper triangular, d <= 4
NilpotentAlgebra make_twisted4();

// Accepts "abelian(2)" or "abelian2" style names; throws on unknown ones.
NilpotentAlgebra catalog_algebra(const std::string& name);
std::vector<std::pair<std::string, int>> catalog();  // (name, dim)

ValidationReport validate(const NilpotentAlgebra& a);

// Remark-2.1-style condition: c_{ij}^l * c_{jk}^l = 0 for all i != k, j, l.
bool check_commutation_condition(const NilpotentAlgebra& a);
std::optional<std::array<int, 4>> find_commutation_violation(const NilpotentAlgebra& a);

// Ric_G(Y_i, Y_j) of the rescaled left-invariant metric as exact monomial sums
// in (1+r^2); the standard structure-constant Ricci of a unimodular metric
// Lie algebra evaluated on gamma_{ij}^l = c_{ij}^l (1+r^2)^{alpha_i+alpha_j-alpha_l}.
std::vector<std::vector<RadialExpr>> ricci_monomials(const NilpotentAlgebra& a);

std::vector<std::vector<double>> scaled_ricci(const NilpotentAlgebra& a, int n, double r);

// Throws std::domain_error (no finite certified c) when a monomial exponent
// exceeds -1, which signals a non-adapted basis.
AlgebraBound algebra_bound_c(const NilpotentAlgebra& a);

}  // namespace nilric
