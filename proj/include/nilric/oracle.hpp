#pragma once

#include <functional>

#include "nilric/quotient.hpp"

namespace nilric {

using Matrix = std::vector<std::vector<double>>;

struct Chart {
    std::string name;
    int dim = 0;
    std::function<Matrix(const std::vector<double>&)> metric;
};

// Coordinate chart of the doubly warped total space for low-dimensional
// models. model is "abelian" (n in {1, 2}) or "heisenberg3" (n = 3); k is 1
// or 2. Coordinates: (group coordinates, r, fiber angle(s)); the k = 2 fiber
// is the round S^3 in Hopf-adapted angles (psi, phi1, phi2).
Chart total_space_chart(const std::string& model, int n, long k);

// Coordinate components of the orthonormal frame (Y_1..Y_n, partial_r, U...)
// at a chart point, frame[a][i] the i-th coordinate component of frame
// vector a. Valid away from the angular coordinate degeneracies.
std::vector<std::vector<double>> chart_frame(const std::string& model, int n, long k,
                                             const std::vector<double>& pt);

Chart flat_chart(int dim);
Chart sphere2_chart();               // unit round S^2, coordinates (theta, phi)
Chart sphere3_chart(double radius);  // round S^3, coordinates (psi, phi1, phi2)

// Coordinate Ricci tensor by central finite differences of the Christoffel
// symbols, second order in h.
Matrix fd_ricci_raw(const Chart& chart, const std::vector<double>& pt, double h);
// Richardson-extrapolated to fourth order: (4 R(h/2) - R(h)) / 3.
Matrix fd_ricci(const Chart& chart, const std::vector<double>& pt, double h = 1e-3);

double ridders_derivative(const std::function<double(double)>& fn, double x0,
                          double h0 = 0.1, double* err_est = nullptr);

struct IdentityCheck {
    std::string name;
    double max_rel_err = 0;
    double worst_r = 0;
    bool passed = false;
};

struct IdentityReport {
    bool passed = true;
    std::vector<IdentityCheck> checks;
};

// Cross-checks the closed-form submersion data for the abelian profile of
// rank n against independent numerical differentiation at the given radii
// (all must be positive). Relative errors are floored at scale 1.
IdentityReport identity_suite(int n, long m, const std::vector<double>& radii,
                              double tol = 1e-8);

}  // namespace nilric
