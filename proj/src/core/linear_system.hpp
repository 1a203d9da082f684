#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "geometry.hpp"

namespace starembed {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Square system over all vertices. Unknowns are ordered interior vertices first
// (by interior slot), then boundary vertices (by boundary slot). The top-left
// interior_count block is the interior operator, the top-right block couples
// interior rows to the boundary, and the bottom rows are identity rows.
struct LinearSystem {
    SparseMatrix matrix;
    Eigen::VectorXd bx;
    Eigen::VectorXd by;
    std::size_t interior_count = 0;
    std::size_t boundary_count = 0;

    std::size_t size() const { return interior_count + boundary_count; }
};

struct InteriorSolution {
    std::vector<Vec2> interior;
    double residual = 0.0;  // ||M z - b|| / ||b|| over both coordinates
};

inline constexpr double default_solve_tolerance = 1e-10;

// Sparse LU with iterative refinement. Throws Error(solve_failed) if the
// factorization breaks down or the relative residual stays above `tolerance`.
InteriorSolution solve(const LinearSystem& system, double tolerance = default_solve_tolerance);

double relative_residual(const LinearSystem& system, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace starembed
