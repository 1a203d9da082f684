#pragma once

#include <functional>
#include <vector>

#include "embedding.hpp"
#include "mesh.hpp"
#include "polygon.hpp"
#include "star.hpp"
#include "tutte.hpp"

namespace starembed::testing {

using DenseMatrix = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting; solves A X = B column by column.
std::vector<std::vector<double>> dense_solve(DenseMatrix a, std::vector<std::vector<double>> rhs);

// Positions of every vertex, indexed by vertex id. Unknowns are vertex ids
// here, unlike the library's interior-then-boundary ordering.
std::vector<Vec2> dense_tutte(const Triangulation& mesh, const BoundaryPolygon& polygon, const WeightScheme& weights);

// w(interior vertex, boundary vertex) for interior-boundary edges.
using CouplingWeight = std::function<double(Index, Index)>;

// Stationary point of the epsilon energy, built straight from its gradient.
std::vector<Vec2> dense_epsilon(const Triangulation& mesh, const BoundaryPolygon& polygon, const CouplingWeight& w,
                                double epsilon);

CouplingWeight uniform_coupling_weight(const Triangulation& mesh);

// Looks up W(i, j) by vertex ids.
CouplingWeight coupling_lookup(const Triangulation& mesh, const BoundaryCouplingMatrix& coupling);

// Central differences of energy_value over every interior coordinate.
double fd_gradient_max(const Embedding& embedding, const BoundaryCouplingMatrix& coupling, double epsilon, double step);

// p sees every polygon vertex and a dense sample of boundary points.
bool sees_whole_boundary(const BoundaryPolygon& polygon, Vec2 p, int samples_per_edge = 16);

// Edge pairs without a shared endpoint whose segments cross or touch, from
// bounding-box filtering plus exact orientation signs.
std::size_t brute_force_crossings(const Embedding& embedding);

// S(eps) assembled entry by entry from the energy, rows in interior_vertices() order.
DenseMatrix dense_s_block(const Triangulation& mesh, const CouplingWeight& w, double epsilon);

// Cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(DenseMatrix a);

// || eps S^-1 - ones ||_2 by elimination and Jacobi.
double dense_inverse_deviation(const DenseMatrix& s, double epsilon);

double max_coordinate_gap(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

}  // namespace starembed::testing
