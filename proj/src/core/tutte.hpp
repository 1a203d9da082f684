#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "embedding.hpp"
#include "linear_system.hpp"
#include "mesh.hpp"
#include "polygon.hpp"
#include "validator.hpp"

namespace starembed {

// Per-interior-vertex weights, indexed by interior slot and aligned with
// Triangulation::neighbors(). Rows need not be symmetric.
struct WeightScheme {
    std::vector<std::vector<Index>> neighbors;
    std::vector<std::vector<double>> raw;
    std::vector<std::vector<double>> normalized;  // each row sums to 1
};

// c(from, to) for the directed edge from an interior vertex to a neighbor.
using RawWeights = std::function<double(Index from, Index to)>;

// Throws Error(non_positive_weight) if some c(i, j) is not a positive finite number.
WeightScheme normalize_weights(const Triangulation& mesh, const RawWeights& c);

WeightScheme uniform_weights(const Triangulation& mesh);

// Raw weights drawn uniformly from [low, high], reproducible from `seed`.
WeightScheme random_weights(const Triangulation& mesh, std::uint64_t seed, double low = 0.1, double high = 10.0);

// Interior rows encode x_i - sum_j w_ij x_j = 0, boundary rows x_i = b_i.
// Throws Error(dimension_mismatch).
LinearSystem assemble_tutte_system(const Triangulation& mesh, const BoundaryPolygon& polygon,
                                   const WeightScheme& weights);

struct EmbedResult {
    Embedding embedding;
    ValidityReport report;
};

// Throws Error(boundary_not_convex) or Error(solve_failed).
EmbedResult tutte_embed(std::shared_ptr<const Triangulation> mesh, const BoundaryPolygon& polygon,
                        const WeightScheme& weights, double tolerance = default_solve_tolerance);

}  // namespace starembed
