#include "tutte.hpp"

#include <cmath>
#include <random>
#include <string>

#include "errors.hpp"

namespace starembed {

WeightScheme normalize_weights(const Triangulation& mesh, const RawWeights& c) {
    WeightScheme scheme;
    const std::size_t n = mesh.interior_count();
    scheme.neighbors.resize(n);
    scheme.raw.resize(n);
    scheme.normalized.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Index v = mesh.interior_vertices()[i];
        scheme.neighbors[i] = mesh.neighbors(v);
        double total = 0.0;
        for (Index u : scheme.neighbors[i]) {
            const double w = c(v, u);
            if (!(w > 0.0) || !std::isfinite(w)) {
                throw Error(ErrorCode::non_positive_weight, "weight of directed edge (" + std::to_string(v) + ", " +
                                                                std::to_string(u) + ") is not positive");
            }
            scheme.raw[i].push_back(w);
            total += w;
        }
        for (double w : scheme.raw[i]) scheme.normalized[i].push_back(w / total);
    }
    return scheme;
}

WeightScheme uniform_weights(const Triangulation& mesh) {
    return normalize_weights(mesh, [](Index, Index) { return 1.0; });
}

WeightScheme random_weights(const Triangulation& mesh, std::uint64_t seed, double low, double high) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> draw(low, high);
    // Draws happen in interior-slot then fan order, which normalize_weights follows.
    return normalize_weights(mesh, [&](Index, Index) { return draw(rng); });
}

LinearSystem assemble_tutte_system(const Triangulation& mesh, const BoundaryPolygon& polygon,
                                   const WeightScheme& weights) {
    const std::size_t ni = mesh.interior_count();
    const std::size_t nb = mesh.boundary_count();
    if (polygon.size() != nb) {
        throw Error(ErrorCode::dimension_mismatch, "polygon has " + std::to_string(polygon.size()) +
                                                       " vertices but the boundary cycle has " + std::to_string(nb));
    }
    if (weights.normalized.size() != ni) {
        throw Error(ErrorCode::dimension_mismatch, "weight scheme does not match the interior vertex count");
    }
    auto unknown = [&](Index v) { return mesh.is_boundary(v) ? ni + mesh.boundary_slot(v) : mesh.interior_slot(v); };

    LinearSystem system;
    system.interior_count = ni;
    system.boundary_count = nb;
    const auto n = static_cast<Eigen::Index>(ni + nb);
    std::vector<Eigen::Triplet<double>> entries;
    system.bx = Eigen::VectorXd::Zero(n);
    system.by = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < ni; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        if (weights.neighbors[i] != mesh.neighbors(mesh.interior_vertices()[i])) {
            throw Error(ErrorCode::dimension_mismatch, "weight scheme rows do not follow the mesh fans");
        }
        entries.emplace_back(row, row, 1.0);
        for (std::size_t k = 0; k < weights.neighbors[i].size(); ++k) {
            entries.emplace_back(row, static_cast<Eigen::Index>(unknown(weights.neighbors[i][k])),
                                 -weights.normalized[i][k]);
        }
    }
    for (std::size_t k = 0; k < nb; ++k) {
        const auto row = static_cast<Eigen::Index>(ni + k);
        entries.emplace_back(row, row, 1.0);
        system.bx[row] = polygon[k].x;
        system.by[row] = polygon[k].y;
    }
    system.matrix.resize(n, n);
    system.matrix.setFromTriplets(entries.begin(), entries.end());
    return system;
}

EmbedResult tutte_embed(std::shared_ptr<const Triangulation> mesh, const BoundaryPolygon& polygon,
                        const WeightScheme& weights, double tolerance) {
    if (!is_convex(polygon)) {
        throw Error(ErrorCode::boundary_not_convex, "boundary polygon is not convex; use the star-shaped solver");
    }
    const LinearSystem system = assemble_tutte_system(*mesh, polygon, weights);
    InteriorSolution solution = solve(system, tolerance);
    SolverMetadata meta;
    meta.method = "tutte";
    meta.residual = solution.residual;
    EmbedResult result{make_embedding(std::move(mesh), polygon, solution.interior, std::move(meta)), {}};
    result.report = validate(result.embedding, polygon);
    return result;
}

}  // namespace starembed
