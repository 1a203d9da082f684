#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "mesh.hpp"
#include "polygon.hpp"

namespace starembed {

struct SolverMetadata {
    std::string method;  // "tutte", "star", "epsilon", "section", ...
    double residual = 0.0;
    std::optional<double> epsilon;
    std::optional<int> halvings;
    std::optional<Vec2> eye;
};

// Straight-line realization of a triangulation: one point per vertex.
struct Embedding {
    std::shared_ptr<const Triangulation> mesh;
    std::vector<Vec2> coordinates;
    SolverMetadata metadata;
};

// Boundary coordinates copied from the polygon, interior ones from `interior`
// (indexed by interior slot).
Embedding make_embedding(std::shared_ptr<const Triangulation> mesh, const BoundaryPolygon& polygon,
                         const std::vector<Vec2>& interior, SolverMetadata metadata);

}  // namespace starembed
