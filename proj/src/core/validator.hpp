#pragma once

#include <vector>

#include "embedding.hpp"
#include "polygon.hpp"

namespace starembed {

enum class FaceDefect { inverted, degenerate };

struct FaceIssue {
    std::size_t face = 0;
    FaceDefect defect = FaceDefect::degenerate;
    double area = 0.0;
};

struct EdgeCrossing {
    Edge first;
    Edge second;
};

struct ReflexVerdict {
    Index vertex = 0;
    std::size_t boundary_slot = 0;
    double max_gap = 0.0;  // largest angular gap between incident edge directions
    bool pass = false;
};

struct OrientationCheck {
    std::vector<double> face_areas;
    std::vector<FaceIssue> issues;
};

struct ValidityReport {
    std::vector<double> face_areas;
    std::vector<FaceIssue> face_issues;
    std::vector<EdgeCrossing> crossings;
    std::vector<ReflexVerdict> reflex;
    std::vector<Index> boundary_mismatch;  // boundary vertices not at their polygon position
    bool valid = false;
};

// Largest pairwise distance between embedded vertices.
double embedding_diameter(const Embedding& embedding);

// Signed face areas; a face passes iff its area exceeds `area_tolerance`.
OrientationCheck check_orientations(const Embedding& embedding, double area_tolerance);
OrientationCheck check_orientations(const Embedding& embedding);

// All pairs of edges without a shared endpoint whose segments touch or cross
// (distance at most `length_tolerance`).
std::vector<EdgeCrossing> check_crossings(const Embedding& embedding, double length_tolerance);
std::vector<EdgeCrossing> check_crossings(const Embedding& embedding);

// A reflex boundary vertex passes iff it lies strictly inside the convex hull
// of its neighbors, i.e. its incident edge directions leave no angular gap of
// pi or more.
std::vector<ReflexVerdict> check_reflex_hull(const Embedding& embedding, const BoundaryPolygon& polygon);

ValidityReport validate(const Embedding& embedding, const BoundaryPolygon& polygon);

}  // namespace starembed
