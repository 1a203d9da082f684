#include "validator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace starembed {

double embedding_diameter(const Embedding& embedding) { return diameter(embedding.coordinates); }

OrientationCheck check_orientations(const Embedding& embedding, double area_tolerance) {
    OrientationCheck check;
    const auto& faces = embedding.mesh->faces();
    const auto& xy = embedding.coordinates;
    check.face_areas.reserve(faces.size());
    for (std::size_t k = 0; k < faces.size(); ++k) {
        const double area = 0.5 * orient(xy[faces[k][0]], xy[faces[k][1]], xy[faces[k][2]]);
        check.face_areas.push_back(area);
        if (area > area_tolerance) continue;
        // NaN areas land here too and count as degenerate.
        check.issues.push_back({k, area < -area_tolerance ? FaceDefect::inverted : FaceDefect::degenerate, area});
    }
    return check;
}

OrientationCheck check_orientations(const Embedding& embedding) {
    const double d = embedding_diameter(embedding);
    return check_orientations(embedding, relative_tolerance * d * d);
}

std::vector<EdgeCrossing> check_crossings(const Embedding& embedding, double length_tolerance) {
    std::vector<EdgeCrossing> crossings;
    const auto& edges = embedding.mesh->edges();
    const auto& xy = embedding.coordinates;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const Edge& f = edges[j];
            if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b) continue;
            if (segment_distance(xy[e.a], xy[e.b], xy[f.a], xy[f.b]) <= length_tolerance) {
                crossings.push_back({e, f});
            }
        }
    }
    return crossings;
}

std::vector<EdgeCrossing> check_crossings(const Embedding& embedding) {
    return check_crossings(embedding, relative_tolerance * embedding_diameter(embedding));
}

std::vector<ReflexVerdict> check_reflex_hull(const Embedding& embedding, const BoundaryPolygon& polygon) {
    std::vector<ReflexVerdict> verdicts;
    const auto& mesh = *embedding.mesh;
    for (std::size_t slot : reflex_vertices(polygon)) {
        const Index v = mesh.boundary_cycle()[slot];
        const Vec2 origin = embedding.coordinates[v];
        std::vector<double> angles;
        for (Index u : mesh.neighbors(v)) {
            const Vec2 d = embedding.coordinates[u] - origin;
            angles.push_back(std::atan2(d.y, d.x));
        }
        std::sort(angles.begin(), angles.end());
        double gap = 2.0 * std::numbers::pi - (angles.back() - angles.front());
        for (std::size_t k = 1; k < angles.size(); ++k) {
            gap = std::max(gap, angles[k] - angles[k - 1]);
        }
        verdicts.push_back({v, slot, gap, gap < std::numbers::pi - relative_tolerance});
    }
    return verdicts;
}

ValidityReport validate(const Embedding& embedding, const BoundaryPolygon& polygon) {
    ValidityReport report;
    const auto& mesh = *embedding.mesh;
    const double d = polygon.diameter();
    if (polygon.size() != mesh.boundary_count() || embedding.coordinates.size() != mesh.vertex_count()) {
        report.boundary_mismatch = mesh.boundary_cycle();
        return report;
    }
    for (std::size_t k = 0; k < mesh.boundary_count(); ++k) {
        const Index v = mesh.boundary_cycle()[k];
        if (!(embedding.coordinates[v] == polygon[k])) report.boundary_mismatch.push_back(v);
    }
    OrientationCheck orientation = check_orientations(embedding, polygon.area_tolerance());
    report.face_areas = std::move(orientation.face_areas);
    report.face_issues = std::move(orientation.issues);
    report.crossings = check_crossings(embedding, relative_tolerance * d);
    report.reflex = check_reflex_hull(embedding, polygon);
    report.valid = report.boundary_mismatch.empty() && report.face_issues.empty() && report.crossings.empty() &&
                   std::all_of(report.reflex.begin(), report.reflex.end(), [](const auto& r) { return r.pass; });
    return report;
}

}  // namespace starembed
