#include "geometry.hpp"

#include <algorithm>

#include "errors.hpp"

namespace starembed {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ok: return "Ok";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::schema_error: return "SchemaError";
        case ErrorCode::domain_error: return "DomainError";
        case ErrorCode::not_a_disk: return "NotADisk";
        case ErrorCode::inconsistent_orientation: return "InconsistentOrientation";
        case ErrorCode::duplicate_face: return "DuplicateFace";
        case ErrorCode::invalid_polygon: return "InvalidPolygon";
        case ErrorCode::non_positive_weight: return "NonPositiveWeight";
        case ErrorCode::dimension_mismatch: return "DimensionMismatch";
        case ErrorCode::solve_failed: return "SolveFailed";
        case ErrorCode::boundary_not_convex: return "BoundaryNotConvex";
        case ErrorCode::not_star_shaped: return "NotStarShaped";
        case ErrorCode::eye_outside_hull: return "EyeOutsideHull";
        case ErrorCode::eye_outside_kernel: return "EyeOutsideKernel";
        case ErrorCode::dividing_edge_present: return "DividingEdgePresent";
        case ErrorCode::degree_two_boundary_vertex: return "DegreeTwoBoundaryVertex";
        case ErrorCode::epsilon_out_of_range: return "EpsilonOutOfRange";
        case ErrorCode::budget_exceeded: return "BudgetExceeded";
        case ErrorCode::halving_exhausted: return "HalvingExhausted";
        case ErrorCode::degenerate_correspondence: return "DegenerateCorrespondence";
        case ErrorCode::point_at_infinity: return "PointAtInfinity";
        case ErrorCode::target_not_reflex: return "TargetNotReflex";
        case ErrorCode::invalid_argument: return "InvalidArgument";
        case ErrorCode::io_error: return "IoError";
    }
    return "Unknown";
}

double signed_area(std::span<const Vec2> ring) {
    double twice = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        twice += cross(ring[i], ring[(i + 1) % ring.size()]);
    }
    return 0.5 * twice;
}

double diameter(std::span<const Vec2> points) {
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            best = std::max(best, distance(points[i], points[j]));
        }
    }
    return best;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) {
        return distance(p, a);
    }
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

double segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double d1 = orient(a, b, c);
    const double d2 = orient(a, b, d);
    const double d3 = orient(c, d, a);
    const double d4 = orient(c, d, b);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return 0.0;
    }
    return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                     point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

std::vector<Vec2> convex_hull(std::span<const Vec2> points) {
    std::vector<Vec2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
        return pts;
    }
    std::vector<Vec2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Vec2& p : pts) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (k >= lower && orient(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

Barycentric barycentric(Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
    const double total = orient(a, b, c);
    const double u = orient(p, b, c) / total;
    const double v = orient(a, p, c) / total;
    return {u, v, 1.0 - u - v};
}

}  // namespace starembed
