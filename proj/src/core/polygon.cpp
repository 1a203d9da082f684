#include "polygon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace starembed {
namespace {

// Turn at vertex k: positive for a left (convex) turn of a CCW ring.
double turn(const std::vector<Vec2>& pts, std::size_t k) {
    const std::size_t n = pts.size();
    const Vec2 prev = pts[(k + n - 1) % n];
    const Vec2 next = pts[(k + 1) % n];
    return cross(pts[k] - prev, next - pts[k]);
}

// Signed distance of p from the line through a -> b, positive on the left.
double side(Vec2 a, Vec2 b, Vec2 p) { return orient(a, b, p) / distance(a, b); }

std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& ring, Vec2 a, Vec2 b) {
    std::vector<Vec2> out;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 s = ring[i];
        const Vec2 e = ring[(i + 1) % n];
        const double ds = side(a, b, s);
        const double de = side(a, b, e);
        if (ds >= 0) out.push_back(s);
        if ((ds >= 0) != (de >= 0)) {
            const double t = ds / (ds - de);
            out.push_back(s + t * (e - s));
        }
    }
    return out;
}

std::vector<Vec2> clean_ring(std::vector<Vec2> ring, double tol) {
    bool changed = true;
    while (changed && ring.size() >= 2) {
        changed = false;
        for (std::size_t i = 0; i < ring.size() && ring.size() >= 2; ++i) {
            const std::size_t j = (i + 1) % ring.size();
            if (distance(ring[i], ring[j]) <= tol) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(j));
                changed = true;
                break;
            }
        }
        if (changed || ring.size() < 3) continue;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const Vec2 prev = ring[(i + ring.size() - 1) % ring.size()];
            const Vec2 next = ring[(i + 1) % ring.size()];
            if (std::abs(orient(prev, ring[i], next)) <= tol * distance(prev, next)) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return ring;
}

}  // namespace

BoundaryPolygon BoundaryPolygon::make(std::vector<Vec2> points) {
    const std::size_t n = points.size();
    if (n < 3) {
        throw Error(ErrorCode::invalid_polygon, "polygon needs at least 3 vertices");
    }
    for (const Vec2& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorCode::invalid_polygon, "polygon has a non-finite coordinate");
        }
    }
    BoundaryPolygon polygon;
    polygon.diameter_ = starembed::diameter(points);
    if (polygon.diameter_ == 0.0) {
        throw Error(ErrorCode::invalid_polygon, "polygon has zero diameter");
    }
    const double tol = relative_tolerance * polygon.diameter_;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 prev = points[(k + n - 1) % n];
        const Vec2 next = points[(k + 1) % n];
        const double base = distance(prev, next);
        if (distance(prev, points[k]) <= tol || base <= tol ||
            std::abs(orient(prev, points[k], next)) <= tol * base) {
            throw Error(ErrorCode::invalid_polygon,
                        "polygon vertex " + std::to_string(k) + " is collinear with its neighbors");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segment_distance(points[i], points[(i + 1) % n], points[j], points[(j + 1) % n]) <= tol) {
                throw Error(ErrorCode::invalid_polygon, "polygon edges " + std::to_string(i) + " and " +
                                                            std::to_string(j) + " intersect");
            }
        }
    }
    if (signed_area(points) <= 0) {
        throw Error(ErrorCode::invalid_polygon, "polygon is not counterclockwise");
    }
    polygon.points_ = std::move(points);
    return polygon;
}

bool BoundaryPolygon::contains(Vec2 p) const {
    const std::size_t n = points_.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 a = points_[i];
        const Vec2 b = points_[j];
        if (point_segment_distance(p, a, b) <= length_tolerance()) return false;
        if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
            inside = !inside;
        }
    }
    return inside;
}

Vec2 KernelPolygon::centroid() const {
    if (vertices.empty()) return {};
    const double a = signed_area(vertices);
    if (a <= 0.0) {
        Vec2 sum;
        for (const Vec2& v : vertices) sum = sum + v;
        return sum / static_cast<double>(vertices.size());
    }
    // Shift to the first vertex to limit cancellation.
    const Vec2 origin = vertices.front();
    Vec2 acc;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec2 p = vertices[i] - origin;
        const Vec2 q = vertices[(i + 1) % vertices.size()] - origin;
        acc = acc + cross(p, q) * (p + q);
    }
    return origin + acc / (6.0 * a);
}

KernelPolygon compute_kernel(const BoundaryPolygon& polygon) {
    const auto& pts = polygon.points();
    Vec2 lo = pts.front();
    Vec2 hi = pts.front();
    for (const Vec2& p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    const double pad = polygon.diameter();
    std::vector<Vec2> ring = {{lo.x - pad, lo.y - pad}, {hi.x + pad, lo.y - pad},
                              {hi.x + pad, hi.y + pad}, {lo.x - pad, hi.y + pad}};
    for (std::size_t k = 0; k < pts.size() && !ring.empty(); ++k) {
        ring = clip_half_plane(ring, pts[k], pts[(k + 1) % pts.size()]);
    }
    KernelPolygon kernel;
    kernel.vertices = clean_ring(std::move(ring), polygon.length_tolerance());
    kernel.area = kernel.vertices.size() >= 3 ? std::max(0.0, signed_area(kernel.vertices)) : 0.0;
    return kernel;
}

bool is_strictly_star_shaped(const BoundaryPolygon& polygon, const KernelPolygon& kernel) {
    return kernel.area > polygon.area_tolerance();
}

bool is_strictly_star_shaped(const BoundaryPolygon& polygon) {
    return is_strictly_star_shaped(polygon, compute_kernel(polygon));
}

bool in_open_kernel(const BoundaryPolygon& polygon, Vec2 p) {
    const auto& pts = polygon.points();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (side(pts[k], pts[(k + 1) % pts.size()], p) <= polygon.length_tolerance()) return false;
    }
    return true;
}

Vec2 select_eye(const BoundaryPolygon& polygon) {
    const KernelPolygon kernel = compute_kernel(polygon);
    if (!is_strictly_star_shaped(polygon, kernel)) {
        throw Error(ErrorCode::not_star_shaped, "polygon kernel has empty interior");
    }
    return kernel.centroid();
}

EyeCoefficients eye_coefficients(const BoundaryPolygon& polygon, Vec2 eye) {
    const auto& pts = polygon.points();
    const std::size_t n = pts.size();
    const std::vector<Vec2> hull = convex_hull(pts);
    for (std::size_t k = 0; k < hull.size(); ++k) {
        if (side(hull[k], hull[(k + 1) % hull.size()], eye) <= polygon.length_tolerance()) {
            throw Error(ErrorCode::eye_outside_hull, "eye is not in the interior of the polygon's convex hull");
        }
    }
    std::vector<std::size_t> hull_index(hull.size());
    for (std::size_t k = 0; k < hull.size(); ++k) {
        hull_index[k] = static_cast<std::size_t>(std::find(pts.begin(), pts.end(), hull[k]) - pts.begin());
    }

    Vec2 center;
    for (const Vec2& p : pts) center = center + p;
    center = center / static_cast<double>(n);

    double t = 0.9;
    for (int iteration = 0; iteration < 60; ++iteration, t = 0.5 * (1.0 + t)) {
        const Vec2 target = (eye - (1.0 - t) * center) / t;
        for (std::size_t k = 1; k + 1 < hull.size(); ++k) {
            Barycentric bc = barycentric(target, hull[0], hull[k], hull[k + 1]);
            constexpr double slack = -1e-14;
            if (bc.u < slack || bc.v < slack || bc.w < slack) continue;
            bc = {std::max(bc.u, 0.0), std::max(bc.v, 0.0), std::max(bc.w, 0.0)};
            const double total = bc.u + bc.v + bc.w;
            EyeCoefficients result;
            result.lambda.assign(n, (1.0 - t) / static_cast<double>(n));
            result.lambda[hull_index[0]] += t * bc.u / total;
            result.lambda[hull_index[k]] += t * bc.v / total;
            result.lambda[hull_index[k + 1]] += t * bc.w / total;
            double sum = 0.0;
            for (double l : result.lambda) sum += l;
            for (double& l : result.lambda) l /= sum;
            return result;
        }
    }
    throw Error(ErrorCode::eye_outside_hull, "could not express the eye as a strictly positive combination");
}

std::vector<std::size_t> reflex_vertices(const BoundaryPolygon& polygon) {
    std::vector<std::size_t> reflex;
    for (std::size_t k = 0; k < polygon.size(); ++k) {
        if (turn(polygon.points(), k) < 0) reflex.push_back(k);
    }
    return reflex;
}

bool is_convex(const BoundaryPolygon& polygon) {
    for (std::size_t k = 0; k < polygon.size(); ++k) {
        if (turn(polygon.points(), k) < 0) return false;
    }
    return true;
}

}  // namespace starembed
