#pragma once

#include <vector>

#include "geometry.hpp"

namespace starembed {

// Relative tolerance for every geometric predicate on a polygon.
inline constexpr double relative_tolerance = 1e-12;

// Simple, counterclockwise polygon without collinear consecutive vertices.
class BoundaryPolygon {
public:
    // Throws Error(invalid_polygon) when the ring violates the invariants.
    static BoundaryPolygon make(std::vector<Vec2> points);

    const std::vector<Vec2>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const Vec2& operator[](std::size_t k) const { return points_[k]; }
    double diameter() const { return diameter_; }
    double length_tolerance() const { return relative_tolerance * diameter_; }
    double area_tolerance() const { return relative_tolerance * diameter_ * diameter_; }

    bool contains(Vec2 p) const;  // strict interior

private:
    std::vector<Vec2> points_;
    double diameter_ = 0.0;
};

struct KernelPolygon {
    std::vector<Vec2> vertices;  // counterclockwise, may be empty
    double area = 0.0;

    Vec2 centroid() const;
};

// Intersection of the inner half-planes of all polygon edges.
KernelPolygon compute_kernel(const BoundaryPolygon& polygon);

bool is_strictly_star_shaped(const BoundaryPolygon& polygon);
bool is_strictly_star_shaped(const BoundaryPolygon& polygon, const KernelPolygon& kernel);

// True if p lies in the open kernel, at least length_tolerance() inside every edge line.
bool in_open_kernel(const BoundaryPolygon& polygon, Vec2 p);

// Centroid of the kernel. Throws Error(not_star_shaped).
Vec2 select_eye(const BoundaryPolygon& polygon);

struct EyeCoefficients {
    std::vector<double> lambda;  // one per boundary vertex, all > 0, sum 1
};

// Strictly positive convex weights reproducing `eye` from the polygon
// vertices. Throws Error(eye_outside_hull).
EyeCoefficients eye_coefficients(const BoundaryPolygon& polygon, Vec2 eye);

std::vector<std::size_t> reflex_vertices(const BoundaryPolygon& polygon);

bool is_convex(const BoundaryPolygon& polygon);

}  // namespace starembed
