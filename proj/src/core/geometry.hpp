#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace starembed {

using Index = std::size_t;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Twice the signed area of triangle (a, b, c); positive when counterclockwise.
constexpr double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

// Shoelace signed area; positive for counterclockwise rings.
double signed_area(std::span<const Vec2> ring);

// Largest pairwise distance.
double diameter(std::span<const Vec2> points);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

// Zero when the closed segments intersect.
double segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

// Andrew's monotone chain; counterclockwise, collinear points dropped.
std::vector<Vec2> convex_hull(std::span<const Vec2> points);

// Barycentric coordinates of p with respect to triangle (a, b, c).
struct Barycentric {
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;
};
Barycentric barycentric(Vec2 p, Vec2 a, Vec2 b, Vec2 c);

}  // namespace starembed
