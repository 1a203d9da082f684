#pragma once

#include <array>
#include <memory>
#include <vector>

#include "embedding.hpp"
#include "errors.hpp"
#include "polygon.hpp"
#include "validator.hpp"

namespace starembed {

// Plane homography as a row-major 3x3 grid, defined up to scale.
class ProjectiveTransform {
public:
    // Scales so the bottom-right entry is 1, or, when that entry is near zero,
    // so the largest-magnitude entry is +1.
    explicit ProjectiveTransform(const std::array<double, 9>& coefficients);

    static ProjectiveTransform identity();

    const std::array<double, 9>& coefficients() const { return h_; }
    double determinant() const;

    // Third homogeneous coordinate of the image of p.
    double homogeneous_w(Vec2 p) const;

    // Throws Error(point_at_infinity) when |w| < 1e-9.
    Vec2 apply(Vec2 p) const;

    ProjectiveTransform inverse() const;

    // (a * b)(p) = a(b(p)).
    friend ProjectiveTransform operator*(const ProjectiveTransform& a, const ProjectiveTransform& b);

private:
    std::array<double, 9> h_;
};

inline constexpr double infinity_guard = 1e-9;

// The homography sending src[k] to dst[k] for k = 0..3, from the 8x8
// correspondence system. Throws Error(degenerate_correspondence) when three
// points of either quadruple are collinear.
ProjectiveTransform projective_from_quads(const std::array<Vec2, 4>& src, const std::array<Vec2, 4>& dst);

// Maps every vertex through phi. Throws Error(point_at_infinity).
Embedding transport_embedding(const ProjectiveTransform& phi, const Embedding& embedding);

// Non-convex quadrilateral: three hull vertices plus one reflex vertex that
// moves inside the hull triangle.
class QuadInstance {
public:
    // Throws Error(invalid_argument) unless the polygon has four vertices with
    // exactly one reflex vertex.
    static QuadInstance make(std::shared_ptr<const Triangulation> mesh, const BoundaryPolygon& polygon);

    const std::shared_ptr<const Triangulation>& mesh() const { return mesh_; }
    const BoundaryPolygon& base_polygon() const { return polygon_; }
    std::size_t reflex_slot() const { return reflex_slot_; }
    Vec2 reflex_position() const { return polygon_[reflex_slot_]; }
    // Hull vertices in boundary order, skipping the reflex slot.
    std::array<Vec2, 3> hull_triangle() const;

    // Quadrilateral in boundary-slot order with the reflex vertex at `reflex`.
    std::array<Vec2, 4> quad(Vec2 reflex) const;

    // Strictly inside the hull triangle with an interior angle above pi + 1e-9.
    bool admissible(Vec2 reflex) const;

    // Throws Error(target_not_reflex) for inadmissible positions.
    BoundaryPolygon polygon_at(Vec2 reflex) const;

private:
    std::shared_ptr<const Triangulation> mesh_;
    BoundaryPolygon polygon_;
    std::size_t reflex_slot_ = 0;
};

struct SectionResult {
    Embedding embedding;
    ValidityReport report;
    double correspondence_residual = 0.0;  // max |phi(src_k) - dst_k| before boundary snapping
};

// Transports a valid embedding of the base quadrilateral into the fiber over
// `target`. Boundary vertices are snapped to the exact target quadrilateral.
// Throws Error(target_not_reflex), Error(point_at_infinity).
SectionResult section(const QuadInstance& base, const Embedding& base_embedding, Vec2 target);

class PathError : public Error {
public:
    PathError(ErrorCode code, const std::string& message, std::size_t index)
        : Error(code, message), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

struct HomotopyPath {
    std::vector<SectionResult> frames;
    double max_displacement = 0.0;  // largest vertex move between consecutive frames
};

// Section at every path point. Throws PathError carrying the first bad index.
HomotopyPath homotopy_path(const QuadInstance& base, const Embedding& base_embedding, const std::vector<Vec2>& path);

}  // namespace starembed
