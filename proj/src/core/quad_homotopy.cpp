#include "quad_homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"

namespace starembed {
namespace {

// Interior angle at `at` of a counterclockwise ring with neighbors prev, next.
double interior_angle(Vec2 prev, Vec2 at, Vec2 next) {
    const Vec2 a = next - at;
    const Vec2 b = prev - at;
    double theta = std::atan2(cross(a, b), dot(a, b));
    if (theta < 0) theta += 2.0 * std::numbers::pi;
    return theta;
}

void require_general_position(const std::array<Vec2, 4>& pts, const char* which) {
    const double d = diameter(pts);
    const double tol = relative_tolerance * d * d;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            for (int k = j + 1; k < 4; ++k) {
                if (std::abs(orient(pts[i], pts[j], pts[k])) <= tol) {
                    throw Error(ErrorCode::degenerate_correspondence,
                                std::string(which) + " quadrilateral has three collinear points");
                }
            }
        }
    }
}

}  // namespace

ProjectiveTransform::ProjectiveTransform(const std::array<double, 9>& coefficients) : h_(coefficients) {
    double largest = 0.0;
    double signed_largest = 0.0;
    for (double c : h_) {
        if (std::abs(c) > largest) {
            largest = std::abs(c);
            signed_largest = c;
        }
    }
    const double scale = std::abs(h_[8]) > 1e-12 * largest ? h_[8] : signed_largest;
    if (scale != 0.0) {
        for (double& c : h_) c /= scale;
    }
}

ProjectiveTransform ProjectiveTransform::identity() { return ProjectiveTransform({1, 0, 0, 0, 1, 0, 0, 0, 1}); }

double ProjectiveTransform::determinant() const {
    const auto& h = h_;
    return h[0] * (h[4] * h[8] - h[5] * h[7]) - h[1] * (h[3] * h[8] - h[5] * h[6]) +
           h[2] * (h[3] * h[7] - h[4] * h[6]);
}

double ProjectiveTransform::homogeneous_w(Vec2 p) const { return h_[6] * p.x + h_[7] * p.y + h_[8]; }

Vec2 ProjectiveTransform::apply(Vec2 p) const {
    const double w = homogeneous_w(p);
    if (!(std::abs(w) >= infinity_guard)) {
        throw Error(ErrorCode::point_at_infinity, "point maps to the line at infinity");
    }
    return {(h_[0] * p.x + h_[1] * p.y + h_[2]) / w, (h_[3] * p.x + h_[4] * p.y + h_[5]) / w};
}

ProjectiveTransform ProjectiveTransform::inverse() const {
    const auto& h = h_;
    // Adjugate; the scale is irrelevant.
    return ProjectiveTransform({h[4] * h[8] - h[5] * h[7], h[2] * h[7] - h[1] * h[8], h[1] * h[5] - h[2] * h[4],
                                h[5] * h[6] - h[3] * h[8], h[0] * h[8] - h[2] * h[6], h[2] * h[3] - h[0] * h[5],
                                h[3] * h[7] - h[4] * h[6], h[1] * h[6] - h[0] * h[7], h[0] * h[4] - h[1] * h[3]});
}

ProjectiveTransform operator*(const ProjectiveTransform& a, const ProjectiveTransform& b) {
    std::array<double, 9> c{};
    for (int r = 0; r < 3; ++r) {
        for (int k = 0; k < 3; ++k) {
            for (int s = 0; s < 3; ++s) c[3 * r + k] += a.h_[3 * r + s] * b.h_[3 * s + k];
        }
    }
    return ProjectiveTransform(c);
}

ProjectiveTransform projective_from_quads(const std::array<Vec2, 4>& src, const std::array<Vec2, 4>& dst) {
    require_general_position(src, "source");
    require_general_position(dst, "target");
    Eigen::Matrix<double, 8, 8> a = Eigen::Matrix<double, 8, 8>::Zero();
    Eigen::Matrix<double, 8, 1> rhs;
    for (int k = 0; k < 4; ++k) {
        const Vec2 p = src[k];
        const Vec2 q = dst[k];
        a.row(2 * k) << p.x, p.y, 1, 0, 0, 0, -p.x * q.x, -p.y * q.x;
        a.row(2 * k + 1) << 0, 0, 0, p.x, p.y, 1, -p.x * q.y, -p.y * q.y;
        rhs[2 * k] = q.x;
        rhs[2 * k + 1] = q.y;
    }
    const Eigen::Matrix<double, 8, 1> h = a.partialPivLu().solve(rhs);
    ProjectiveTransform phi({h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], 1.0});
    if (!std::isfinite(phi.determinant()) || std::abs(phi.determinant()) < 1e-12) {
        throw Error(ErrorCode::degenerate_correspondence, "correspondence system is singular");
    }
    return phi;
}

Embedding transport_embedding(const ProjectiveTransform& phi, const Embedding& embedding) {
    Embedding out = embedding;
    for (Vec2& p : out.coordinates) p = phi.apply(p);
    return out;
}

QuadInstance QuadInstance::make(std::shared_ptr<const Triangulation> mesh, const BoundaryPolygon& polygon) {
    if (polygon.size() != 4 || mesh->boundary_count() != 4) {
        throw Error(ErrorCode::invalid_argument, "quadrilateral instance needs exactly four boundary vertices");
    }
    const auto reflex = reflex_vertices(polygon);
    if (reflex.size() != 1) {
        throw Error(ErrorCode::invalid_argument, "quadrilateral must have exactly one reflex vertex");
    }
    QuadInstance q;
    q.mesh_ = std::move(mesh);
    q.polygon_ = polygon;
    q.reflex_slot_ = reflex.front();
    return q;
}

std::array<Vec2, 3> QuadInstance::hull_triangle() const {
    std::array<Vec2, 3> hull;
    for (std::size_t k = 1; k <= 3; ++k) hull[k - 1] = polygon_[(reflex_slot_ + k) % 4];
    return hull;
}

std::array<Vec2, 4> QuadInstance::quad(Vec2 reflex) const {
    std::array<Vec2, 4> q;
    for (std::size_t k = 0; k < 4; ++k) q[k] = k == reflex_slot_ ? reflex : polygon_[k];
    return q;
}

bool QuadInstance::admissible(Vec2 reflex) const {
    const auto hull = hull_triangle();
    const double tol = polygon_.length_tolerance();
    for (int k = 0; k < 3; ++k) {
        const Vec2 a = hull[k];
        const Vec2 b = hull[(k + 1) % 3];
        if (!(orient(a, b, reflex) / distance(a, b) > tol)) return false;
    }
    const Vec2 next = polygon_[(reflex_slot_ + 1) % 4];
    const Vec2 prev = polygon_[(reflex_slot_ + 3) % 4];
    return interior_angle(prev, reflex, next) > std::numbers::pi + 1e-9;
}

BoundaryPolygon QuadInstance::polygon_at(Vec2 reflex) const {
    if (!admissible(reflex)) {
        throw Error(ErrorCode::target_not_reflex, "reflex vertex target (" + std::to_string(reflex.x) + ", " +
                                                      std::to_string(reflex.y) + ") is not inside the hull triangle");
    }
    const auto q = quad(reflex);
    return BoundaryPolygon::make({q.begin(), q.end()});
}

SectionResult section(const QuadInstance& base, const Embedding& base_embedding, Vec2 target) {
    const BoundaryPolygon polygon = base.polygon_at(target);
    SectionResult result;
    if (target == base.reflex_position()) {
        result.embedding = base_embedding;
    } else {
        const auto src = base.quad(base.reflex_position());
        const auto dst = base.quad(target);
        const ProjectiveTransform phi = projective_from_quads(src, dst);
        for (int k = 0; k < 4; ++k) {
            result.correspondence_residual = std::max(result.correspondence_residual, distance(phi.apply(src[k]), dst[k]));
        }
        result.embedding = transport_embedding(phi, base_embedding);
        const Triangulation& mesh = *base_embedding.mesh;
        for (std::size_t k = 0; k < 4; ++k) result.embedding.coordinates[mesh.boundary_cycle()[k]] = dst[k];
    }
    result.embedding.metadata.method = "section";
    result.report = validate(result.embedding, polygon);
    return result;
}

HomotopyPath homotopy_path(const QuadInstance& base, const Embedding& base_embedding, const std::vector<Vec2>& path) {
    HomotopyPath out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        try {
            out.frames.push_back(section(base, base_embedding, path[i]));
        } catch (const Error& e) {
            throw PathError(e.code(), "path sample " + std::to_string(i) + ": " + e.what(), i);
        }
        if (i > 0) {
            const auto& a = out.frames[i - 1].embedding.coordinates;
            const auto& b = out.frames[i].embedding.coordinates;
            for (std::size_t v = 0; v < a.size(); ++v) out.max_displacement = std::max(out.max_displacement, distance(a[v], b[v]));
        }
    }
    return out;
}

}  // namespace starembed
