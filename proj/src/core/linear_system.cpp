#include "linear_system.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/SparseLU>

#include "embedding.hpp"
#include "errors.hpp"

namespace starembed {

double relative_residual(const LinearSystem& system, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double rx = (system.matrix * x - system.bx).squaredNorm();
    const double ry = (system.matrix * y - system.by).squaredNorm();
    const double b = system.bx.squaredNorm() + system.by.squaredNorm();
    const double r = std::sqrt(rx + ry);
    return b > 0.0 ? r / std::sqrt(b) : r;
}

InteriorSolution solve(const LinearSystem& system, double tolerance) {
    const auto n = static_cast<Eigen::Index>(system.size());
    if (system.matrix.rows() != n || system.matrix.cols() != n || system.bx.size() != n || system.by.size() != n) {
        throw Error(ErrorCode::dimension_mismatch, "linear system blocks do not match its size");
    }
    InteriorSolution out;
    if (n == 0) return out;

    Eigen::SparseLU<SparseMatrix> lu;
    lu.analyzePattern(system.matrix);
    lu.factorize(system.matrix);
    if (lu.info() != Eigen::Success) {
        throw Error(ErrorCode::solve_failed, "sparse factorization failed: " + lu.lastErrorMessage());
    }
    Eigen::VectorXd x = lu.solve(system.bx);
    Eigen::VectorXd y = lu.solve(system.by);
    double residual = relative_residual(system, x, y);
    for (int step = 0; step < 3 && residual > tolerance; ++step) {
        x += lu.solve(system.bx - system.matrix * x);
        y += lu.solve(system.by - system.matrix * y);
        residual = relative_residual(system, x, y);
    }
    if (!std::isfinite(residual) || residual > tolerance) {
        std::ostringstream msg;
        msg << "relative residual " << residual << " exceeds tolerance " << tolerance;
        throw Error(ErrorCode::solve_failed, msg.str());
    }
    out.residual = residual;
    out.interior.resize(system.interior_count);
    for (std::size_t i = 0; i < system.interior_count; ++i) {
        out.interior[i] = {x[static_cast<Eigen::Index>(i)], y[static_cast<Eigen::Index>(i)]};
    }
    return out;
}

Embedding make_embedding(std::shared_ptr<const Triangulation> mesh, const BoundaryPolygon& polygon,
                         const std::vector<Vec2>& interior, SolverMetadata metadata) {
    if (polygon.size() != mesh->boundary_count() || interior.size() != mesh->interior_count()) {
        throw Error(ErrorCode::dimension_mismatch, "coordinates do not match the triangulation");
    }
    Embedding embedding;
    embedding.coordinates.resize(mesh->vertex_count());
    for (std::size_t k = 0; k < mesh->boundary_count(); ++k) {
        embedding.coordinates[mesh->boundary_cycle()[k]] = polygon[k];
    }
    for (std::size_t i = 0; i < mesh->interior_count(); ++i) {
        embedding.coordinates[mesh->interior_vertices()[i]] = interior[i];
    }
    embedding.mesh = std::move(mesh);
    embedding.metadata = std::move(metadata);
    return embedding;
}

}  // namespace starembed
