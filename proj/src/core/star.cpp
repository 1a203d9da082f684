#include "star.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"

namespace starembed {
namespace {

void require_no_dividing_edges(const Triangulation& mesh) {
    const auto dividing = find_dividing_edges(mesh);
    if (!dividing.empty()) {
        throw Error(ErrorCode::dividing_edge_present, "edge (" + std::to_string(dividing.front().a) + ", " +
                                                          std::to_string(dividing.front().b) +
                                                          ") joins two boundary vertices through the interior");
    }
}

std::string format_number(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::epsilon_out_of_range, "epsilon must lie in (0, 1), got " + format_number(epsilon));
    }
}

Vec2 combine(const BoundaryPolygon& polygon, const std::vector<double>& lambda) {
    Vec2 p;
    for (std::size_t j = 0; j < lambda.size(); ++j) p = p + lambda[j] * polygon[j];
    return p;
}

}  // namespace

double BoundaryCouplingMatrix::total() const { return matrix.sum(); }

std::vector<double> BoundaryCouplingMatrix::column_sums() const {
    std::vector<double> sums(static_cast<std::size_t>(matrix.cols()), 0.0);
    for (Eigen::Index c = 0; c < matrix.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(matrix, c); it; ++it) sums[static_cast<std::size_t>(it.col())] += it.value();
    }
    return sums;
}

std::vector<double> BoundaryCouplingMatrix::row_sums() const {
    std::vector<double> sums(static_cast<std::size_t>(matrix.rows()), 0.0);
    for (Eigen::Index c = 0; c < matrix.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(matrix, c); it; ++it) sums[static_cast<std::size_t>(it.row())] += it.value();
    }
    return sums;
}

BoundaryCouplingMatrix build_coupling(const Triangulation& mesh, const std::optional<EyeCoefficients>& lambda) {
    if (mesh.interior_count() == 0) {
        throw Error(ErrorCode::invalid_argument, "triangulation has no interior vertices");
    }
    require_no_dividing_edges(mesh);
    const auto& coupling_edges = mesh.interior_boundary_edges();
    BoundaryCouplingMatrix w;
    std::vector<Eigen::Triplet<double>> entries;
    if (!lambda) {
        w.flavor = CouplingFlavor::uniform;
        const double value = 1.0 / static_cast<double>(coupling_edges.size());
        for (const CouplingEdge& e : coupling_edges) {
            entries.emplace_back(static_cast<Eigen::Index>(mesh.interior_slot(e.interior)),
                                 static_cast<Eigen::Index>(mesh.boundary_slot(e.boundary)), value);
        }
    } else {
        w.flavor = CouplingFlavor::eye_targeted;
        if (lambda->lambda.size() != mesh.boundary_count()) {
            throw Error(ErrorCode::dimension_mismatch, "need one eye coefficient per boundary vertex");
        }
        for (std::size_t j = 0; j < mesh.boundary_count(); ++j) {
            const Index b = mesh.boundary_cycle()[j];
            if (mesh.degree(b) <= 2 && lambda->lambda[j] > 0.0) {
                throw Error(ErrorCode::degree_two_boundary_vertex,
                            "boundary vertex " + std::to_string(b) + " has no interior neighbor");
            }
        }
        for (const CouplingEdge& e : coupling_edges) {
            const std::size_t j = mesh.boundary_slot(e.boundary);
            const double value = lambda->lambda[j] / static_cast<double>(mesh.degree(e.boundary) - 2);
            entries.emplace_back(static_cast<Eigen::Index>(mesh.interior_slot(e.interior)),
                                 static_cast<Eigen::Index>(j), value);
        }
    }
    w.matrix.resize(static_cast<Eigen::Index>(mesh.interior_count()),
                    static_cast<Eigen::Index>(mesh.boundary_count()));
    w.matrix.setFromTriplets(entries.begin(), entries.end());
    return w;
}

SparseMatrix assemble_s_block(const Triangulation& mesh, const BoundaryCouplingMatrix& coupling, double epsilon) {
    const std::size_t ni = mesh.interior_count();
    const auto& ii_edges = mesh.interior_interior_edges();
    // With no interior-interior edges the first energy term is vacuous.
    const double spring = ii_edges.empty() ? 0.0 : (1.0 - epsilon) / static_cast<double>(ii_edges.size());

    std::vector<double> diagonal(ni, 0.0);
    std::vector<Eigen::Triplet<double>> entries;
    for (const Edge& e : ii_edges) {
        const auto a = static_cast<Eigen::Index>(mesh.interior_slot(e.a));
        const auto b = static_cast<Eigen::Index>(mesh.interior_slot(e.b));
        entries.emplace_back(a, b, -spring);
        entries.emplace_back(b, a, -spring);
        diagonal[static_cast<std::size_t>(a)] += spring;
        diagonal[static_cast<std::size_t>(b)] += spring;
    }
    const std::vector<double> rows = coupling.row_sums();
    for (std::size_t i = 0; i < ni; ++i) {
        entries.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i),
                             diagonal[i] + epsilon * rows[i]);
    }
    SparseMatrix s(static_cast<Eigen::Index>(ni), static_cast<Eigen::Index>(ni));
    s.setFromTriplets(entries.begin(), entries.end());
    return s;
}

EpsilonSystem assemble_epsilon_system(const Triangulation& mesh, const BoundaryPolygon& polygon,
                                      const BoundaryCouplingMatrix& coupling, double epsilon) {
    require_epsilon(epsilon);
    const std::size_t ni = mesh.interior_count();
    const std::size_t nb = mesh.boundary_count();
    if (polygon.size() != nb || static_cast<std::size_t>(coupling.matrix.rows()) != ni ||
        static_cast<std::size_t>(coupling.matrix.cols()) != nb) {
        throw Error(ErrorCode::dimension_mismatch, "coupling matrix or polygon does not match the triangulation");
    }
    EpsilonSystem out;
    out.epsilon = epsilon;
    out.s_block = assemble_s_block(mesh, coupling, epsilon);

    const auto n = static_cast<Eigen::Index>(ni + nb);
    std::vector<Eigen::Triplet<double>> entries;
    for (Eigen::Index c = 0; c < out.s_block.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(out.s_block, c); it; ++it) {
            entries.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (Eigen::Index c = 0; c < coupling.matrix.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(coupling.matrix, c); it; ++it) {
            entries.emplace_back(it.row(), static_cast<Eigen::Index>(ni) + it.col(), -epsilon * it.value());
        }
    }
    LinearSystem& system = out.system;
    system.interior_count = ni;
    system.boundary_count = nb;
    system.bx = Eigen::VectorXd::Zero(n);
    system.by = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < nb; ++k) {
        const auto row = static_cast<Eigen::Index>(ni + k);
        entries.emplace_back(row, row, 1.0);
        system.bx[row] = polygon[k].x;
        system.by[row] = polygon[k].y;
    }
    system.matrix.resize(n, n);
    system.matrix.setFromTriplets(entries.begin(), entries.end());
    return out;
}

double epsilon_solve_tolerance(double epsilon, double base) { return std::max(base, 1e-16 / epsilon); }

Embedding solve_at_epsilon(std::shared_ptr<const Triangulation> mesh, const BoundaryPolygon& polygon,
                           const BoundaryCouplingMatrix& coupling, double epsilon, double base_tolerance) {
    const EpsilonSystem eps_system = assemble_epsilon_system(*mesh, polygon, coupling, epsilon);
    InteriorSolution solution = solve(eps_system.system, epsilon_solve_tolerance(epsilon, base_tolerance));
    SolverMetadata meta;
    meta.method = "epsilon";
    meta.residual = solution.residual;
    meta.epsilon = epsilon;
    return make_embedding(std::move(mesh), polygon, solution.interior, std::move(meta));
}

Vec2 limit_point(const BoundaryPolygon& polygon, const BoundaryCouplingMatrix& coupling) {
    return combine(polygon, coupling.column_sums());
}

Vec2 limit_point_uniform(const Triangulation& mesh, const BoundaryPolygon& polygon) {
    require_no_dividing_edges(mesh);
    const double mb = static_cast<double>(mesh.interior_boundary_edges().size());
    std::vector<double> lambda(mesh.boundary_count());
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        lambda[j] = (static_cast<double>(mesh.degree(mesh.boundary_cycle()[j])) - 2.0) / mb;
    }
    return combine(polygon, lambda);
}

SpectralReport spectral_report(const Triangulation& mesh, const BoundaryCouplingMatrix& coupling, double epsilon,
                               std::size_t budget) {
    require_epsilon(epsilon);
    const std::size_t ni = mesh.interior_count();
    if (ni > budget) {
        throw Error(ErrorCode::budget_exceeded, std::to_string(ni) + " interior vertices exceed the dense budget of " +
                                                    std::to_string(budget));
    }
    const Eigen::MatrixXd s = Eigen::MatrixXd(assemble_s_block(mesh, coupling, epsilon));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
    if (eig.info() != Eigen::Success) {
        throw Error(ErrorCode::solve_failed, "symmetric eigendecomposition failed");
    }
    const Eigen::VectorXd& values = eig.eigenvalues();
    const Eigen::MatrixXd& vectors = eig.eigenvectors();
    const auto n = static_cast<Eigen::Index>(ni);

    SpectralReport report;
    report.epsilon = epsilon;
    report.lambda_min = values[0];
    report.lambda_min_over_epsilon = values[0] / epsilon;
    report.lambda_second = n > 1 ? values[1] : 0.0;

    Eigen::MatrixXd deviation = -Eigen::MatrixXd::Ones(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        deviation += (epsilon / values[k]) * vectors.col(k) * vectors.col(k).transpose();
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dev_eig(deviation, Eigen::EigenvaluesOnly);
    report.inverse_deviation = dev_eig.eigenvalues().cwiseAbs().maxCoeff();

    Eigen::VectorXd v1 = vectors.col(0);
    if (v1.sum() < 0) v1 = -v1;
    const double uniform = 1.0 / std::sqrt(static_cast<double>(ni));
    report.eigenvector_deviation = (v1.array() - uniform).abs().maxCoeff();
    return report;
}

double energy_value(const Embedding& embedding, const BoundaryCouplingMatrix& coupling, double epsilon) {
    const Triangulation& mesh = *embedding.mesh;
    const auto& xy = embedding.coordinates;
    auto length2 = [&](Index a, Index b) {
        const Vec2 d = xy[a] - xy[b];
        return dot(d, d);
    };
    double inner = 0.0;
    for (const Edge& e : mesh.interior_interior_edges()) inner += length2(e.a, e.b);
    double outer = 0.0;
    for (const CouplingEdge& e : mesh.interior_boundary_edges()) {
        const double w = coupling.matrix.coeff(static_cast<Eigen::Index>(mesh.interior_slot(e.interior)),
                                               static_cast<Eigen::Index>(mesh.boundary_slot(e.boundary)));
        outer += w * length2(e.interior, e.boundary);
    }
    const std::size_t mi = mesh.interior_interior_edges().size();
    const double inner_term = mi == 0 ? 0.0 : (1.0 - epsilon) / (2.0 * static_cast<double>(mi)) * inner;
    return inner_term + 0.5 * epsilon * outer;
}

EmbedResult star_embed(std::shared_ptr<const Triangulation> mesh, const BoundaryPolygon& polygon,
                       const StarOptions& options) {
    require_epsilon(options.initial_epsilon);
    if (options.max_halvings < 0) {
        throw Error(ErrorCode::invalid_argument, "max_halvings must be non-negative");
    }
    if (polygon.size() != mesh->boundary_count()) {
        throw Error(ErrorCode::dimension_mismatch, "polygon does not match the boundary cycle");
    }
    if (mesh->interior_count() == 0) {
        throw Error(ErrorCode::invalid_argument, "triangulation has no interior vertices");
    }
    const KernelPolygon kernel = compute_kernel(polygon);
    if (!is_strictly_star_shaped(polygon, kernel)) {
        throw Error(ErrorCode::not_star_shaped, "boundary polygon is not strictly star-shaped");
    }
    require_no_dividing_edges(*mesh);

    Vec2 eye = kernel.centroid();
    if (options.eye) {
        if (!in_open_kernel(polygon, *options.eye)) {
            throw Error(ErrorCode::eye_outside_kernel, "requested eye is not in the open kernel");
        }
        eye = *options.eye;
    }
    const BoundaryCouplingMatrix coupling = build_coupling(*mesh, eye_coefficients(polygon, eye));

    EmbedResult attempt;
    for (int halvings = 0; halvings <= options.max_halvings; ++halvings) {
        const double epsilon = std::ldexp(options.initial_epsilon, -halvings);
        attempt.embedding = solve_at_epsilon(mesh, polygon, coupling, epsilon, options.base_tolerance);
        attempt.embedding.metadata.method = "star";
        attempt.embedding.metadata.halvings = halvings;
        attempt.embedding.metadata.eye = eye;
        attempt.report = validate(attempt.embedding, polygon);
        if (attempt.report.valid) return attempt;
    }
    throw HalvingExhausted("no valid embedding after " + std::to_string(options.max_halvings) + " halvings",
                           std::move(attempt));
}

}  // namespace starembed
