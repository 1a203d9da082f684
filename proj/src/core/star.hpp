#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "embedding.hpp"
#include "errors.hpp"
#include "linear_system.hpp"
#include "mesh.hpp"
#include "polygon.hpp"
#include "tutte.hpp"
#include "validator.hpp"

namespace starembed {

enum class CouplingFlavor { uniform, eye_targeted };

// N_I x N_B matrix W supported on the interior-boundary edges. Rows are
// interior slots, columns boundary slots.
struct BoundaryCouplingMatrix {
    CouplingFlavor flavor = CouplingFlavor::uniform;
    SparseMatrix matrix;

    double total() const;
    std::vector<double> column_sums() const;
    std::vector<double> row_sums() const;
};

// Uniform flavor when `lambda` is empty: 1/M_B on every interior-boundary edge.
// Eye-targeted flavor otherwise: lambda_j / (deg(b_j) - 2).
// Throws Error(dividing_edge_present), Error(degree_two_boundary_vertex),
// Error(dimension_mismatch), Error(invalid_argument) when there are no
// interior vertices.
BoundaryCouplingMatrix build_coupling(const Triangulation& mesh, const std::optional<EyeCoefficients>& lambda);

// Critical-point system of the epsilon energy:
//   M(eps) = [ S(eps)  -eps W ]
//            [   0       Id   ]
struct EpsilonSystem {
    double epsilon = 0.0;
    SparseMatrix s_block;  // N_I x N_I, symmetric
    LinearSystem system;
};

// Throws Error(epsilon_out_of_range) unless 0 < eps < 1.
EpsilonSystem assemble_epsilon_system(const Triangulation& mesh, const BoundaryPolygon& polygon,
                                      const BoundaryCouplingMatrix& coupling, double epsilon);

// The S(eps) block alone.
SparseMatrix assemble_s_block(const Triangulation& mesh, const BoundaryCouplingMatrix& coupling, double epsilon);

// Residual tolerance used at a given epsilon: the condition number of S grows like 1/eps.
double epsilon_solve_tolerance(double epsilon, double base = default_solve_tolerance);

Embedding solve_at_epsilon(std::shared_ptr<const Triangulation> mesh, const BoundaryPolygon& polygon,
                           const BoundaryCouplingMatrix& coupling, double epsilon,
                           double base_tolerance = default_solve_tolerance);

// Limit of the interior vertices as eps -> 0: sum_j lambda_j b_j with lambda_j
// the column sums of W.
Vec2 limit_point(const BoundaryPolygon& polygon, const BoundaryCouplingMatrix& coupling);

// Uniform-flavor limit from vertex degrees: lambda_j = (deg(b_j) - 2) / M_B.
// Throws Error(dividing_edge_present).
Vec2 limit_point_uniform(const Triangulation& mesh, const BoundaryPolygon& polygon);

struct SpectralReport {
    double epsilon = 0.0;
    double lambda_min = 0.0;
    double lambda_min_over_epsilon = 0.0;
    double lambda_second = 0.0;          // second-smallest eigenvalue, 0 when N_I = 1
    double inverse_deviation = 0.0;      // || eps S^-1 - ones ||_2
    double eigenvector_deviation = 0.0;  // || v_1 - ones / sqrt(N_I) ||_inf up to sign
};

inline constexpr std::size_t default_spectral_budget = 2000;

// Dense eigendecomposition of S(eps). Throws Error(budget_exceeded).
SpectralReport spectral_report(const Triangulation& mesh, const BoundaryCouplingMatrix& coupling, double epsilon,
                               std::size_t budget = default_spectral_budget);

// (1-eps)/(2 M_I) sum_{E_I^I} L^2 + (eps/2) sum_{E_I^B} w_ij L^2.
double energy_value(const Embedding& embedding, const BoundaryCouplingMatrix& coupling, double epsilon);

struct StarOptions {
    double initial_epsilon = 0.5;
    int max_halvings = 60;
    std::optional<Vec2> eye;  // defaults to the kernel centroid
    double base_tolerance = default_solve_tolerance;
};

class HalvingExhausted : public Error {
public:
    HalvingExhausted(const std::string& message, EmbedResult last)
        : Error(ErrorCode::halving_exhausted, message), last_(std::move(last)) {}

    const EmbedResult& last_attempt() const { return last_; }

private:
    EmbedResult last_;
};

// Solves at eps0, eps0/2, ... and returns the first fully valid embedding.
// Metadata records the accepted epsilon, the number of halvings and the eye.
// Throws Error(not_star_shaped), Error(eye_outside_kernel),
// Error(dividing_edge_present), Error(invalid_argument), HalvingExhausted.
EmbedResult star_embed(std::shared_ptr<const Triangulation> mesh, const BoundaryPolygon& polygon,
                       const StarOptions& options = {});

}  // namespace starembed
