#include "starembed/starembed.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "errors.hpp"
#include "io.hpp"
#include "quad_homotopy.hpp"
#include "star.hpp"
#include "tutte.hpp"

using namespace starembed;
using nlohmann::json;

struct se_problem {
    Problem problem;
};

struct se_embedding {
    Embedding embedding;
    BoundaryPolygon polygon;
    ValidityReport report;
};

struct se_path {
    std::vector<se_embedding> frames;
    std::vector<Vec2> targets;
    std::vector<double> residuals;
    double max_displacement = 0.0;
};

namespace {

thread_local std::string last_error;

se_status fail(se_status status, const std::string& message) {
    last_error = message;
    return status;
}

template <class F>
se_status guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return SE_OK;
    } catch (const Error& e) {
        return fail(static_cast<se_status>(e.code()), std::string(error_code_name(e.code())) + ": " + e.what());
    } catch (const std::bad_alloc&) {
        return fail(SE_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SE_ERR_INTERNAL, e.what());
    }
}

char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

void require(bool condition, const char* what) {
    if (!condition) throw Error(ErrorCode::invalid_argument, what);
}

se_embedding* wrap(EmbedResult result, const BoundaryPolygon& polygon) {
    return new se_embedding{std::move(result.embedding), polygon, std::move(result.report)};
}

WeightScheme weights_for(const Problem& problem, const se_tutte_options& options) {
    switch (options.scheme) {
        case SE_WEIGHTS_UNIFORM: return uniform_weights(*problem.mesh);
        case SE_WEIGHTS_RANDOM: return random_weights(*problem.mesh, options.seed);
        case SE_WEIGHTS_FROM_PROBLEM: break;
    }
    if (problem.options.weights) return make_weights(*problem.mesh, *problem.options.weights);
    return uniform_weights(*problem.mesh);
}

StarOptions star_options_for(const Problem& problem, const se_star_options* options) {
    se_star_options o;
    se_star_options_init(&o);
    if (options) o = *options;
    StarOptions star;
    if (o.initial_epsilon > 0) star.initial_epsilon = o.initial_epsilon;
    if (o.max_halvings >= 0) star.max_halvings = o.max_halvings;
    if (o.tolerance > 0) star.base_tolerance = o.tolerance;
    if (o.use_eye) {
        star.eye = Vec2{o.eye_x, o.eye_y};
    } else if (problem.options.eye) {
        star.eye = problem.options.eye;
    }
    return star;
}

json point_json(Vec2 p) { return json::array({p.x, p.y}); }

}  // namespace

extern "C" {

const char* se_version(void) { return "1.0.0"; }

const char* se_status_name(se_status status) {
    if (status == SE_ERR_INTERNAL) return "InternalError";
    return error_code_name(static_cast<ErrorCode>(status));
}

const char* se_last_error(void) { return last_error.c_str(); }

void se_string_free(char* text) { std::free(text); }

void se_tutte_options_init(se_tutte_options* options) {
    if (!options) return;
    options->scheme = SE_WEIGHTS_FROM_PROBLEM;
    options->seed = 0;
    options->tolerance = 0.0;
}

void se_star_options_init(se_star_options* options) {
    if (!options) return;
    options->initial_epsilon = 0.5;
    options->max_halvings = 60;
    options->use_eye = 0;
    options->eye_x = 0.0;
    options->eye_y = 0.0;
    options->tolerance = 0.0;
}

void se_render_options_init(se_render_options* options) {
    if (!options) return;
    options->canvas = 800;
    options->kernel_overlay = 0;
    options->use_viewport = 0;
    std::fill(std::begin(options->viewport), std::end(options->viewport), 0.0);
}

se_status se_problem_parse(const char* json_text, int strict, se_problem** out) {
    return guarded([&] {
        require(json_text && out, "null argument");
        *out = nullptr;
        *out = new se_problem{parse_problem(json_text, strict != 0)};
    });
}

void se_problem_free(se_problem* problem) { delete problem; }

size_t se_problem_vertex_count(const se_problem* problem) { return problem ? problem->problem.mesh->vertex_count() : 0; }
size_t se_problem_interior_count(const se_problem* problem) {
    return problem ? problem->problem.mesh->interior_count() : 0;
}
size_t se_problem_boundary_count(const se_problem* problem) {
    return problem ? problem->problem.mesh->boundary_count() : 0;
}

se_status se_problem_to_json(const se_problem* problem, char** json_out) {
    return guarded([&] {
        require(problem && json_out, "null argument");
        *json_out = copy_string(write_problem(problem->problem));
    });
}

size_t se_problem_dividing_edge_count(const se_problem* problem) {
    return problem ? find_dividing_edges(*problem->problem.mesh).size() : 0;
}

se_status se_problem_mesh_report(const se_problem* problem, char** json_out) {
    return guarded([&] {
        require(problem && json_out, "null argument");
        const Triangulation& mesh = *problem->problem.mesh;
        const BoundaryPolygon& polygon = problem->problem.polygon;
        json degrees = json::array();
        for (Index v = 0; v < mesh.vertex_count(); ++v) degrees.push_back(mesh.degree(v));
        json dividing = json::array();
        for (const Edge& e : find_dividing_edges(mesh)) dividing.push_back({e.a, e.b});
        json reflex = json::array();
        for (std::size_t slot : reflex_vertices(polygon)) reflex.push_back(mesh.boundary_cycle()[slot]);
        std::size_t excess = 0;
        for (Index b : mesh.boundary_cycle()) excess += mesh.degree(b) - 2;
        const KernelPolygon kernel = compute_kernel(polygon);
        json kernel_vertices = json::array();
        for (const Vec2& p : kernel.vertices) kernel_vertices.push_back(point_json(p));
        json report{{"vertices", mesh.vertex_count()},
                    {"faces", mesh.faces().size()},
                    {"edges", mesh.edges().size()},
                    {"n_interior", mesh.interior_count()},
                    {"n_boundary", mesh.boundary_count()},
                    {"m_interior", mesh.interior_interior_edges().size()},
                    {"m_boundary", mesh.interior_boundary_edges().size()},
                    {"boundary_cycle", mesh.boundary_cycle()},
                    {"degrees", degrees},
                    {"boundary_degree_excess", excess},
                    {"dividing_edges", dividing},
                    {"convex", is_convex(polygon)},
                    {"reflex_vertices", reflex},
                    {"strictly_star_shaped", is_strictly_star_shaped(polygon, kernel)},
                    {"kernel", {{"area", kernel.area}, {"vertices", kernel_vertices}}}};
        if (is_strictly_star_shaped(polygon, kernel)) report["eye"] = point_json(kernel.centroid());
        *json_out = copy_string(report.dump(2) + "\n");
    });
}

se_status se_embed_tutte(const se_problem* problem, const se_tutte_options* options, se_embedding** out) {
    return guarded([&] {
        require(problem && out, "null argument");
        *out = nullptr;
        se_tutte_options o;
        se_tutte_options_init(&o);
        if (options) o = *options;
        const Problem& p = problem->problem;
        const double tol = o.tolerance > 0 ? o.tolerance : default_solve_tolerance;
        *out = wrap(tutte_embed(p.mesh, p.polygon, weights_for(p, o), tol), p.polygon);
    });
}

se_status se_embed_star(const se_problem* problem, const se_star_options* options, se_embedding** out) {
    return guarded([&] {
        require(problem && out, "null argument");
        *out = nullptr;
        const Problem& p = problem->problem;
        try {
            *out = wrap(star_embed(p.mesh, p.polygon, star_options_for(p, options)), p.polygon);
        } catch (const HalvingExhausted& e) {
            *out = wrap(e.last_attempt(), p.polygon);
            throw;
        }
    });
}

se_status se_solve_epsilon(const se_problem* problem, se_coupling_flavor flavor, double epsilon, se_embedding** out) {
    return guarded([&] {
        require(problem && out, "null argument");
        *out = nullptr;
        const Problem& p = problem->problem;
        std::optional<EyeCoefficients> lambda;
        if (flavor == SE_COUPLING_EYE) {
            lambda = eye_coefficients(p.polygon, p.options.eye.value_or(select_eye(p.polygon)));
        }
        const BoundaryCouplingMatrix w = build_coupling(*p.mesh, lambda);
        EmbedResult result{solve_at_epsilon(p.mesh, p.polygon, w, epsilon), {}};
        result.report = validate(result.embedding, p.polygon);
        *out = wrap(std::move(result), p.polygon);
    });
}

se_status se_embedding_parse(const char* json_text, se_embedding** out) {
    return guarded([&] {
        require(json_text && out, "null argument");
        *out = nullptr;
        EmbeddingDocument doc = parse_embedding(json_text);
        ValidityReport report = validate(doc.embedding, doc.polygon);
        *out = new se_embedding{std::move(doc.embedding), std::move(doc.polygon), std::move(report)};
    });
}

void se_embedding_free(se_embedding* embedding) { delete embedding; }

int se_embedding_is_valid(const se_embedding* embedding) { return embedding && embedding->report.valid ? 1 : 0; }

size_t se_embedding_vertex_count(const se_embedding* embedding) {
    return embedding ? embedding->embedding.coordinates.size() : 0;
}

se_status se_embedding_coordinates(const se_embedding* embedding, double* xy, size_t capacity) {
    return guarded([&] {
        require(embedding && xy, "null argument");
        const auto& coords = embedding->embedding.coordinates;
        if (capacity < 2 * coords.size()) throw Error(ErrorCode::dimension_mismatch, "buffer too small");
        for (std::size_t k = 0; k < coords.size(); ++k) {
            xy[2 * k] = coords[k].x;
            xy[2 * k + 1] = coords[k].y;
        }
    });
}

double se_embedding_epsilon(const se_embedding* embedding) {
    if (!embedding || !embedding->embedding.metadata.epsilon) return -1.0;
    return *embedding->embedding.metadata.epsilon;
}

se_status se_embedding_to_json(const se_embedding* embedding, char** json_out) {
    return guarded([&] {
        require(embedding && json_out, "null argument");
        *json_out = copy_string(write_embedding(embedding->embedding, embedding->polygon, embedding->report));
    });
}

se_status se_embedding_render_svg(const se_embedding* embedding, const se_render_options* options, char** svg_out) {
    return guarded([&] {
        require(embedding && svg_out, "null argument");
        se_render_options o;
        se_render_options_init(&o);
        if (options) o = *options;
        SvgOptions svg;
        if (o.canvas > 0) svg.canvas = o.canvas;
        if (o.use_viewport) svg.viewport = Viewport{{o.viewport[0], o.viewport[1]}, {o.viewport[2], o.viewport[3]}};
        if (o.kernel_overlay) svg.kernel = compute_kernel(embedding->polygon);
        svg.report = &embedding->report;
        *svg_out = copy_string(render_svg(embedding->embedding, svg));
    });
}

se_status se_diagnose(const se_problem* problem, se_coupling_flavor flavor, const double* epsilons, size_t count,
                      size_t budget, char** json_out) {
    return guarded([&] {
        require(problem && json_out && (epsilons || count == 0), "null argument");
        const Problem& p = problem->problem;
        const std::size_t limit = budget == 0 ? default_spectral_budget : budget;
        if (p.mesh->interior_count() > limit) {
            throw Error(ErrorCode::budget_exceeded, std::to_string(p.mesh->interior_count()) +
                                                        " interior vertices exceed the dense budget of " +
                                                        std::to_string(limit));
        }
        std::optional<EyeCoefficients> lambda;
        if (flavor == SE_COUPLING_EYE) {
            lambda = eye_coefficients(p.polygon, p.options.eye.value_or(select_eye(p.polygon)));
        }
        const BoundaryCouplingMatrix w = build_coupling(*p.mesh, lambda);
        const Vec2 v0 = flavor == SE_COUPLING_EYE ? limit_point(p.polygon, w) : limit_point_uniform(*p.mesh, p.polygon);
        json rows = json::array();
        for (std::size_t k = 0; k < count; ++k) {
            const double eps = epsilons[k];
            const SpectralReport s = spectral_report(*p.mesh, w, eps, limit);
            const Embedding e = solve_at_epsilon(p.mesh, p.polygon, w, eps);
            double dist = 0.0;
            for (Index v : p.mesh->interior_vertices()) dist = std::max(dist, distance(e.coordinates[v], v0));
            rows.push_back({{"epsilon", eps},
                            {"lambda_min", s.lambda_min},
                            {"lambda_min_over_epsilon", s.lambda_min_over_epsilon},
                            {"lambda_second", s.lambda_second},
                            {"inverse_deviation", s.inverse_deviation},
                            {"eigenvector_deviation", s.eigenvector_deviation},
                            {"max_distance_to_limit", dist},
                            {"residual", e.metadata.residual}});
        }
        json doc{{"flavor", flavor == SE_COUPLING_EYE ? "eye" : "uniform"},
                 {"n_interior", p.mesh->interior_count()},
                 {"expected_ratio", 1.0 / static_cast<double>(p.mesh->interior_count())},
                 {"diameter", p.polygon.diameter()},
                 {"limit_point", point_json(v0)},
                 {"rows", rows}};
        *json_out = copy_string(doc.dump(2) + "\n");
    });
}

se_status se_homotopy(const se_problem* problem, const se_star_options* options, const double* path_xy, size_t count,
                      se_path** out, size_t* failed_index) {
    if (failed_index) *failed_index = std::numeric_limits<size_t>::max();
    return guarded([&] {
        require(problem && out && (path_xy || count == 0), "null argument");
        *out = nullptr;
        const Problem& p = problem->problem;
        const QuadInstance base = QuadInstance::make(p.mesh, p.polygon);
        const EmbedResult start = star_embed(p.mesh, p.polygon, star_options_for(p, options));
        std::vector<Vec2> targets;
        for (std::size_t k = 0; k < count; ++k) targets.push_back({path_xy[2 * k], path_xy[2 * k + 1]});
        HomotopyPath path;
        try {
            path = homotopy_path(base, start.embedding, targets);
        } catch (const PathError& e) {
            if (failed_index) *failed_index = e.index();
            throw;
        }
        auto result = std::make_unique<se_path>();
        result->targets = targets;
        result->max_displacement = path.max_displacement;
        for (std::size_t k = 0; k < path.frames.size(); ++k) {
            SectionResult& frame = path.frames[k];
            result->residuals.push_back(frame.correspondence_residual);
            result->frames.push_back({std::move(frame.embedding), base.polygon_at(targets[k]), std::move(frame.report)});
        }
        *out = result.release();
    });
}

void se_path_free(se_path* path) { delete path; }

size_t se_path_frame_count(const se_path* path) { return path ? path->frames.size() : 0; }

const se_embedding* se_path_frame(const se_path* path, size_t index) {
    if (!path || index >= path->frames.size()) return nullptr;
    return &path->frames[index];
}

double se_path_max_displacement(const se_path* path) { return path ? path->max_displacement : 0.0; }

double se_path_max_residual(const se_path* path) {
    if (!path || path->residuals.empty()) return 0.0;
    return *std::max_element(path->residuals.begin(), path->residuals.end());
}

se_status se_path_to_json(const se_path* path, char** json_out) {
    return guarded([&] {
        require(path && json_out, "null argument");
        json frames = json::array();
        bool all_valid = true;
        for (std::size_t k = 0; k < path->frames.size(); ++k) {
            const se_embedding& f = path->frames[k];
            all_valid = all_valid && f.report.valid;
            frames.push_back({{"index", k},
                              {"target", point_json(path->targets[k])},
                              {"valid", f.report.valid},
                              {"correspondence_residual", path->residuals[k]}});
        }
        json doc{{"frames", frames},
                 {"frame_count", path->frames.size()},
                 {"all_valid", all_valid},
                 {"max_displacement", path->max_displacement}};
        *json_out = copy_string(doc.dump(2) + "\n");
    });
}

void se_path_viewport(const se_path* path, double viewport[4]) {
    if (!path || !viewport) return;
    std::vector<Vec2> all;
    for (const se_embedding& f : path->frames) {
        all.insert(all.end(), f.embedding.coordinates.begin(), f.embedding.coordinates.end());
    }
    const Viewport box = bounding_viewport(all);
    viewport[0] = box.lo.x;
    viewport[1] = box.lo.y;
    viewport[2] = box.hi.x;
    viewport[3] = box.hi.y;
}

}  // extern "C"
