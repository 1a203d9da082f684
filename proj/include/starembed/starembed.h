/*
 * starembed: straight-line embeddings of triangulated disks with a fixed
 * convex or strictly star-shaped boundary polygon.
 *
 * C interface over the C++ core. Every object is an opaque handle released
 * with its matching *_free function. Functions return an se_status; on
 * failure se_last_error() describes the problem for the calling thread.
 * Strings handed out by the library are released with se_string_free.
 */
#ifndef STAREMBED_H
#define STAREMBED_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(STAREMBED_BUILDING)
#    define STAREMBED_API __declspec(dllexport)
#  else
#    define STAREMBED_API __declspec(dllimport)
#  endif
#else
#  define STAREMBED_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum se_status {
    SE_OK = 0,
    SE_ERR_PARSE = 1,
    SE_ERR_SCHEMA = 2,
    SE_ERR_DOMAIN = 3,
    SE_ERR_NOT_A_DISK = 4,
    SE_ERR_INCONSISTENT_ORIENTATION = 5,
    SE_ERR_DUPLICATE_FACE = 6,
    SE_ERR_INVALID_POLYGON = 7,
    SE_ERR_NON_POSITIVE_WEIGHT = 8,
    SE_ERR_DIMENSION_MISMATCH = 9,
    SE_ERR_SOLVE_FAILED = 10,
    SE_ERR_BOUNDARY_NOT_CONVEX = 11,
    SE_ERR_NOT_STAR_SHAPED = 12,
    SE_ERR_EYE_OUTSIDE_HULL = 13,
    SE_ERR_EYE_OUTSIDE_KERNEL = 14,
    SE_ERR_DIVIDING_EDGE_PRESENT = 15,
    SE_ERR_DEGREE_TWO_BOUNDARY_VERTEX = 16,
    SE_ERR_EPSILON_OUT_OF_RANGE = 17,
    SE_ERR_BUDGET_EXCEEDED = 18,
    SE_ERR_HALVING_EXHAUSTED = 19,
    SE_ERR_DEGENERATE_CORRESPONDENCE = 20,
    SE_ERR_POINT_AT_INFINITY = 21,
    SE_ERR_TARGET_NOT_REFLEX = 22,
    SE_ERR_INVALID_ARGUMENT = 23,
    SE_ERR_IO = 24,
    SE_ERR_INTERNAL = 99
} se_status;

typedef struct se_problem se_problem;
typedef struct se_embedding se_embedding;
typedef struct se_path se_path;

typedef enum se_weight_scheme {
    SE_WEIGHTS_FROM_PROBLEM = 0, /* document's "weights" entry, uniform if absent */
    SE_WEIGHTS_UNIFORM = 1,
    SE_WEIGHTS_RANDOM = 2
} se_weight_scheme;

typedef enum se_coupling_flavor {
    SE_COUPLING_UNIFORM = 0,
    SE_COUPLING_EYE = 1
} se_coupling_flavor;

typedef struct se_tutte_options {
    se_weight_scheme scheme;
    uint64_t seed;    /* for SE_WEIGHTS_RANDOM */
    double tolerance; /* relative residual; <= 0 selects the default 1e-10 */
} se_tutte_options;

typedef struct se_star_options {
    double initial_epsilon; /* <= 0 selects 0.5 */
    int max_halvings;       /* < 0 selects 60 */
    int use_eye;            /* nonzero: eye_x/eye_y override the problem's eye and the kernel centroid */
    double eye_x;
    double eye_y;
    double tolerance;       /* base residual tolerance; <= 0 selects 1e-10 */
} se_star_options;

typedef struct se_render_options {
    int canvas;           /* pixels; <= 0 selects 800 */
    int kernel_overlay;   /* nonzero draws the boundary kernel */
    int use_viewport;     /* nonzero: fixed viewport below */
    double viewport[4];   /* min_x, min_y, max_x, max_y */
} se_render_options;

STAREMBED_API const char* se_version(void);
STAREMBED_API const char* se_status_name(se_status status);
/* Message of the last failure on this thread; empty when none. */
STAREMBED_API const char* se_last_error(void);
STAREMBED_API void se_string_free(char* text);

STAREMBED_API void se_tutte_options_init(se_tutte_options* options);
STAREMBED_API void se_star_options_init(se_star_options* options);
STAREMBED_API void se_render_options_init(se_render_options* options);

/* ---- problems ---------------------------------------------------------- */

STAREMBED_API se_status se_problem_parse(const char* json_text, int strict, se_problem** out);
STAREMBED_API void se_problem_free(se_problem* problem);
STAREMBED_API size_t se_problem_vertex_count(const se_problem* problem);
STAREMBED_API size_t se_problem_interior_count(const se_problem* problem);
STAREMBED_API size_t se_problem_boundary_count(const se_problem* problem);
/* Canonical problem document (oriented counterclockwise). */
STAREMBED_API se_status se_problem_to_json(const se_problem* problem, char** json_out);
/* Mesh summary: counts, degrees, dividing edges, convexity, kernel. */
STAREMBED_API se_status se_problem_mesh_report(const se_problem* problem, char** json_out);
STAREMBED_API size_t se_problem_dividing_edge_count(const se_problem* problem);

/* ---- embeddings -------------------------------------------------------- */

/* Classical method; requires a convex boundary. */
STAREMBED_API se_status se_embed_tutte(const se_problem* problem, const se_tutte_options* options,
                                       se_embedding** out);

/* Epsilon-halving construction for strictly star-shaped boundaries. On
 * SE_ERR_HALVING_EXHAUSTED, *out receives the last (invalid) attempt. */
STAREMBED_API se_status se_embed_star(const se_problem* problem, const se_star_options* options,
                                      se_embedding** out);

/* Single solve of the epsilon system with the given coupling flavor. */
STAREMBED_API se_status se_solve_epsilon(const se_problem* problem, se_coupling_flavor flavor, double epsilon,
                                         se_embedding** out);

STAREMBED_API se_status se_embedding_parse(const char* json_text, se_embedding** out);
STAREMBED_API void se_embedding_free(se_embedding* embedding);
STAREMBED_API int se_embedding_is_valid(const se_embedding* embedding);
STAREMBED_API size_t se_embedding_vertex_count(const se_embedding* embedding);
/* Writes 2 * vertex_count doubles (x0, y0, x1, y1, ...). */
STAREMBED_API se_status se_embedding_coordinates(const se_embedding* embedding, double* xy, size_t capacity);
/* Accepted epsilon of a star embedding, or a negative value. */
STAREMBED_API double se_embedding_epsilon(const se_embedding* embedding);
STAREMBED_API se_status se_embedding_to_json(const se_embedding* embedding, char** json_out);
STAREMBED_API se_status se_embedding_render_svg(const se_embedding* embedding, const se_render_options* options,
                                                char** svg_out);

/* ---- diagnostics ------------------------------------------------------- */

/* Spectral report per epsilon plus distance to the limit point.
 * Fails with SE_ERR_BUDGET_EXCEEDED when N_I exceeds `budget` (0 selects 2000). */
STAREMBED_API se_status se_diagnose(const se_problem* problem, se_coupling_flavor flavor, const double* epsilons,
                                    size_t count, size_t budget, char** json_out);

/* ---- quadrilateral homotopy ------------------------------------------- */

/* Base embedding from the star construction, then one section per point of
 * `path_xy` (2 * count doubles). On failure, *failed_index (if non-null)
 * receives the first offending sample or SIZE_MAX. */
STAREMBED_API se_status se_homotopy(const se_problem* problem, const se_star_options* options, const double* path_xy,
                                    size_t count, se_path** out, size_t* failed_index);
STAREMBED_API void se_path_free(se_path* path);
STAREMBED_API size_t se_path_frame_count(const se_path* path);
/* Borrowed; valid until se_path_free. */
STAREMBED_API const se_embedding* se_path_frame(const se_path* path, size_t index);
STAREMBED_API double se_path_max_displacement(const se_path* path);
STAREMBED_API double se_path_max_residual(const se_path* path);
/* Summary with per-frame validity, residuals and reflex positions. */
STAREMBED_API se_status se_path_to_json(const se_path* path, char** json_out);
/* Viewport covering every frame, for identical framing across SVGs. */
STAREMBED_API void se_path_viewport(const se_path* path, double viewport[4]);

#ifdef __cplusplus
}
#endif

#endif /* STAREMBED_H */
