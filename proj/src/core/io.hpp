#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "embedding.hpp"
#include "polygon.hpp"
#include "tutte.hpp"
#include "validator.hpp"

namespace starembed {

enum class WeightKind { uniform, random, explicit_values };

struct WeightSpec {
    WeightKind kind = WeightKind::uniform;
    std::uint64_t seed = 0;
    std::map<std::pair<Index, Index>, double> values;  // directed (from, to) -> c
};

struct ProblemOptions {
    std::optional<WeightSpec> weights;
    std::optional<Vec2> eye;
    std::map<Index, Vec2> interior_initial;
};

// Mesh and boundary are oriented so the polygon is counterclockwise.
struct Problem {
    std::shared_ptr<const Triangulation> mesh;
    BoundaryPolygon polygon;
    ProblemOptions options;
};

inline constexpr const char* format_version = "1";

// Problem document:
//   { "version": "1", "vertices": N, "faces": [[i,j,k], ...],
//     "boundary": [{"v": idx, "x": f, "y": f}, ...],
//     "weights": {"scheme": "uniform" | "random" | "explicit", "seed": S, "c": [[i,j,c], ...]},
//     "eye": [x, y], "interior": [{"v": idx, "x": f, "y": f}, ...] }
// Throws Error with parse_error (malformed JSON), schema_error (missing,
// mistyped or, in strict mode, unknown fields) or domain_error (mesh or
// polygon validation failures; the message names the cause).
Problem parse_problem(std::string_view text, bool strict = true);

std::string write_problem(const Problem& problem);

// Builds the raw weights described by a spec. Throws Error(schema_error) when
// an explicit spec misses a directed edge, Error(non_positive_weight).
WeightScheme make_weights(const Triangulation& mesh, const WeightSpec& spec);

nlohmann::json report_to_json(const ValidityReport& report);

// Embedding document: the problem fields plus "kind": "embedding",
// "coordinates", "metadata" and "report".
std::string write_embedding(const Embedding& embedding, const BoundaryPolygon& polygon, const ValidityReport& report);

struct EmbeddingDocument {
    Embedding embedding;
    BoundaryPolygon polygon;
};

EmbeddingDocument parse_embedding(std::string_view text);

struct Viewport {
    Vec2 lo;
    Vec2 hi;
};

// Bounding box of the points.
Viewport bounding_viewport(const std::vector<Vec2>& points);

struct SvgOptions {
    int canvas = 800;
    std::optional<Viewport> viewport;  // defaults to the embedding's bounding box
    std::optional<KernelPolygon> kernel;
    const ValidityReport* report = nullptr;  // highlights inverted and degenerate faces
};

// Edges as lines, vertices as circles; the viewport plus a 5% margin fills the canvas.
std::string render_svg(const Embedding& embedding, const SvgOptions& options = {});

}  // namespace starembed
