#include "io.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "errors.hpp"

namespace starembed {
namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& message) { throw Error(ErrorCode::schema_error, message); }

void check_keys(const json& object, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [key, _] : object.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            schema("unknown field \"" + key + "\" in " + where);
        }
    }
}

const json& field(const json& object, const char* key, const std::string& where) {
    if (!object.is_object()) schema(where + " must be an object");
    const auto it = object.find(key);
    if (it == object.end()) schema("missing field \"" + std::string(key) + "\" in " + where);
    return *it;
}

double number(const json& value, const std::string& where) {
    if (!value.is_number()) schema(where + " must be a number");
    return value.get<double>();
}

Index index_value(const json& value, const std::string& where) {
    if (!value.is_number_integer() || value.get<long long>() < 0) schema(where + " must be a non-negative integer");
    return value.get<Index>();
}

Vec2 point_value(const json& value, const std::string& where) {
    if (!value.is_array() || value.size() != 2) schema(where + " must be a pair [x, y]");
    return {number(value[0], where), number(value[1], where)};
}

struct VertexPoint {
    Index v;
    Vec2 p;
};

std::vector<VertexPoint> vertex_points(const json& list, const std::string& where, bool strict) {
    if (!list.is_array()) schema(where + " must be an array");
    std::vector<VertexPoint> out;
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string at = where + "[" + std::to_string(k) + "]";
        const json& entry = list[k];
        if (strict) check_keys(entry, {"v", "x", "y"}, at);
        out.push_back({index_value(field(entry, "v", at), at + ".v"),
                       {number(field(entry, "x", at), at + ".x"), number(field(entry, "y", at), at + ".y")}});
    }
    return out;
}

json vertex_point_json(Index v, Vec2 p) { return json{{"v", v}, {"x", p.x}, {"y", p.y}}; }

[[noreturn]] void domain(const Error& cause, const std::string& where) {
    throw Error(ErrorCode::domain_error,
                where + ": " + error_code_name(cause.code()) + ": " + cause.what());
}

struct MeshAndPolygon {
    std::shared_ptr<const Triangulation> mesh;
    BoundaryPolygon polygon;
};

MeshAndPolygon read_mesh_and_polygon(const json& doc, bool strict) {
    const json& version = field(doc, "version", "document");
    if (!version.is_string() || version.get<std::string>() != format_version) {
        schema("unsupported version tag; expected \"" + std::string(format_version) + "\"");
    }
    const Index n = index_value(field(doc, "vertices", "document"), "vertices");
    const json& face_list = field(doc, "faces", "document");
    if (!face_list.is_array()) schema("faces must be an array");
    std::vector<Face> faces;
    for (std::size_t k = 0; k < face_list.size(); ++k) {
        const std::string at = "faces[" + std::to_string(k) + "]";
        const json& f = face_list[k];
        if (!f.is_array() || f.size() != 3) schema(at + " must be an index triple");
        faces.push_back({index_value(f[0], at), index_value(f[1], at), index_value(f[2], at)});
    }

    Triangulation mesh;
    try {
        mesh = Triangulation::build(n, std::move(faces));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::domain_error) throw;
        domain(e, "faces");
    }

    const auto boundary = vertex_points(field(doc, "boundary", "document"), "boundary", strict);
    std::map<Index, Vec2> coords;
    for (const auto& [v, p] : boundary) {
        if (v >= n || !mesh.is_boundary(v)) {
            throw Error(ErrorCode::domain_error, "boundary: vertex " + std::to_string(v) + " is not a boundary vertex");
        }
        if (!coords.emplace(v, p).second) {
            throw Error(ErrorCode::domain_error, "boundary: vertex " + std::to_string(v) + " listed twice");
        }
    }
    std::vector<Vec2> ring;
    for (Index v : mesh.boundary_cycle()) {
        const auto it = coords.find(v);
        if (it == coords.end()) {
            throw Error(ErrorCode::domain_error, "boundary: missing coordinates for vertex " + std::to_string(v));
        }
        ring.push_back(it->second);
    }
    if (signed_area(ring) < 0) {
        mesh = mesh.reversed();
        ring.clear();
        for (Index v : mesh.boundary_cycle()) ring.push_back(coords.at(v));
    }
    try {
        return {std::make_shared<const Triangulation>(std::move(mesh)), BoundaryPolygon::make(std::move(ring))};
    } catch (const Error& e) {
        domain(e, "boundary");
    }
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::parse_error, e.what());
    }
}

json mesh_json(const Triangulation& mesh, const BoundaryPolygon& polygon) {
    json faces = json::array();
    for (const Face& f : mesh.faces()) faces.push_back({f[0], f[1], f[2]});
    json boundary = json::array();
    for (std::size_t k = 0; k < mesh.boundary_count(); ++k) {
        boundary.push_back(vertex_point_json(mesh.boundary_cycle()[k], polygon[k]));
    }
    return json{{"version", format_version}, {"vertices", mesh.vertex_count()}, {"faces", faces}, {"boundary", boundary}};
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

Problem parse_problem(std::string_view text, bool strict) {
    const json doc = parse_json(text);
    if (!doc.is_object()) schema("document must be an object");
    if (strict) check_keys(doc, {"version", "vertices", "faces", "boundary", "weights", "eye", "interior"}, "document");
    auto [mesh, polygon] = read_mesh_and_polygon(doc, strict);
    Problem problem{std::move(mesh), std::move(polygon), {}};

    if (const auto it = doc.find("weights"); it != doc.end()) {
        const json& w = *it;
        if (strict) check_keys(w, {"scheme", "seed", "c"}, "weights");
        const json& scheme = field(w, "scheme", "weights");
        if (!scheme.is_string()) schema("weights.scheme must be a string");
        WeightSpec spec;
        const std::string name = scheme.get<std::string>();
        if (name == "uniform") {
            spec.kind = WeightKind::uniform;
        } else if (name == "random") {
            spec.kind = WeightKind::random;
            spec.seed = index_value(field(w, "seed", "weights"), "weights.seed");
        } else if (name == "explicit") {
            spec.kind = WeightKind::explicit_values;
            const json& list = field(w, "c", "weights");
            if (!list.is_array()) schema("weights.c must be an array");
            for (std::size_t k = 0; k < list.size(); ++k) {
                const std::string at = "weights.c[" + std::to_string(k) + "]";
                if (!list[k].is_array() || list[k].size() != 3) schema(at + " must be [from, to, c]");
                spec.values[{index_value(list[k][0], at), index_value(list[k][1], at)}] = number(list[k][2], at);
            }
        } else {
            schema("unknown weight scheme \"" + name + "\"");
        }
        problem.options.weights = std::move(spec);
    }
    if (const auto it = doc.find("eye"); it != doc.end()) {
        problem.options.eye = point_value(*it, "eye");
    }
    if (const auto it = doc.find("interior"); it != doc.end()) {
        for (const auto& [v, p] : vertex_points(*it, "interior", strict)) {
            if (v >= problem.mesh->vertex_count() || problem.mesh->is_boundary(v)) {
                throw Error(ErrorCode::domain_error, "interior: vertex " + std::to_string(v) + " is not interior");
            }
            problem.options.interior_initial[v] = p;
        }
    }
    return problem;
}

std::string write_problem(const Problem& problem) {
    json doc = mesh_json(*problem.mesh, problem.polygon);
    if (const auto& w = problem.options.weights) {
        switch (w->kind) {
            case WeightKind::uniform: doc["weights"] = {{"scheme", "uniform"}}; break;
            case WeightKind::random: doc["weights"] = {{"scheme", "random"}, {"seed", w->seed}}; break;
            case WeightKind::explicit_values: {
                json c = json::array();
                for (const auto& [edge, value] : w->values) c.push_back({edge.first, edge.second, value});
                doc["weights"] = {{"scheme", "explicit"}, {"c", c}};
                break;
            }
        }
    }
    if (const auto& eye = problem.options.eye) doc["eye"] = {eye->x, eye->y};
    if (!problem.options.interior_initial.empty()) {
        json interior = json::array();
        for (const auto& [v, p] : problem.options.interior_initial) interior.push_back(vertex_point_json(v, p));
        doc["interior"] = interior;
    }
    return doc.dump(2) + "\n";
}

WeightScheme make_weights(const Triangulation& mesh, const WeightSpec& spec) {
    switch (spec.kind) {
        case WeightKind::uniform: return uniform_weights(mesh);
        case WeightKind::random: return random_weights(mesh, spec.seed);
        case WeightKind::explicit_values:
            return normalize_weights(mesh, [&](Index from, Index to) {
                const auto it = spec.values.find({from, to});
                if (it == spec.values.end()) {
                    schema("weights.c has no entry for directed edge (" + std::to_string(from) + ", " +
                           std::to_string(to) + ")");
                }
                return it->second;
            });
    }
    return uniform_weights(mesh);
}

nlohmann::json report_to_json(const ValidityReport& report) {
    json issues = json::array();
    for (const FaceIssue& f : report.face_issues) {
        issues.push_back({{"face", f.face},
                          {"kind", f.defect == FaceDefect::inverted ? "inverted" : "degenerate"},
                          {"area", f.area}});
    }
    json crossings = json::array();
    for (const EdgeCrossing& c : report.crossings) {
        crossings.push_back({{c.first.a, c.first.b}, {c.second.a, c.second.b}});
    }
    json reflex = json::array();
    for (const ReflexVerdict& r : report.reflex) {
        reflex.push_back({{"vertex", r.vertex}, {"max_gap", r.max_gap}, {"pass", r.pass}});
    }
    return json{{"valid", report.valid},
                {"face_areas", report.face_areas},
                {"face_issues", issues},
                {"crossings", crossings},
                {"reflex", reflex},
                {"boundary_mismatch", report.boundary_mismatch}};
}

std::string write_embedding(const Embedding& embedding, const BoundaryPolygon& polygon, const ValidityReport& report) {
    json doc = mesh_json(*embedding.mesh, polygon);
    doc["kind"] = "embedding";
    json coords = json::array();
    for (const Vec2& p : embedding.coordinates) coords.push_back({p.x, p.y});
    doc["coordinates"] = coords;
    const SolverMetadata& m = embedding.metadata;
    json meta{{"method", m.method}, {"residual", m.residual}};
    if (m.epsilon) meta["epsilon"] = *m.epsilon;
    if (m.halvings) meta["halvings"] = *m.halvings;
    if (m.eye) meta["eye"] = {m.eye->x, m.eye->y};
    doc["metadata"] = meta;
    doc["report"] = report_to_json(report);
    return doc.dump(2) + "\n";
}

EmbeddingDocument parse_embedding(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) schema("document must be an object");
    const json& kind = field(doc, "kind", "document");
    if (kind != "embedding") schema("document kind must be \"embedding\"");
    auto [mesh, polygon] = read_mesh_and_polygon(doc, false);

    const json& coords = field(doc, "coordinates", "document");
    if (!coords.is_array() || coords.size() != mesh->vertex_count()) {
        schema("coordinates must hold one [x, y] pair per vertex");
    }
    std::vector<Vec2> xy;
    for (std::size_t k = 0; k < coords.size(); ++k) xy.push_back(point_value(coords[k], "coordinates"));

    EmbeddingDocument out{{std::move(mesh), std::move(xy), {}}, std::move(polygon)};
    if (const auto it = doc.find("metadata"); it != doc.end() && it->is_object()) {
        SolverMetadata& m = out.embedding.metadata;
        m.method = it->value("method", "");
        m.residual = it->value("residual", 0.0);
        if (it->contains("epsilon")) m.epsilon = number(it->at("epsilon"), "metadata.epsilon");
        if (it->contains("halvings")) m.halvings = it->at("halvings").get<int>();
        if (it->contains("eye")) m.eye = point_value(it->at("eye"), "metadata.eye");
    }
    return out;
}

Viewport bounding_viewport(const std::vector<Vec2>& points) {
    Viewport box{points.empty() ? Vec2{} : points.front(), points.empty() ? Vec2{} : points.front()};
    for (const Vec2& p : points) {
        box.lo = {std::min(box.lo.x, p.x), std::min(box.lo.y, p.y)};
        box.hi = {std::max(box.hi.x, p.x), std::max(box.hi.y, p.y)};
    }
    return box;
}

std::string render_svg(const Embedding& embedding, const SvgOptions& options) {
    const Viewport box = options.viewport.value_or(bounding_viewport(embedding.coordinates));
    const double extent = std::max({box.hi.x - box.lo.x, box.hi.y - box.lo.y, 1e-300});
    const double canvas = options.canvas;
    const double scale = canvas / (1.1 * extent);
    const Vec2 center = 0.5 * (box.lo + box.hi);
    auto map = [&](Vec2 p) {
        return Vec2{0.5 * canvas + scale * (p.x - center.x), 0.5 * canvas - scale * (p.y - center.y)};
    };
    auto points_attr = [&](const std::vector<Vec2>& ring) {
        std::string s;
        for (const Vec2& p : ring) {
            const Vec2 q = map(p);
            if (!s.empty()) s += ' ';
            s += format_number(q.x) + ',' + format_number(q.y);
        }
        return s;
    };

    const std::string size = std::to_string(options.canvas);
    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + size + "\" height=\"" + size +
           "\" viewBox=\"0 0 " + size + " " + size + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + size + "\" height=\"" + size + "\" fill=\"white\"/>\n";
    if (options.kernel && options.kernel->vertices.size() >= 3) {
        svg += "<polygon class=\"kernel\" points=\"" + points_attr(options.kernel->vertices) +
               "\" fill=\"#bcd6f0\" fill-opacity=\"0.6\" stroke=\"none\"/>\n";
    }
    const auto& mesh = *embedding.mesh;
    const auto& xy = embedding.coordinates;
    if (options.report) {
        for (const FaceIssue& issue : options.report->face_issues) {
            const Face& f = mesh.faces()[issue.face];
            svg += "<polygon class=\"" +
                   std::string(issue.defect == FaceDefect::inverted ? "inverted" : "degenerate") + "\" points=\"" +
                   points_attr({xy[f[0]], xy[f[1]], xy[f[2]]}) + "\" fill=\"#e04040\" fill-opacity=\"0.7\"/>\n";
        }
    }
    for (const Edge& e : mesh.edges()) {
        const Vec2 a = map(xy[e.a]);
        const Vec2 b = map(xy[e.b]);
        svg += "<line x1=\"" + format_number(a.x) + "\" y1=\"" + format_number(a.y) + "\" x2=\"" +
               format_number(b.x) + "\" y2=\"" + format_number(b.y) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    }
    for (Index v = 0; v < mesh.vertex_count(); ++v) {
        const Vec2 p = map(xy[v]);
        svg += "<circle cx=\"" + format_number(p.x) + "\" cy=\"" + format_number(p.y) + "\" r=\"3\" fill=\"" +
               (mesh.is_boundary(v) ? "#000000" : "#2060c0") + "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace starembed
