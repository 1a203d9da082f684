#include "mesh.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "errors.hpp"

namespace starembed {
namespace {

Face canonical_rotation(const Face& f) {
    if (f[1] < f[0] && f[1] < f[2]) return {f[1], f[2], f[0]};
    if (f[2] < f[0] && f[2] < f[1]) return {f[2], f[0], f[1]};
    return f;
}

Face flipped(const Face& f) { return canonical_rotation({f[0], f[2], f[1]}); }

// True if the face traverses u -> v.
bool traverses(const Face& f, Index u, Index v) {
    for (int k = 0; k < 3; ++k) {
        if (f[k] == u && f[(k + 1) % 3] == v) return true;
    }
    return false;
}

std::string face_label(std::size_t k) { return "face " + std::to_string(k); }

}  // namespace

Triangulation Triangulation::build(std::size_t vertex_count, std::vector<Face> faces) {
    if (faces.empty()) {
        throw Error(ErrorCode::domain_error, "triangulation has no faces");
    }
    for (std::size_t k = 0; k < faces.size(); ++k) {
        for (Index v : faces[k]) {
            if (v >= vertex_count) {
                throw Error(ErrorCode::domain_error, face_label(k) + " references vertex " + std::to_string(v) +
                                                         " but only " + std::to_string(vertex_count) +
                                                         " vertices exist");
            }
        }
        const Face& f = faces[k];
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
            throw Error(ErrorCode::not_a_disk, face_label(k) + " repeats a vertex");
        }
    }

    {
        std::map<Face, std::size_t> seen;
        for (std::size_t k = 0; k < faces.size(); ++k) {
            Face key = faces[k];
            std::sort(key.begin(), key.end());
            auto [it, inserted] = seen.emplace(key, k);
            if (!inserted) {
                throw Error(ErrorCode::duplicate_face,
                            face_label(k) + " duplicates " + face_label(it->second));
            }
        }
    }

    std::map<Edge, std::vector<std::size_t>> edge_faces;
    for (std::size_t k = 0; k < faces.size(); ++k) {
        for (int i = 0; i < 3; ++i) {
            auto& incident = edge_faces[Edge::of(faces[k][i], faces[k][(i + 1) % 3])];
            incident.push_back(k);
            if (incident.size() > 2) {
                const Edge e = Edge::of(faces[k][i], faces[k][(i + 1) % 3]);
                throw Error(ErrorCode::not_a_disk, "edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                                                       ") is shared by more than two faces");
            }
        }
    }

    // Propagate orientation from face 0 across shared edges.
    std::vector<std::vector<std::pair<std::size_t, Edge>>> adjacency(faces.size());
    for (const auto& [e, incident] : edge_faces) {
        if (incident.size() == 2) {
            adjacency[incident[0]].push_back({incident[1], e});
            adjacency[incident[1]].push_back({incident[0], e});
        }
    }
    std::vector<int> flip(faces.size(), -1);
    flip[0] = 0;
    std::queue<std::size_t> pending;
    pending.push(0);
    while (!pending.empty()) {
        const std::size_t f = pending.front();
        pending.pop();
        for (const auto& [g, e] : adjacency[f]) {
            const bool f_forward = traverses(faces[f], e.a, e.b) != (flip[f] == 1);
            const bool g_forward_raw = traverses(faces[g], e.a, e.b);
            // g must traverse the shared edge opposite to f.
            const int needed = (g_forward_raw == f_forward) ? 1 : 0;
            if (flip[g] == -1) {
                flip[g] = needed;
                pending.push(g);
            } else if (flip[g] != needed) {
                throw Error(ErrorCode::inconsistent_orientation,
                            "faces cannot be oriented consistently (conflict at " + face_label(g) + ")");
            }
        }
    }
    for (std::size_t k = 0; k < faces.size(); ++k) {
        if (flip[k] == -1) {
            throw Error(ErrorCode::not_a_disk, face_label(k) + " is not connected to face 0");
        }
        faces[k] = flip[k] == 1 ? flipped(faces[k]) : canonical_rotation(faces[k]);
    }

    std::vector<bool> used(vertex_count, false);
    for (const Face& f : faces) {
        for (Index v : f) used[v] = true;
    }
    for (Index v = 0; v < vertex_count; ++v) {
        if (!used[v]) {
            throw Error(ErrorCode::not_a_disk, "vertex " + std::to_string(v) + " is not used by any face");
        }
    }

    const std::size_t edge_count = edge_faces.size();
    const long long euler = static_cast<long long>(vertex_count) - static_cast<long long>(edge_count) +
                            static_cast<long long>(faces.size());
    if (euler != 1) {
        throw Error(ErrorCode::not_a_disk, "Euler characteristic is " + std::to_string(euler) + ", expected 1");
    }

    Triangulation mesh = assemble(vertex_count, std::move(faces));
    const auto& cycle = mesh.boundary_cycle_;
    if (cycle[1] > cycle.back()) {
        return mesh.reversed();
    }
    return mesh;
}

Triangulation Triangulation::reversed() const {
    std::vector<Face> faces;
    faces.reserve(faces_.size());
    for (const Face& f : faces_) faces.push_back(flipped(f));
    return assemble(vertex_count_, std::move(faces));
}

Triangulation Triangulation::assemble(std::size_t vertex_count, std::vector<Face> oriented_faces) {
    Triangulation mesh;
    mesh.vertex_count_ = vertex_count;
    mesh.faces_ = std::move(oriented_faces);

    std::map<Edge, int> face_count;
    for (const Face& f : mesh.faces_) {
        for (int i = 0; i < 3; ++i) ++face_count[Edge::of(f[i], f[(i + 1) % 3])];
    }

    // Boundary edges keep the direction of their single face.
    std::vector<Index> next(vertex_count, no_index);
    std::vector<int> incoming(vertex_count, 0);
    for (const Face& f : mesh.faces_) {
        for (int i = 0; i < 3; ++i) {
            const Index u = f[i];
            const Index v = f[(i + 1) % 3];
            if (face_count[Edge::of(u, v)] != 1) continue;
            if (next[u] != no_index) {
                throw Error(ErrorCode::not_a_disk, "boundary is pinched at vertex " + std::to_string(u));
            }
            next[u] = v;
            ++incoming[v];
        }
    }
    for (const auto& [e, count] : face_count) {
        mesh.edges_.push_back(e);
        if (count == 1) mesh.boundary_edges_.push_back(e);
    }

    Index start = no_index;
    std::size_t boundary_vertices = 0;
    for (Index v = 0; v < vertex_count; ++v) {
        if (next[v] == no_index && incoming[v] == 0) continue;
        if (next[v] == no_index || incoming[v] != 1) {
            throw Error(ErrorCode::not_a_disk, "boundary is pinched at vertex " + std::to_string(v));
        }
        ++boundary_vertices;
        if (start == no_index) start = v;
    }
    if (start == no_index) {
        throw Error(ErrorCode::not_a_disk, "triangulation has no boundary");
    }
    for (Index v = start;;) {
        mesh.boundary_cycle_.push_back(v);
        v = next[v];
        if (v == start) break;
        if (mesh.boundary_cycle_.size() > boundary_vertices) {
            throw Error(ErrorCode::not_a_disk, "boundary edges do not form a cycle");
        }
    }
    if (mesh.boundary_cycle_.size() != boundary_vertices) {
        throw Error(ErrorCode::not_a_disk, "boundary consists of more than one cycle");
    }

    mesh.boundary_slot_.assign(vertex_count, no_index);
    mesh.interior_slot_.assign(vertex_count, no_index);
    for (std::size_t k = 0; k < mesh.boundary_cycle_.size(); ++k) {
        mesh.boundary_slot_[mesh.boundary_cycle_[k]] = k;
    }
    for (Index v = 0; v < vertex_count; ++v) {
        if (mesh.boundary_slot_[v] == no_index) {
            mesh.interior_slot_[v] = mesh.interior_vertices_.size();
            mesh.interior_vertices_.push_back(v);
        }
    }

    // Fans: in face (v, a, b) the neighbor b follows a counterclockwise.
    std::vector<std::map<Index, Index>> successor(vertex_count);
    for (const Face& f : mesh.faces_) {
        for (int i = 0; i < 3; ++i) {
            const Index v = f[i];
            const Index a = f[(i + 1) % 3];
            const Index b = f[(i + 2) % 3];
            if (!successor[v].emplace(a, b).second) {
                throw Error(ErrorCode::not_a_disk, "vertex " + std::to_string(v) + " is not a manifold vertex");
            }
        }
    }
    mesh.fans_.resize(vertex_count);
    for (Index v = 0; v < vertex_count; ++v) {
        const auto& succ = successor[v];
        auto& fan = mesh.fans_[v];
        if (mesh.is_boundary(v)) {
            Index a = next[v];
            fan.push_back(a);
            for (auto it = succ.find(a); it != succ.end(); it = succ.find(a)) {
                a = it->second;
                fan.push_back(a);
                if (fan.size() > succ.size() + 1) break;
            }
            if (fan.size() != succ.size() + 1) {
                throw Error(ErrorCode::not_a_disk, "vertex " + std::to_string(v) + " is not a manifold vertex");
            }
        } else {
            const Index first = succ.begin()->first;
            Index a = first;
            do {
                fan.push_back(a);
                const auto it = succ.find(a);
                if (it == succ.end()) break;
                a = it->second;
            } while (a != first && fan.size() <= succ.size());
            if (fan.size() != succ.size() || a != first) {
                throw Error(ErrorCode::not_a_disk, "vertex " + std::to_string(v) + " is not a manifold vertex");
            }
        }
    }

    for (const Edge& e : mesh.edges_) {
        const bool ba = mesh.is_boundary(e.a);
        const bool bb = mesh.is_boundary(e.b);
        if (!ba && !bb) {
            mesh.interior_interior_edges_.push_back(e);
        } else if (!ba) {
            mesh.interior_boundary_edges_.push_back({e.a, e.b});
        } else if (!bb) {
            mesh.interior_boundary_edges_.push_back({e.b, e.a});
        }
    }
    std::sort(mesh.interior_boundary_edges_.begin(), mesh.interior_boundary_edges_.end());
    return mesh;
}

bool Triangulation::has_edge(Index u, Index v) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge::of(u, v));
}

bool Triangulation::is_interior_edge(const Edge& e) const {
    return has_edge(e.a, e.b) && !std::binary_search(boundary_edges_.begin(), boundary_edges_.end(), e);
}

std::vector<Edge> find_dividing_edges(const Triangulation& mesh) {
    std::vector<Edge> dividing;
    for (const Edge& e : mesh.edges()) {
        if (mesh.is_boundary(e.a) && mesh.is_boundary(e.b) && mesh.is_interior_edge(e)) {
            dividing.push_back(e);
        }
    }
    return dividing;
}

}  // namespace starembed
