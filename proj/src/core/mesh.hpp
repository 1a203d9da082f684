#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <limits>
#include <vector>

#include "geometry.hpp"

namespace starembed {

using Face = std::array<Index, 3>;

inline constexpr Index no_index = std::numeric_limits<Index>::max();

// Unordered vertex pair, stored with a < b.
struct Edge {
    Index a = 0;
    Index b = 0;

    static constexpr Edge of(Index u, Index v) { return u < v ? Edge{u, v} : Edge{v, u}; }
    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// An edge of E_I^B, kept with its roles.
struct CouplingEdge {
    Index interior = 0;
    Index boundary = 0;
    friend constexpr auto operator<=>(const CouplingEdge&, const CouplingEdge&) = default;
};

// Combinatorial triangulation of a closed disk.
//
// Faces are stored consistently oriented, each rotated to start at its smallest
// vertex. The boundary cycle starts at the smallest boundary vertex and runs in
// the direction of the face orientation, so that every face lies to the left of
// the boundary edges it contains. build() picks the orientation whose cycle
// visits the lower-indexed neighbor of the start vertex second; attaching
// coordinates may call reversed() to make the polygon counterclockwise.
class Triangulation {
public:
    // Throws Error with not_a_disk, inconsistent_orientation, duplicate_face or
    // domain_error (index out of range, no faces).
    static Triangulation build(std::size_t vertex_count, std::vector<Face> faces);

    // Same mesh with every face flipped and the boundary cycle reversed.
    Triangulation reversed() const;

    std::size_t vertex_count() const { return vertex_count_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Index>& boundary_cycle() const { return boundary_cycle_; }
    const std::vector<Index>& interior_vertices() const { return interior_vertices_; }
    const std::vector<Edge>& interior_interior_edges() const { return interior_interior_edges_; }
    const std::vector<CouplingEdge>& interior_boundary_edges() const { return interior_boundary_edges_; }

    std::size_t boundary_count() const { return boundary_cycle_.size(); }
    std::size_t interior_count() const { return interior_vertices_.size(); }

    std::size_t degree(Index v) const { return fans_[v].size(); }
    bool is_boundary(Index v) const { return boundary_slot_[v] != no_index; }

    // Position of v in boundary_cycle(), or no_index.
    Index boundary_slot(Index v) const { return boundary_slot_[v]; }
    // Position of v in interior_vertices(), or no_index.
    Index interior_slot(Index v) const { return interior_slot_[v]; }

    // Neighbors in counterclockwise fan order (for a counterclockwise
    // embedding). Boundary fans start at the next boundary vertex along the
    // cycle and end at the previous one.
    const std::vector<Index>& neighbors(Index v) const { return fans_[v]; }

    bool has_edge(Index u, Index v) const;

    // Edges incident to exactly two faces.
    bool is_interior_edge(const Edge& e) const;

private:
    static Triangulation assemble(std::size_t vertex_count, std::vector<Face> oriented_faces);

    std::size_t vertex_count_ = 0;
    std::vector<Face> faces_;
    std::vector<Edge> edges_;
    std::vector<Edge> boundary_edges_;
    std::vector<Index> boundary_cycle_;
    std::vector<Index> interior_vertices_;
    std::vector<Edge> interior_interior_edges_;
    std::vector<CouplingEdge> interior_boundary_edges_;
    std::vector<std::vector<Index>> fans_;
    std::vector<Index> boundary_slot_;
    std::vector<Index> interior_slot_;
};

// Interior edges whose endpoints are both boundary vertices.
std::vector<Edge> find_dividing_edges(const Triangulation& mesh);

}  // namespace starembed
