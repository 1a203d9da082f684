#pragma once

#include <stdexcept>
#include <string>

namespace starembed {

// Values mirror se_status in the public C header; keep them in sync.
enum class ErrorCode {
    ok = 0,
    parse_error = 1,
    schema_error = 2,
    domain_error = 3,
    not_a_disk = 4,
    inconsistent_orientation = 5,
    duplicate_face = 6,
    invalid_polygon = 7,
    non_positive_weight = 8,
    dimension_mismatch = 9,
    solve_failed = 10,
    boundary_not_convex = 11,
    not_star_shaped = 12,
    eye_outside_hull = 13,
    eye_outside_kernel = 14,
    dividing_edge_present = 15,
    degree_two_boundary_vertex = 16,
    epsilon_out_of_range = 17,
    budget_exceeded = 18,
    halving_exhausted = 19,
    degenerate_correspondence = 20,
    point_at_infinity = 21,
    target_not_reflex = 22,
    invalid_argument = 23,
    io_error = 24,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace starembed
