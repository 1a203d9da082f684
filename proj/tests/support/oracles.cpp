#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starembed::testing {

std::vector<std::vector<double>> dense_solve(DenseMatrix a, std::vector<std::vector<double>> rhs) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) throw std::runtime_error("singular matrix");
        std::swap(a[pivot], a[col]);
        for (auto& b : rhs) std::swap(b[pivot], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            for (auto& b : rhs) b[r] -= f * b[col];
        }
    }
    for (auto& b : rhs) {
        for (std::size_t r = n; r-- > 0;) {
            double s = b[r];
            for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * b[c];
            b[r] = s / a[r][r];
        }
    }
    return rhs;
}

namespace {

std::vector<Vec2> solve_vertices(const DenseMatrix& a, const std::vector<double>& bx, const std::vector<double>& by) {
    const auto sol = dense_solve(a, {bx, by});
    std::vector<Vec2> out(a.size());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = {sol[0][v], sol[1][v]};
    return out;
}

}  // namespace

std::vector<Vec2> dense_tutte(const Triangulation& mesh, const BoundaryPolygon& polygon, const WeightScheme& weights) {
    const std::size_t n = mesh.vertex_count();
    DenseMatrix a(n, std::vector<double>(n, 0.0));
    std::vector<double> bx(n, 0.0), by(n, 0.0);
    for (Index v = 0; v < n; ++v) {
        a[v][v] = 1.0;
        if (mesh.is_boundary(v)) {
            const Vec2 p = polygon[mesh.boundary_slot(v)];
            bx[v] = p.x;
            by[v] = p.y;
            continue;
        }
        const std::size_t s = mesh.interior_slot(v);
        const auto& nbrs = weights.neighbors[s];
        double total = 0.0;
        for (double c : weights.raw[s]) total += c;
        for (std::size_t k = 0; k < nbrs.size(); ++k) a[v][nbrs[k]] -= weights.raw[s][k] / total;
    }
    return solve_vertices(a, bx, by);
}

std::vector<Vec2> dense_epsilon(const Triangulation& mesh, const BoundaryPolygon& polygon, const CouplingWeight& w,
                                double epsilon) {
    const std::size_t n = mesh.vertex_count();
    const double mi = static_cast<double>(mesh.interior_interior_edges().size());
    const double spring = mi > 0 ? (1.0 - epsilon) / mi : 0.0;
    DenseMatrix a(n, std::vector<double>(n, 0.0));
    std::vector<double> bx(n, 0.0), by(n, 0.0);
    for (Index v = 0; v < n; ++v) {
        if (mesh.is_boundary(v)) {
            a[v][v] = 1.0;
            const Vec2 p = polygon[mesh.boundary_slot(v)];
            bx[v] = p.x;
            by[v] = p.y;
        }
    }
    // dE/dx_i = spring * sum_j (x_i - x_j) + eps * sum_b w_ib (x_i - x_b)
    for (Index v = 0; v < n; ++v) {
        if (mesh.is_boundary(v)) continue;
        for (Index u : mesh.neighbors(v)) {
            if (mesh.is_boundary(u)) {
                const double c = epsilon * w(v, u);
                a[v][v] += c;
                a[v][u] -= c;
            } else {
                a[v][v] += spring;
                a[v][u] -= spring;
            }
        }
    }
    return solve_vertices(a, bx, by);
}

CouplingWeight uniform_coupling_weight(const Triangulation& mesh) {
    const double mb = static_cast<double>(mesh.interior_boundary_edges().size());
    return [mb](Index, Index) { return 1.0 / mb; };
}

CouplingWeight coupling_lookup(const Triangulation& mesh, const BoundaryCouplingMatrix& coupling) {
    const SparseMatrix dense_copy = coupling.matrix;
    const Triangulation* m = &mesh;
    return [dense_copy, m](Index i, Index b) {
        return dense_copy.coeff(static_cast<Eigen::Index>(m->interior_slot(i)),
                                static_cast<Eigen::Index>(m->boundary_slot(b)));
    };
}

double fd_gradient_max(const Embedding& embedding, const BoundaryCouplingMatrix& coupling, double epsilon,
                       double step) {
    Embedding probe = embedding;
    const Triangulation& mesh = *embedding.mesh;
    double worst = 0.0;
    for (Index v = 0; v < mesh.vertex_count(); ++v) {
        if (mesh.is_boundary(v)) continue;
        for (int axis = 0; axis < 2; ++axis) {
            double& coord = axis == 0 ? probe.coordinates[v].x : probe.coordinates[v].y;
            const double saved = coord;
            coord = saved + step;
            const double up = energy_value(probe, coupling, epsilon);
            coord = saved - step;
            const double down = energy_value(probe, coupling, epsilon);
            coord = saved;
            worst = std::max(worst, std::abs(up - down) / (2.0 * step));
        }
    }
    return worst;
}

namespace {

int sign(double v) { return (v > 0) - (v < 0); }

// Proper crossing of pq and ab.
bool blocks(Vec2 p, Vec2 q, Vec2 a, Vec2 b, double tol) {
    const double d1 = orient(p, q, a);
    const double d2 = orient(p, q, b);
    const double d3 = orient(a, b, p);
    const double d4 = orient(a, b, q);
    auto s = [tol](double v) { return std::abs(v) <= tol ? 0 : sign(v); };
    return s(d1) * s(d2) < 0 && s(d3) * s(d4) < 0;
}

}  // namespace

bool sees_whole_boundary(const BoundaryPolygon& polygon, Vec2 p, int samples_per_edge) {
    if (!polygon.contains(p)) return false;
    const std::size_t n = polygon.size();
    const double tol = 1e-12 * polygon.diameter() * polygon.diameter();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 a = polygon[k];
        const Vec2 b = polygon[(k + 1) % n];
        for (int s = 0; s < samples_per_edge; ++s) {
            const double t = static_cast<double>(s) / samples_per_edge;
            const Vec2 q = a + (b - a) * t;
            // The sight line to q must not leave through another edge.
            for (std::size_t e = 0; e < n; ++e) {
                if (blocks(p, q, polygon[e], polygon[(e + 1) % n], tol)) return false;
            }
        }
    }
    return true;
}

std::size_t brute_force_crossings(const Embedding& embedding) {
    const auto edges = embedding.mesh->edges();
    const auto& x = embedding.coordinates;
    std::size_t count = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const Edge e = edges[i];
            const Edge f = edges[j];
            if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b) continue;
            const Vec2 p = x[e.a], q = x[e.b], r = x[f.a], s = x[f.b];
            if (std::max(p.x, q.x) < std::min(r.x, s.x) || std::max(r.x, s.x) < std::min(p.x, q.x)) continue;
            if (std::max(p.y, q.y) < std::min(r.y, s.y) || std::max(r.y, s.y) < std::min(p.y, q.y)) continue;
            const int d1 = sign(orient(p, q, r));
            const int d2 = sign(orient(p, q, s));
            const int d3 = sign(orient(r, s, p));
            const int d4 = sign(orient(r, s, q));
            if (d1 * d2 <= 0 && d3 * d4 <= 0) ++count;
        }
    }
    return count;
}

double max_coordinate_gap(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
        worst = std::max({worst, std::abs(a[k].x - b[k].x), std::abs(a[k].y - b[k].y)});
    }
    return worst;
}

DenseMatrix dense_s_block(const Triangulation& mesh, const CouplingWeight& w, double epsilon) {
    const auto& inner = mesh.interior_vertices();
    const double mi = static_cast<double>(mesh.interior_interior_edges().size());
    const double spring = mi > 0 ? (1.0 - epsilon) / mi : 0.0;
    std::vector<std::size_t> row(mesh.vertex_count(), 0);
    for (std::size_t k = 0; k < inner.size(); ++k) row[inner[k]] = k;
    DenseMatrix s(inner.size(), std::vector<double>(inner.size(), 0.0));
    for (Index v : inner) {
        for (Index u : mesh.neighbors(v)) {
            if (mesh.is_boundary(u)) {
                s[row[v]][row[v]] += epsilon * w(v, u);
            } else {
                s[row[v]][row[v]] += spring;
                s[row[v]][row[u]] -= spring;
            }
        }
    }
    return s;
}

std::vector<double> jacobi_eigenvalues(DenseMatrix a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                total += a[i][j] * a[i][j];
                if (i != j) off += a[i][j] * a[i][j];
            }
        }
        if (off <= 1e-32 * total) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - sn * akq;
                    a[k][q] = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - sn * aqk;
                    a[q][k] = sn * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k][k];
    std::sort(out.begin(), out.end());
    return out;
}

double dense_inverse_deviation(const DenseMatrix& s, double epsilon) {
    const std::size_t n = s.size();
    std::vector<std::vector<double>> identity(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) identity[k][k] = 1.0;
    // Columns of S^-1; S is symmetric so rows and columns agree.
    auto inv = dense_solve(s, identity);
    DenseMatrix d(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d[i][j] = 0.5 * epsilon * (inv[i][j] + inv[j][i]) - 1.0;
    }
    const auto ev = jacobi_eigenvalues(d);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

}  // namespace starembed::testing
