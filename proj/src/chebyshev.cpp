#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "elastica/geometry.hpp"

// Chebyshev center of a convex polygon: maximize t subject to
// a_i . p + t <= b_i for every edge line (a_i the unit outward normal).
// Solved by a randomized incremental LP in the three variables (x, y, t)
// followed by an exact active-set polish; the result is certified against
// every constraint.

namespace elastica::geom {

namespace {

struct Row {
    std::array<double, 3> a{};
    double b = 0.0;
};

struct Box {
    std::array<double, 3> lo{}, hi{};
};

struct Infeasible {};

double dot(const std::array<double, 3>& a, const std::array<double, 3>& z, int d) {
    double s = 0.0;
    for (int k = 0; k < d; ++k) s += a[k] * z[k];
    return s;
}

std::array<double, 3> seidel(int d, std::array<double, 3> c, std::vector<Row> rows,
                             Box box, std::mt19937& rng, double tol) {
    if (d == 1) {
        double xlo = box.lo[0], xhi = box.hi[0];
        for (const Row& r : rows) {
            if (std::abs(r.a[0]) <= 1e-300) {
                if (r.b < -tol) throw Infeasible{};
                continue;
            }
            const double bound = r.b / r.a[0];
            if (r.a[0] > 0.0) xhi = std::min(xhi, bound);
            else xlo = std::max(xlo, bound);
        }
        if (xlo > xhi + tol) throw Infeasible{};
        if (xlo > xhi) xlo = xhi = 0.5 * (xlo + xhi);
        return {c[0] >= 0.0 ? xhi : xlo, 0.0, 0.0};
    }

    std::shuffle(rows.begin(), rows.end(), rng);
    std::array<double, 3> z{};
    for (int k = 0; k < d; ++k) z[k] = c[k] >= 0.0 ? box.hi[k] : box.lo[k];

    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (dot(rows[i].a, z, d) <= rows[i].b + tol) continue;

        // The optimum of the first i+1 constraints lies on this hyperplane;
        // eliminate the variable with the largest coefficient.
        const Row& cur = rows[i];
        int k = 0;
        for (int j = 1; j < d; ++j) {
            if (std::abs(cur.a[j]) > std::abs(cur.a[k])) k = j;
        }
        if (std::abs(cur.a[k]) <= 1e-300) {
            if (cur.b < -tol) throw Infeasible{};
            continue;
        }
        const double inv = 1.0 / cur.a[k];
        std::array<int, 2> keep{};
        int m = 0;
        for (int j = 0; j < d; ++j)
            if (j != k) keep[std::size_t(m++)] = j;

        auto project_row = [&](const std::array<double, 3>& p, double q) {
            Row s;
            for (int t2 = 0; t2 < d - 1; ++t2) {
                const int j = keep[std::size_t(t2)];
                s.a[std::size_t(t2)] = p[std::size_t(j)] - p[std::size_t(k)] * cur.a[std::size_t(j)] * inv;
            }
            s.b = q - p[std::size_t(k)] * cur.b * inv;
            return s;
        };

        std::vector<Row> sub;
        sub.reserve(i + 2);
        for (std::size_t j = 0; j < i; ++j) sub.push_back(project_row(rows[j].a, rows[j].b));
        {
            std::array<double, 3> ek{};
            ek[std::size_t(k)] = 1.0;
            sub.push_back(project_row(ek, box.hi[std::size_t(k)]));
            ek[std::size_t(k)] = -1.0;
            sub.push_back(project_row(ek, -box.lo[std::size_t(k)]));
        }

        std::array<double, 3> csub{};
        Box bsub;
        for (int t2 = 0; t2 < d - 1; ++t2) {
            const int j = keep[std::size_t(t2)];
            csub[std::size_t(t2)] = c[std::size_t(j)] - c[std::size_t(k)] * cur.a[std::size_t(j)] * inv;
            bsub.lo[std::size_t(t2)] = box.lo[std::size_t(j)];
            bsub.hi[std::size_t(t2)] = box.hi[std::size_t(j)];
        }

        const std::array<double, 3> u = seidel(d - 1, csub, sub, bsub, rng, tol);
        double zk = cur.b;
        for (int t2 = 0; t2 < d - 1; ++t2) {
            const int j = keep[std::size_t(t2)];
            z[std::size_t(j)] = u[std::size_t(t2)];
            zk -= cur.a[std::size_t(j)] * u[std::size_t(t2)];
        }
        z[std::size_t(k)] = zk * inv;
    }
    return z;
}

// true iff the origin lies in the convex hull of the given directions
// (every closed half-plane argument fails), within an angular slack.
bool origin_in_hull(const std::vector<Point>& dirs) {
    if (dirs.empty()) return false;
    std::vector<double> ang;
    ang.reserve(dirs.size());
    for (const Point& v : dirs) {
        if (v.norm() < 1e-14) continue;
        ang.push_back(std::atan2(v.y(), v.x()));
    }
    if (ang.size() < 2) return false;
    std::sort(ang.begin(), ang.end());
    double max_gap = ang.front() + 2.0 * kPi - ang.back();
    for (std::size_t i = 1; i < ang.size(); ++i) max_gap = std::max(max_gap, ang[i] - ang[i - 1]);
    return max_gap <= kPi + 1e-9;
}

}  // namespace

InradiusResult inradius(const ConvexBody& body) {
    body.validate();
    const std::vector<Point>& P = body.vertices;
    const std::size_t n = P.size();
    const double scale = body.scale();

    struct Edge {
        Point a;    // unit outward normal, negated inward normal
        double b;   // a . p + t <= b
    };
    std::vector<Edge> edges(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point e = P[(i + 1) % n] - P[i];
        const Point inward = Point(-e.y(), e.x()).normalized();  // ccw
        edges[i].a = -inward;
        edges[i].b = -inward.dot(P[i]);
    }
    auto clearance = [&](const Point& p) {
        double t = std::numeric_limits<double>::infinity();
        for (const Edge& ed : edges) t = std::min(t, ed.b - ed.a.dot(p));
        return t;
    };

    Point lo = P[0], hi = P[0];
    for (const Point& p : P) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }

    std::vector<Row> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].a = {edges[i].a.x(), edges[i].a.y(), 1.0};
        rows[i].b = edges[i].b;
    }
    Box box;
    box.lo = {lo.x(), lo.y(), 0.0};
    box.hi = {hi.x(), hi.y(), scale};

    std::mt19937 rng(0xc4ebc4ebu);
    std::array<double, 3> z{};
    try {
        z = seidel(3, {0.0, 0.0, 1.0}, rows, box, rng, 1e-11 * scale);
    } catch (const Infeasible&) {
        throw InvariantViolation("inradius: LP infeasible on a validated convex body");
    }

    Point best_p(z[0], z[1]);
    double best_t = clearance(best_p);

    // Active-set polish: re-solve the 3x3 systems of the most binding edge
    // triples exactly and keep the best globally feasible candidate.
    for (int attempt = 0; attempt < 2; ++attempt) {
        const std::size_t K = attempt == 0 ? 14 : 40;
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::partial_sort(idx.begin(), idx.begin() + std::min(K, n), idx.end(),
                          [&](std::size_t i, std::size_t j) {
                              return edges[i].b - edges[i].a.dot(best_p) <
                                     edges[j].b - edges[j].a.dot(best_p);
                          });
        const std::size_t m = std::min(K, n);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                for (std::size_t k = j + 1; k < m; ++k) {
                    Eigen::Matrix3d M;
                    Eigen::Vector3d rhs;
                    std::size_t rows3[3] = {idx[i], idx[j], idx[k]};
                    for (int rI = 0; rI < 3; ++rI) {
                        const Edge& ed = edges[rows3[rI]];
                        M.row(rI) << ed.a.x(), ed.a.y(), 1.0;
                        rhs[rI] = ed.b;
                    }
                    if (std::abs(M.determinant()) < 1e-13) continue;
                    const Eigen::Vector3d cand = M.colPivHouseholderQr().solve(rhs);
                    const Point pc(cand[0], cand[1]);
                    const double tc = clearance(pc);
                    if (tc > best_t) {
                        best_t = tc;
                        best_p = pc;
                    }
                }
            }
        }
        // KKT certificate: the active outward normals must surround the origin.
        std::vector<Point> active;
        for (const Edge& ed : edges) {
            if (ed.b - ed.a.dot(best_p) <= best_t + 1e-9 * scale) active.push_back(ed.a);
        }
        if (origin_in_hull(active)) {
            InradiusResult res;
            res.radius = best_t;
            res.center = best_p;
            return res;
        }
    }
    throw InvariantViolation("inradius: could not certify the Chebyshev center");
}

}  // namespace elastica::geom
