#include "elastica/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace elastica::geom {

namespace {

double cross2(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

void TangentAngleArc::validate() const {
    if (theta.size() < 2) throw InvariantViolation("arc: needs at least 2 samples");
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw InvariantViolation("arc: length must be finite and positive");
    }
    for (Eigen::Index i = 0; i + 1 < theta.size(); ++i) {
        if (!std::isfinite(theta[i])) throw InvariantViolation("arc: non-finite theta", i);
        if (theta[i + 1] - theta[i] < -1e-12) {
            throw InvariantViolation("arc: theta not nondecreasing", i + 1);
        }
    }
}

std::vector<Point> reconstruct_curve(const TangentAngleArc& arc) {
    arc.validate();
    const Eigen::Index n = arc.n();
    const double h = arc.ds();
    std::vector<Point> pts(static_cast<std::size_t>(n));
    pts[0] = arc.start;
    double cp = std::cos(arc.theta[0]), sp = std::sin(arc.theta[0]);
    for (Eigen::Index i = 1; i < n; ++i) {
        const double c = std::cos(arc.theta[i]), s = std::sin(arc.theta[i]);
        pts[i].x() = pts[i - 1].x() + 0.5 * h * (cp + c);
        pts[i].y() = pts[i - 1].y() + 0.5 * h * (sp + s);
        cp = c;
        sp = s;
    }
    return pts;
}

double elastic_energy(const TangentAngleArc& arc) {
    arc.validate();
    const double h = arc.ds();
    double acc = 0.0;
    for (Eigen::Index i = 0; i + 1 < arc.n(); ++i) {
        const double d = arc.theta[i + 1] - arc.theta[i];
        acc += d * d;
    }
    return 0.5 * acc / h;
}

double ConvexBody::scale() const {
    if (vertices.empty()) return 0.0;
    Point lo = vertices.front(), hi = vertices.front();
    for (const Point& p : vertices) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return (hi - lo).norm();
}

void ConvexBody::validate() const {
    const std::size_t n = vertices.size();
    if (n < 3) throw InvariantViolation("body: fewer than 3 vertices");
    const double sc = scale();
    if (!(sc > 0.0)) throw InvariantViolation("body: degenerate extent");
    const double eps_convex = 1e-12 * sc * sc;
    const double min_edge = 1e-14 * sc;

    double area2 = 0.0;
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices[i];
        const Point& b = vertices[(i + 1) % n];
        const Point& c = vertices[(i + 2) % n];
        const Point e1 = b - a, e2 = c - b;
        if (e1.norm() <= min_edge) {
            throw InvariantViolation("body: coincident consecutive vertices", long(i));
        }
        if (cross2(e1, e2) < -eps_convex) {
            throw InvariantViolation("body: non-convex turn at vertex", long((i + 1) % n));
        }
        area2 += cross2(a, b);
        turning += std::atan2(cross2(e1, e2), e1.dot(e2));
    }
    if (area2 <= 0.0) throw InvariantViolation("body: vertices not counterclockwise");
    // A convex ccw loop turns by exactly 2 pi; anything else is not simple.
    if (std::abs(turning - 2.0 * kPi) > 1e-6) {
        throw InvariantViolation("body: total turning != 2 pi (non-simple polygon)");
    }
}

double perimeter(const ConvexBody& body) {
    const std::size_t n = body.vertices.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += (body.vertices[(i + 1) % n] - body.vertices[i]).norm();
    }
    return acc;
}

double area(const ConvexBody& body) {
    const std::size_t n = body.vertices.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += cross2(body.vertices[i], body.vertices[(i + 1) % n]);
    }
    return 0.5 * acc;
}

double max_turning_angle(const ConvexBody& body) {
    const std::size_t n = body.vertices.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point e1 = body.vertices[(i + 1) % n] - body.vertices[i];
        const Point e2 = body.vertices[(i + 2) % n] - body.vertices[(i + 1) % n];
        worst = std::max(worst, std::abs(std::atan2(cross2(e1, e2), e1.dot(e2))));
    }
    return worst;
}

double polygon_energy(const ConvexBody& body) {
    body.validate();
    const std::size_t n = body.vertices.size();
    double acc = 0.0;
    double worst = 0.0;
    double prev_len = (body.vertices[0] - body.vertices[n - 1]).norm();
    for (std::size_t i = 0; i < n; ++i) {
        const Point e = body.vertices[(i + 1) % n] - body.vertices[i];
        const double len = e.norm();
        const Point ep = body.vertices[i] - body.vertices[(i + n - 1) % n];
        const double dphi = std::atan2(cross2(ep, e), ep.dot(e));
        acc += dphi * dphi / (0.5 * (prev_len + len));
        worst = std::max(worst, std::abs(dphi));
        prev_len = len;
    }
    if (worst > 0.3) {
        std::cerr << "polygon_energy: sampling too coarse for a curvature estimate "
                     "(max turning angle "
                  << worst << " rad)\n";
    }
    return 0.5 * acc;
}

double diameter(const ConvexBody& body) {
    body.validate();
    const std::vector<Point>& P = body.vertices;
    const std::size_t n = P.size();
    auto d2 = [&](std::size_t i, std::size_t j) { return (P[i] - P[j]).squaredNorm(); };
    // Rotating calipers: for each edge walk the antipodal vertex forward.
    double best = 0.0;
    std::size_t j = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t i2 = (i + 1) % n;
        const Point e = P[i2] - P[i];
        while (true) {
            const std::size_t j2 = (j + 1) % n;
            // advance while the next vertex is farther from the line of edge i
            if (cross2(e, P[j2] - P[i]) > cross2(e, P[j] - P[i])) {
                best = std::max({best, d2(i, j2), d2(i2, j2)});
                j = j2;
            } else {
                break;
            }
        }
        best = std::max({best, d2(i, j), d2(i2, j)});
        // plateau (edge parallel to farthest direction): consider the next one too
        const std::size_t j2 = (j + 1) % n;
        if (cross2(e, P[j2] - P[i]) == cross2(e, P[j] - P[i])) {
            best = std::max({best, d2(i, j2), d2(i2, j2)});
        }
    }
    return std::sqrt(best);
}

double circumradius(const ConvexBody& body) { return min_enclosing_circle(body).radius; }

void FunctionalsReport::validate() const {
    for (double v : {E, P, A, D, R, r}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw InvariantViolation("functionals: negative or non-finite field");
        }
    }
    const double tol = 1e-9;
    if (r > R * (1.0 + tol)) throw InvariantViolation("functionals: r > R");
    if (D > 2.0 * R * (1.0 + tol)) throw InvariantViolation("functionals: D > 2R");
    if (P > kPi * D * (1.0 + tol)) throw InvariantViolation("functionals: P > pi D");
}

FunctionalsReport functionals(const ConvexBody& body) {
    body.validate();
    FunctionalsReport f;
    f.E = polygon_energy(body);
    f.P = perimeter(body);
    f.A = area(body);
    f.D = diameter(body);
    f.R = circumradius(body);
    f.r = inradius(body).radius;
    f.EP = f.E * f.P;
    f.E2A = f.E * f.E * f.A;
    f.ED = f.E * f.D;
    f.ER = f.E * f.R;
    f.Er = f.E * f.r;
    f.validate();
    return f;
}

}  // namespace elastica::geom
