#pragma once

#include <Eigen/Dense>
#include <vector>

#include "elastica/common.hpp"

namespace elastica::geom {

using Point = Eigen::Vector2d;

// An arc encoded as a nondecreasing tangent angle theta sampled on the
// uniform arclength grid s_i = i L / (n-1). Curvature is theta'(s).
struct TangentAngleArc {
    double length = 0.0;     // total arclength L > 0
    Eigen::VectorXd theta;   // n >= 2 samples, radians, nondecreasing
    Point start{0.0, 0.0};

    Eigen::Index n() const { return theta.size(); }
    double ds() const { return length / double(theta.size() - 1); }
    void validate() const;  // throws InvariantViolation
};

// Reconstructs the curve x(s) = start + int_0^s (cos theta, sin theta) du by
// the trapezoid rule on the uniform grid. Second-order accurate.
std::vector<Point> reconstruct_curve(const TangentAngleArc& arc);

// 1/2 sum over cells of (d theta)^2 / ds. Exact for affine theta.
double elastic_energy(const TangentAngleArc& arc);

// Closed discrete convex curve: >= 3 vertices, counterclockwise, implicitly
// closed. Intended as a fine sampling of a C^{1,1} boundary.
struct ConvexBody {
    std::vector<Point> vertices;

    double scale() const;   // bounding-box diagonal
    void validate() const;  // convexity/orientation/edge-length invariants
};

double perimeter(const ConvexBody& body);
double area(const ConvexBody& body);  // shoelace, positive for ccw

// Discrete bending energy 1/2 sum (turning angle)^2 / (half-edge average).
// Consistent with 1/2 int k^2 ds for fine samplings of smooth boundaries;
// diverges under refinement on genuinely cornered polygons. Warns on stderr
// when any turning angle exceeds 0.3 rad.
double polygon_energy(const ConvexBody& body);

double max_turning_angle(const ConvexBody& body);

// Exact max pairwise vertex distance via rotating calipers, O(n).
double diameter(const ConvexBody& body);

struct Circle {
    Point center{0.0, 0.0};
    double radius = 0.0;
};

// Minimum enclosing circle, randomized incremental (expected O(n)). The
// result is certified: <= 3 support points lie on the circle and every
// vertex is inside within 1e-12 * scale.
Circle min_enclosing_circle(const ConvexBody& body);
double circumradius(const ConvexBody& body);

struct InradiusResult {
    double radius = 0.0;
    Point center{0.0, 0.0};
};

// Chebyshev center of the convex polygon: maximize t subject to the center
// lying at signed distance >= t from every edge line, solved as a
// 3-variable linear program. Degenerate optima (stadium bodies) return an
// arbitrary optimal center.
InradiusResult inradius(const ConvexBody& body);

struct FunctionalsReport {
    double E = 0, P = 0, A = 0, D = 0, R = 0, r = 0;
    // Scale-invariant products E*P, E^2*A, E*D, E*R, E*r.
    double EP = 0, E2A = 0, ED = 0, ER = 0, Er = 0;

    void validate() const;  // nonnegativity, r <= R, D <= 2R, P <= pi D
};

FunctionalsReport functionals(const ConvexBody& body);

}  // namespace elastica::geom
