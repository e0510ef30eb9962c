#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "elastica/geometry.hpp"

namespace elastica::geom {

namespace {

struct Disk {
    Point c{0.0, 0.0};
    double r2 = -1.0;  // squared radius, negative = empty
    std::array<Point, 3> support{};
    int n_support = 0;
};

Disk disk2(const Point& a, const Point& b) {
    Disk d;
    d.c = 0.5 * (a + b);
    d.r2 = (a - d.c).squaredNorm();
    d.support = {a, b, Point{0, 0}};
    d.n_support = 2;
    return d;
}

Disk disk3(const Point& a, const Point& b, const Point& c, double scale) {
    // circumcenter from the two perpendicular-bisector equations
    Eigen::Matrix2d M;
    M.row(0) = (b - a).transpose();
    M.row(1) = (c - a).transpose();
    const double det = M.determinant();
    if (std::abs(det) <= 1e-14 * scale * scale) {
        // collinear: the diametral disk of the farthest pair
        Disk best = disk2(a, b);
        for (const Disk& d : {disk2(a, c), disk2(b, c)}) {
            if (d.r2 > best.r2) best = d;
        }
        return best;
    }
    Eigen::Vector2d rhs;
    rhs[0] = 0.5 * (b.squaredNorm() - a.squaredNorm());
    rhs[1] = 0.5 * (c.squaredNorm() - a.squaredNorm());
    Disk d;
    d.c = M.colPivHouseholderQr().solve(rhs);
    d.r2 = std::max({(a - d.c).squaredNorm(), (b - d.c).squaredNorm(), (c - d.c).squaredNorm()});
    d.support = {a, b, c};
    d.n_support = 3;
    return d;
}

bool inside(const Disk& d, const Point& p, double tol2) {
    return d.r2 >= 0.0 && (p - d.c).squaredNorm() <= d.r2 + tol2;
}

}  // namespace

Circle min_enclosing_circle(const ConvexBody& body) {
    body.validate();
    std::vector<Point> pts = body.vertices;
    const double scale = body.scale();
    const double tol2 = 1e-13 * scale * scale;
    std::mt19937 rng(0x6d696e63u);
    std::shuffle(pts.begin(), pts.end(), rng);

    const std::size_t n = pts.size();
    Disk d = disk2(pts[0], pts[1 % n]);
    for (std::size_t i = 2; i < n; ++i) {
        if (inside(d, pts[i], tol2)) continue;
        d = disk2(pts[0], pts[i]);
        for (std::size_t j = 1; j < i; ++j) {
            if (inside(d, pts[j], tol2)) continue;
            d = disk2(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (inside(d, pts[k], tol2)) continue;
                d = disk3(pts[i], pts[j], pts[k], scale);
            }
        }
    }

    Circle out{d.c, std::sqrt(std::max(d.r2, 0.0))};
    // certificate: support points on the circle, everything inside
    const double slack = 1e-12 * scale;
    for (int s = 0; s < d.n_support; ++s) {
        if (std::abs((d.support[std::size_t(s)] - out.center).norm() - out.radius) > 4.0 * slack) {
            throw InvariantViolation("min_enclosing_circle: support point off the circle");
        }
    }
    for (const Point& p : body.vertices) {
        if ((p - out.center).norm() > out.radius + 4.0 * slack) {
            throw InvariantViolation("min_enclosing_circle: vertex outside the certified circle");
        }
    }
    return out;
}

}  // namespace elastica::geom
