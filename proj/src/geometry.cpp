#include "stochgeo/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace stochgeo {

CapGeometry cap_from_direction(const Vec& x, double t) {
    if (!(t > 0.0 && t < 1.0)) throw OutOfRange("cap_from_direction: height outside (0,1)");
    CapGeometry g;
    g.cap = Cap(x, t);  // validates and renormalizes x
    const Vec& u = g.cap.direction;
    g.base_plane = Hyperplane(u, 1.0 - t);
    g.base_center = u * (1.0 - t);
    g.base_radius = std::sqrt(t * (2.0 - t));
    return g;
}

double angle_to_subspace(const Vec& z, const Frame& A) {
    double n2 = 0.0;
    for (const Vec& b : A.basis) {
        double c = z.dot(b);
        n2 += c * c;
    }
    double n = std::sqrt(std::min(1.0, n2));
    return std::acos(n);
}

Vec project_point(const Vec& p, const Frame& A) {
    Vec q(A.subspace_dim());
    for (int j = 0; j < A.subspace_dim(); ++j) q[j] = p.dot(A.basis[j]);
    return q;
}

std::vector<Vec> project_points(const std::vector<Vec>& pts, const Frame& A) {
    std::vector<Vec> out;
    out.reserve(pts.size());
    for (const Vec& p : pts) out.push_back(project_point(p, A));
    return out;
}

double chord_to_angle(double r) {
    if (r >= 2.0) return M_PI;
    return 2.0 * std::asin(r / 2.0);
}

}  // namespace stochgeo
