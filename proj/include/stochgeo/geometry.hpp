#pragma once

#include <vector>

#include "stochgeo/vec.hpp"

namespace stochgeo {

/// Result of slicing the unit ball by the hyperplane <y,x> = 1-t:
/// the cap, its base hyperplane, and the base (d-1)-ball's center and radius.
struct CapGeometry {
    Cap cap;
    Hyperplane base_plane;
    Vec base_center;
    double base_radius = 0.0;
};

/// Cap of the unit ball with boundary direction x and height t.
/// base_center = (1-t)x, base_radius = sqrt(t(2-t)).
CapGeometry cap_from_direction(const Vec& x, double t);

/// Minimum angle between the unit vector z and the subspace spanned by A,
/// i.e. arccos of the norm of the projection of z onto A. Range [0, pi/2].
double angle_to_subspace(const Vec& z, const Frame& A);

/// Coordinates of the orthogonal projections of `pts` onto span(A),
/// expressed in A's basis (so the outputs live in R^s).
std::vector<Vec> project_points(const std::vector<Vec>& pts, const Frame& A);

/// Single point variant of project_points.
Vec project_point(const Vec& p, const Frame& A);

/// The simplex-and-cone construction inside a cap C(x,t): apex w_0 = x, base
/// vertices w_1..w_d spanning a regular (d-1)-simplex inscribed in the cap's
/// base sphere, the shrunken corner simplices at each vertex (homothety
/// ratio 1/(4d)), and the chord radii of the inner and outer spherical
/// neighborhoods of x that sandwich the normal cone at the apex corner.
struct SimplexFamily {
    Vec apex;                                  // w_0 = x
    std::vector<Vec> base;                     // w_1..w_d
    std::vector<std::vector<Vec>> corner;      // corner simplex j = 0..d, d+1 vertices each
    double inner_radius = 0.0;                 // inner neighborhood chord, sqrt(t)/8
    double outer_radius = 0.0;                 // outer neighborhood chord, 2 d sqrt(t)

    const std::vector<Vec>& simplex_vertices(int j) const { return corner[j]; }
};

/// Angular radius of the spherical neighborhood S^{d-1} cap (x + r B^d),
/// i.e. 2 asin(r/2), clamped to pi for r >= 2.
double chord_to_angle(double r);

}  // namespace stochgeo
