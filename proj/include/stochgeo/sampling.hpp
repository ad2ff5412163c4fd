#pragma once

#include <vector>

#include "stochgeo/geometry.hpp"
#include "stochgeo/rng.hpp"
#include "stochgeo/vec.hpp"

namespace stochgeo {

/// Mother body for the experiments: the unit ball or an axis-aligned
/// ellipsoid. Ellipsoids are the designated smooth non-ball test family;
/// their principal curvature bounds are available in closed form.
struct BodySpec {
    std::vector<double> semiaxes;  // size d; all 1.0 for the ball

    static BodySpec ball(int d) { return ellipsoid(std::vector<double>(d > 0 ? d : 0, 1.0)); }
    static BodySpec ellipsoid(std::vector<double> axes);

    int dim() const { return static_cast<int>(semiaxes.size()); }
    bool is_ball() const;
    double volume() const;

    /// Global bounds on the principal curvatures of the boundary:
    /// min a_i / max a_j^2 and max a_i / min a_j^2.
    double min_curvature() const;
    double max_curvature() const;

    bool contains(const Vec& p, double tol = 0.0) const;
};

/// Exact uniform draw from the unit ball B^d (Gaussian direction, U^{1/d} radius).
Vec uniform_ball(int d, RngStream& rng);

/// Uniform draw from the body (diagonal linear image of a ball draw).
Vec uniform_body(const BodySpec& spec, RngStream& rng);

/// Uniform draw from the unit sphere S^{d-1}.
Vec uniform_sphere(int d, RngStream& rng);

/// Haar-distributed s-dimensional linear subspace of R^d: Gram-Schmidt
/// orthonormalization of s independent Gaussian vectors, resampled on the
/// (probability ~0) event that the draw is numerically degenerate.
Frame haar_subspace(int d, int s, RngStream& rng);

/// Uniform draw from a simplex given by its vertices (Dirichlet weights).
Vec uniform_simplex(const std::vector<Vec>& vertices, RngStream& rng);

}  // namespace stochgeo
