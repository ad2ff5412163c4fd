#pragma once

#include <vector>

#include "stochgeo/geometry.hpp"
#include "stochgeo/rng.hpp"
#include "stochgeo/vec.hpp"

namespace stochgeo {

/// Volume of the height-t cap of the unit ball B^d, t in [0,2]:
/// kappa_{d-1} * integral_{1-t}^{1} (1-u^2)^{(d-1)/2} du, evaluated by
/// adaptive quadrature to 1e-10 relative accuracy.
double cap_volume(int d, double t);

/// Inverse of cap_volume in the height: the h with cap_volume(d,h) = v,
/// by bisection to 1e-12. Requires 0 <= v <= kappa_d.
double cap_height_for_volume(int d, double v);

/// Wet part of the unit ball at cap-volume parameter t: the annulus of
/// points whose minimal containing cap has volume <= t.
struct WetPartProfile {
    double t = 0.0;                // cap-volume parameter
    double cap_height = 0.0;       // h with cap_volume(d,h) = t
    double floating_radius = 0.0;  // r = 1 - h; floating body is r B^d
    double wet_volume = 0.0;       // kappa_d (1 - r^d)
};
WetPartProfile wet_part(int d, double t);

/// Minimal containing-cap volume of a point of the ball: v(x) = capvol(d, 1-|x|).
double v_function(int d, const Vec& x);

/// The regular-simplex construction inside the cap C(x,t); see SimplexFamily.
SimplexFamily cap_construction(const Vec& x, double t);

/// Haar frames conditioned on meeting the outer spherical neighborhood of
/// the cap direction, kept by rejection, together with the measured
/// acceptance probability of the condition.
struct HatVsFrames {
    std::vector<Frame> accepted;
    double accept_prob = 0.0;
    long tries = 0;
};
HatVsFrames hatvs_frames(int d, int s, const Vec& x, double t, int n_accept, RngStream& rng);

/// Restricted Grassmannian integral of lambda_s([z0,F] | L) over frames L
/// meeting the outer neighborhood of x, estimated as (conditional mean) x
/// (acceptance probability).
double hat_vs_given(const Vec& z0, const std::vector<Vec>& F, const HatVsFrames& frames);
double hat_vs(const Vec& z0, const std::vector<Vec>& F, const Vec& x, double t, int s,
              int n_frames, RngStream& rng);

/// Membership in the dual cone of the outer spherical neighborhood of x,
/// i.e. directions making angle >= pi/2 + (neighborhood angular radius)
/// with x.
bool in_outer_dual_cone(const Vec& y, const Vec& x, double t);

/// Constructive economic cap covering of the wet part of the unit ball.
/// t is the cap-volume parameter of a unit-volume-normalized body; caps of
/// height beta*h cover the wet part while the shrunken height-h/beta caps
/// stay pairwise disjoint.
struct CapCover {
    double t = 0.0;             // normalized parameter (fraction of kappa_d)
    double t_abs = 0.0;         // cap-volume parameter in ball units
    double cap_height = 0.0;    // h with cap_volume(d,h) = t_abs
    double outer_height = 0.0;  // beta * h
    double inner_height = 0.0;  // h / beta
    int dim = 0;
    int m = 0;
    std::vector<Vec> centers;
    double wet_volume = 0.0;
    double ratio = 0.0;  // m * t_abs / wet_volume
};
CapCover economic_cover(int d, double t, RngStream& rng);

/// Fraction of uniformly sampled wet-part points covered by some outer cap.
double cover_coverage_fraction(const CapCover& cover, long n_samples, RngStream& rng);

/// Exact pairwise angular-separation test of the inner caps.
bool cover_inner_disjoint(const CapCover& cover);

/// Fraction of random caps disjoint from the floating body that are entirely
/// contained in some cover cap (the statistical audit of the covering's
/// third property).
double cover_cap_containment_fraction(const CapCover& cover, long n_samples, RngStream& rng);

}  // namespace stochgeo
