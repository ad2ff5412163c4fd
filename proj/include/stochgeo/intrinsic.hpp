#pragma once

#include <vector>

#include "stochgeo/hull.hpp"
#include "stochgeo/rng.hpp"
#include "stochgeo/sampling.hpp"
#include "stochgeo/vec.hpp"

namespace stochgeo {

enum class IntrinsicMethod { kubota, external_angle, steiner_fit };

struct IntrinsicEstimate {
    int s = 0;
    double value = 0.0;
    double std_error = 0.0;  // 0 for exact evaluations
    IntrinsicMethod method = IntrinsicMethod::kubota;
};

/// Kubota normalization constant: V_s = c(d,s) * mean projection volume,
/// c(d,s) = binom(d,s) kappa_d / (kappa_s kappa_{d-s}).
double kubota_constant(int d, int s);

/// lambda_s of the hull of the projections of `pts` onto span(A).
/// Degenerate (flat) projections count as zero volume.
double projection_volume(const std::vector<Vec>& pts, const Frame& A);

/// V_s by Monte Carlo projection averaging over N Haar frames.
/// s = d short-circuits to the exact volume.
IntrinsicEstimate kubota_intrinsic(const Polytope& P, int s, int n_frames, RngStream& rng);

/// Same estimator evaluated on a caller-supplied frame set (used to share
/// frames across the replications of one experiment level).
IntrinsicEstimate kubota_intrinsic(const Polytope& P, int s, const std::vector<Frame>& frames);
IntrinsicEstimate kubota_intrinsic_points(const std::vector<Vec>& hull_vertices, int d, int s,
                                          const std::vector<Frame>& frames);

/// V_s by the external-angle representation: sum over s-faces F of
/// lambda_s(F) * gamma(F,P). Angles are closed-form for codimension 1 and 2
/// and Monte Carlo (M Gaussian directions in the normal space) otherwise.
IntrinsicEstimate exact_intrinsic(const Polytope& P, int s, int angle_samples, RngStream& rng);

/// All V_0..V_d by fitting the Steiner polynomial to hit-or-miss estimates
/// of vol(P + lambda B^d) on the given lambda grid. Works for
/// lower-dimensional bodies since only the vertex set is used.
std::vector<IntrinsicEstimate> steiner_fit_oracle(const std::vector<Vec>& vertices, int d,
                                                  const std::vector<double>& lambda_grid,
                                                  long hit_samples, RngStream& rng);
std::vector<IntrinsicEstimate> steiner_fit_oracle(const Polytope& P,
                                                  const std::vector<double>& lambda_grid,
                                                  long hit_samples, RngStream& rng);

/// Reference V_s of a mother body. Balls are closed-form. Ellipsoid volumes
/// are closed-form; other ellipsoid indices use Kubota with the exact
/// projected-ellipsoid volume kappa_s sqrt(det Q^T A^2 Q) per frame, which
/// needs no polytopal approximation. Estimates are cached per (body, s).
IntrinsicEstimate reference_intrinsic(const BodySpec& body, int s, long n_frames = 2000000,
                                      std::uint64_t seed = 0x5eedULL);

}  // namespace stochgeo
