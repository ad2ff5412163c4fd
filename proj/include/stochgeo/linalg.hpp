#pragma once

#include <vector>

#include "stochgeo/vec.hpp"

namespace stochgeo {

/// Solve A x = b in place by Gaussian elimination with partial pivoting.
/// A is n x n row-major. Returns false when a pivot falls below `tol`.
bool solve_dense(std::vector<double>& A, std::vector<double>& b, int n, double tol = 1e-13);

/// Vector orthogonal to the span of the d-1 columns `edges` in R^d, computed
/// as the generalized cross product (cofactor expansion). The result's norm
/// equals (d-1)! times the (d-1)-volume of the spanned parallelepiped.
Vec generalized_cross(const std::vector<Vec>& edges);

/// Gram-Schmidt with one re-orthogonalization pass. Returns the orthonormal
/// set; vectors whose residual drops below `cond_tol` times their input norm
/// are reported through `degenerate`.
std::vector<Vec> gram_schmidt(const std::vector<Vec>& vs, bool* degenerate,
                              double cond_tol = 1e-8);

/// Affine dimension of a point set, judged with a relative tolerance on the
/// Gram-Schmidt residuals of the difference vectors.
int affine_dim(const std::vector<Vec>& pts, double rel_tol = 1e-9);

/// Orthonormal basis of the orthogonal complement of span(vs) in R^d.
std::vector<Vec> orthogonal_complement(const std::vector<Vec>& vs, int d);

/// Volume of the simplex with vertices `v` (size k+1, affine dimension k)
/// inside its own affine hull.
double simplex_volume(const std::vector<Vec>& v);

/// Ordinary/weighted least squares for y ~ X beta with per-row standard
/// deviations sigma (sigma[i] <= 0 means "exact", handled as the smallest
/// positive weight present, or unit weight when none is).
struct LeastSquaresFit {
    std::vector<double> coeff;
    std::vector<double> coeff_stderr;
};
LeastSquaresFit weighted_least_squares(const std::vector<std::vector<double>>& X,
                                       const std::vector<double>& y,
                                       const std::vector<double>& sigma);

}  // namespace stochgeo
