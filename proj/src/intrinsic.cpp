#include "stochgeo/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "stochgeo/geometry.hpp"
#include "stochgeo/linalg.hpp"

namespace stochgeo {

double kubota_constant(int d, int s) {
    double binom = 1.0;
    for (int i = 1; i <= s; ++i) binom = binom * (d - s + i) / i;
    return binom * unit_ball_volume(d) / (unit_ball_volume(s) * unit_ball_volume(d - s));
}

double projection_volume(const std::vector<Vec>& pts, const Frame& A) {
    const int s = A.subspace_dim();
    if (s == 1) {
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (const Vec& p : pts) {
            double c = p.dot(A.basis[0]);
            if (first) {
                lo = hi = c;
                first = false;
            } else {
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
        }
        return hi - lo;
    }
    std::vector<Vec> proj = project_points(pts, A);
    if (s == 2 && proj.size() == 3) {
        Vec a = proj[1] - proj[0], b = proj[2] - proj[0];
        return std::abs(a[0] * b[1] - a[1] * b[0]) / 2.0;
    }
    try {
        return convex_hull(proj, s).volume();
    } catch (const DegenerateInput&) {
        return 0.0;  // flat projection
    }
}

IntrinsicEstimate kubota_intrinsic(const Polytope& P, int s, int n_frames, RngStream& rng) {
    const int d = P.dim();
    if (s < 1 || s > d) throw OutOfRange("kubota_intrinsic: s outside [1,d]");
    if (s == d) return IntrinsicEstimate{s, P.volume(), 0.0, IntrinsicMethod::kubota};
    std::vector<Frame> frames;
    frames.reserve(n_frames);
    for (int i = 0; i < n_frames; ++i) frames.push_back(haar_subspace(d, s, rng));
    return kubota_intrinsic(P, s, frames);
}

IntrinsicEstimate kubota_intrinsic(const Polytope& P, int s, const std::vector<Frame>& frames) {
    return kubota_intrinsic_points(P.vertices(), P.dim(), s, frames);
}

IntrinsicEstimate kubota_intrinsic_points(const std::vector<Vec>& hull_vertices, int d, int s,
                                          const std::vector<Frame>& frames) {
    if (s < 1 || s > d) throw OutOfRange("kubota_intrinsic: s outside [1,d]");
    const double c = kubota_constant(d, s);
    if (s == d) {
        double v = convex_hull(hull_vertices, d).volume();
        return IntrinsicEstimate{s, v, 0.0, IntrinsicMethod::kubota};
    }
    const int n = static_cast<int>(frames.size());
    if (n < 1) throw OutOfRange("kubota_intrinsic: need at least one frame");
    double mean = 0.0, m2 = 0.0;
    long k = 0;
    for (const Frame& A : frames) {
        double v = projection_volume(hull_vertices, A);
        ++k;
        double delta = v - mean;
        mean += delta / k;
        m2 += delta * (v - mean);
    }
    double se = (n > 1) ? std::sqrt(m2 / (n - 1) / n) : 0.0;
    return IntrinsicEstimate{s, c * mean, c * se, IntrinsicMethod::kubota};
}

namespace {

// lambda_s of a face given by its vertex list, measured inside its affine hull
double face_measure(const Polytope& P, const std::vector<int>& face, int s,
                    std::vector<Vec>* affine_basis_out) {
    std::vector<Vec> pts;
    pts.reserve(face.size());
    for (int v : face) pts.push_back(P.vertices()[v]);
    std::vector<Vec> diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    bool degen = false;
    std::vector<Vec> basis = gram_schmidt(diffs, &degen, 1e-12);
    if (affine_basis_out) *affine_basis_out = basis;
    if (static_cast<int>(basis.size()) != s) return 0.0;
    if (s == 1) {
        double lo = 0.0, hi = 0.0;
        for (size_t i = 0; i < pts.size(); ++i) {
            double c = (pts[i] - pts[0]).dot(basis[0]);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        return hi - lo;
    }
    std::vector<Vec> coords;
    coords.reserve(pts.size());
    for (const Vec& p : pts) {
        Vec q(s);
        for (int j = 0; j < s; ++j) q[j] = (p - pts[0]).dot(basis[j]);
        coords.push_back(q);
    }
    if (static_cast<int>(coords.size()) == s + 1) {
        return simplex_volume(coords);
    }
    return convex_hull(coords, s).volume();
}

}  // namespace

IntrinsicEstimate exact_intrinsic(const Polytope& P, int s, int angle_samples, RngStream& rng) {
    const int d = P.dim();
    if (s < 1 || s > d - 1) throw OutOfRange("exact_intrinsic: s outside [1,d-1]");
    FaceSet faces = enumerate_faces(P, s);

    double total = 0.0, var = 0.0;
    const int codim = d - s;
    for (const auto& face : faces.faces) {
        std::vector<Vec> basis;
        double measure = face_measure(P, face, s, &basis);
        if (measure == 0.0) continue;

        double gamma = 0.0, gamma_var = 0.0;
        if (codim == 1) {
            gamma = 0.5;
        } else if (codim == 2) {
            // ridge: the normal cone is spanned by the two adjacent facet normals
            const Facet* f1 = nullptr;
            const Facet* f2 = nullptr;
            for (const Facet& f : P.facets()) {
                if (std::includes(f.vertices.begin(), f.vertices.end(), face.begin(), face.end())) {
                    if (!f1)
                        f1 = &f;
                    else if (!f2)
                        f2 = &f;
                }
            }
            if (!f1 || !f2) continue;  // not a ridge of the lattice
            double cosang = std::clamp(f1->normal.dot(f2->normal), -1.0, 1.0);
            gamma = std::acos(cosang) / (2.0 * M_PI);
        } else {
            // Monte Carlo in the orthogonal complement of aff F
            std::vector<Vec> comp = orthogonal_complement(basis, d);
            const Vec& z = P.vertices()[face[0]];
            long hits = 0;
            for (int it = 0; it < angle_samples; ++it) {
                Vec u(d);
                for (const Vec& b : comp) u += b * rng.next_gaussian();
                double un = u.norm();
                if (un < 1e-12) continue;
                u = u / un;
                double href = u.dot(z);
                bool inside = true;
                for (const Vec& v : P.vertices()) {
                    if (u.dot(v) > href + 1e-9) {
                        inside = false;
                        break;
                    }
                }
                if (inside) ++hits;
            }
            gamma = static_cast<double>(hits) / angle_samples;
            gamma_var = gamma * (1.0 - gamma) / angle_samples;
        }
        total += measure * gamma;
        var += measure * measure * gamma_var;
    }
    return IntrinsicEstimate{s, total, std::sqrt(var), IntrinsicMethod::external_angle};
}

std::vector<IntrinsicEstimate> steiner_fit_oracle(const std::vector<Vec>& vertices, int d,
                                                  const std::vector<double>& lambda_grid,
                                                  long hit_samples, RngStream& rng) {
    if (static_cast<int>(lambda_grid.size()) < d + 1)
        throw OutOfRange("steiner_fit_oracle: need at least d+1 lambda values");
    std::vector<double> grid = lambda_grid;
    std::sort(grid.begin(), grid.end());
    for (double l : grid)
        if (l < 0.0) throw OutOfRange("steiner_fit_oracle: negative lambda");
    double spread = grid.back() - grid.front();
    if (!(spread > 1e-3 * std::max(1.0, grid.back())))
        throw IllConditioned("steiner_fit_oracle: lambda grid spread too small for a stable fit");

    // bounding box of the vertex set
    Vec lo = vertices[0], hi = vertices[0];
    for (const Vec& v : vertices)
        for (int i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }

    std::vector<double> vol(grid.size()), sigma(grid.size());
    for (size_t gi = 0; gi < grid.size(); ++gi) {
        double lam = grid[gi];
        double boxvol = 1.0;
        Vec blo = lo, bhi = hi;
        for (int i = 0; i < d; ++i) {
            blo[i] -= lam;
            bhi[i] += lam;
            boxvol *= (bhi[i] - blo[i]);
        }
        RngStream sub = rng.substream(gi);
        long hits = 0;
        for (long it = 0; it < hit_samples; ++it) {
            Vec y(d);
            for (int i = 0; i < d; ++i) y[i] = blo[i] + (bhi[i] - blo[i]) * sub.next_unit();
            if (distance_to_hull(vertices, y) <= lam + 1e-12) ++hits;
        }
        double p = static_cast<double>(hits) / hit_samples;
        vol[gi] = p * boxvol;
        sigma[gi] = boxvol * std::sqrt(std::max(p * (1.0 - p), 1.0 / hit_samples) / hit_samples);
    }

    // fit vol(lam) = sum_s lam^{d-s} kappa_{d-s} V_s
    std::vector<std::vector<double>> X(grid.size(), std::vector<double>(d + 1));
    for (size_t i = 0; i < grid.size(); ++i)
        for (int s = 0; s <= d; ++s)
            X[i][s] = std::pow(grid[i], d - s) * unit_ball_volume(d - s);
    LeastSquaresFit fit = weighted_least_squares(X, vol, sigma);

    std::vector<IntrinsicEstimate> out;
    out.reserve(d + 1);
    for (int s = 0; s <= d; ++s)
        out.push_back(IntrinsicEstimate{s, fit.coeff[s], fit.coeff_stderr[s],
                                        IntrinsicMethod::steiner_fit});
    return out;
}

std::vector<IntrinsicEstimate> steiner_fit_oracle(const Polytope& P,
                                                  const std::vector<double>& lambda_grid,
                                                  long hit_samples, RngStream& rng) {
    return steiner_fit_oracle(P.vertices(), P.dim(), lambda_grid, hit_samples, rng);
}

IntrinsicEstimate reference_intrinsic(const BodySpec& body, int s, long n_frames,
                                      std::uint64_t seed) {
    const int d = body.dim();
    if (s < 1 || s > d) throw OutOfRange("reference_intrinsic: s outside [1,d]");
    if (body.is_ball()) {
        double v = kubota_constant(d, s) * unit_ball_volume(s);
        return IntrinsicEstimate{s, v, 0.0, IntrinsicMethod::kubota};
    }
    if (s == d) return IntrinsicEstimate{s, body.volume(), 0.0, IntrinsicMethod::kubota};

    static std::mutex cache_mutex;
    static std::map<std::pair<std::vector<double>, int>, IntrinsicEstimate> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({body.semiaxes, s});
        if (it != cache.end()) return it->second;
    }

    RngStream rng(seed, 0x9e11b0cULL + static_cast<std::uint64_t>(s));
    double mean = 0.0, m2 = 0.0;
    const double ks = unit_ball_volume(s);
    for (long k = 1; k <= n_frames; ++k) {
        Frame A = haar_subspace(d, s, rng);
        // lambda_s(E|A) = kappa_s sqrt(det Q^T diag(a^2) Q)
        std::vector<double> G(s * s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) {
                double acc = 0.0;
                for (int r = 0; r < d; ++r)
                    acc += A.basis[i][r] * body.semiaxes[r] * body.semiaxes[r] * A.basis[j][r];
                G[i * s + j] = acc;
            }
        // determinant via Cholesky-free elimination (matrix is SPD and tiny)
        double det = 1.0;
        for (int col = 0; col < s; ++col) {
            int piv = col;
            for (int r = col + 1; r < s; ++r)
                if (std::abs(G[r * s + col]) > std::abs(G[piv * s + col])) piv = r;
            if (piv != col) {
                for (int c2 = 0; c2 < s; ++c2) std::swap(G[piv * s + c2], G[col * s + c2]);
                det = -det;
            }
            det *= G[col * s + col];
            for (int r = col + 1; r < s; ++r) {
                double f = G[r * s + col] / G[col * s + col];
                for (int c2 = col; c2 < s; ++c2) G[r * s + c2] -= f * G[col * s + c2];
            }
        }
        double v = ks * std::sqrt(std::max(det, 0.0));
        double delta = v - mean;
        mean += delta / k;
        m2 += delta * (v - mean);
    }
    double c = kubota_constant(d, s);
    IntrinsicEstimate est{s, c * mean, c * std::sqrt(m2 / (n_frames - 1) / n_frames),
                          IntrinsicMethod::kubota};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache[{body.semiaxes, s}] = est;
    }
    return est;
}

}  // namespace stochgeo
