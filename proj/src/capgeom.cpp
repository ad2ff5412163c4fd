#include "stochgeo/capgeom.hpp"

#include <algorithm>
#include <cmath>

#include "stochgeo/hull.hpp"
#include "stochgeo/linalg.hpp"
#include "stochgeo/sampling.hpp"

namespace stochgeo {

namespace {

double adaptive_simpson(double (*f)(double, int), int d, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm, d), frm = f(rm, d);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, d, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, d, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double sin_pow(double theta, int d) { return std::pow(std::sin(theta), d); }

}  // namespace

double cap_volume(int d, double t) {
    if (d < 1) throw OutOfRange("cap_volume: d >= 1 required");
    if (t < 0.0 || t > 2.0) throw OutOfRange("cap_volume: height outside [0,2]");
    if (t == 0.0) return 0.0;
    if (d == 1) return std::min(t, 2.0);
    // substitute u = cos(theta); the integrand sin^d(theta) is smooth
    double theta_t = std::acos(1.0 - t);
    double fa = sin_pow(0.0, d), fm = sin_pow(theta_t / 2.0, d), fb = sin_pow(theta_t, d);
    double whole = theta_t / 6.0 * (fa + 4.0 * fm + fb);
    double scale = std::max(whole, 1e-300);
    double integral =
        adaptive_simpson(&sin_pow, d, 0.0, theta_t, fa, fm, fb, whole, 1e-10 * scale, 52);
    return unit_ball_volume(d - 1) * integral;
}

double cap_height_for_volume(int d, double v) {
    double kd = unit_ball_volume(d);
    if (v < 0.0 || v > kd) throw OutOfRange("cap_height_for_volume: volume outside [0, kappa_d]");
    double lo = 0.0, hi = 2.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (cap_volume(d, mid) < v)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

WetPartProfile wet_part(int d, double t) {
    double kd = unit_ball_volume(d);
    if (!(t > 0.0) || t > kd / 2.0 + 1e-15)
        throw OutOfRange("wet_part: parameter outside (0, kappa_d/2]");
    WetPartProfile w;
    w.t = t;
    w.cap_height = cap_height_for_volume(d, t);
    w.floating_radius = std::max(0.0, 1.0 - w.cap_height);
    w.wet_volume = kd * (1.0 - std::pow(w.floating_radius, d));
    return w;
}

double v_function(int d, const Vec& x) {
    double r = x.norm();
    if (r > 1.0) throw OutOfRange("v_function: point outside the ball");
    return cap_volume(d, 1.0 - r);
}

namespace {

/// Vertices of a regular m-simplex in R^m, centered at the origin with
/// circumradius R: the centered standard-basis construction in R^{m+1}
/// expressed in an orthonormal basis of the hyperplane orthogonal to 1.
std::vector<Vec> regular_simplex_coords(int m, double R) {
    std::vector<Vec> diffs;
    Vec ones(m + 1);
    for (int i = 0; i <= m; ++i) ones[i] = 1.0;
    std::vector<Vec> basis = orthogonal_complement({ones.normalized()}, m + 1);
    // points e_i - centroid, written in that basis, then rescaled
    std::vector<Vec> out;
    out.reserve(m + 1);
    double scale = R / std::sqrt(static_cast<double>(m) / (m + 1));
    for (int i = 0; i <= m; ++i) {
        Vec p(m + 1);
        p[i] = 1.0;
        for (int j = 0; j <= m; ++j) p[j] -= 1.0 / (m + 1);
        Vec q(m);
        for (int j = 0; j < m; ++j) q[j] = p.dot(basis[j]) * scale;
        out.push_back(q);
    }
    return out;
}

}  // namespace

SimplexFamily cap_construction(const Vec& x, double t) {
    const int d = x.dim();
    if (d < 2) throw OutOfRange("cap_construction: d >= 2 required");
    CapGeometry g = cap_from_direction(x, t);
    const Vec& u = g.cap.direction;

    std::vector<Vec> span = orthogonal_complement({u}, d);  // basis of u^perp
    std::vector<Vec> base_coords = regular_simplex_coords(d - 1, g.base_radius);

    SimplexFamily fam;
    fam.apex = u;
    fam.base.reserve(d);
    for (const Vec& q : base_coords) {
        Vec w = g.base_center;
        for (int j = 0; j < d - 1; ++j) w += span[j] * q[j];
        fam.base.push_back(w);
    }
    std::vector<Vec> simplex;
    simplex.reserve(d + 1);
    simplex.push_back(fam.apex);
    for (const Vec& w : fam.base) simplex.push_back(w);

    const double ratio = 1.0 / (4.0 * d);
    fam.corner.resize(d + 1);
    for (int j = 0; j <= d; ++j) {
        const Vec& c = simplex[j];
        fam.corner[j].reserve(d + 1);
        for (int k = 0; k <= d; ++k) fam.corner[j].push_back(c + (simplex[k] - c) * ratio);
    }
    fam.inner_radius = std::sqrt(t) / 8.0;
    fam.outer_radius = 2.0 * d * std::sqrt(t);
    return fam;
}

HatVsFrames hatvs_frames(int d, int s, const Vec& x, double t, int n_accept, RngStream& rng) {
    if (s < 1 || s > d) throw OutOfRange("hatvs_frames: s outside [1,d]");
    const double outer_chord = 2.0 * d * std::sqrt(t);
    const double psi = chord_to_angle(std::min(outer_chord, 2.0));
    HatVsFrames out;
    out.accepted.reserve(n_accept);
    const long max_tries = std::max(2000000L, 400L * n_accept);
    long tries = 0;
    while (static_cast<int>(out.accepted.size()) < n_accept && tries < max_tries) {
        ++tries;
        Frame A = haar_subspace(d, s, rng);
        if (angle_to_subspace(x, A) <= psi) out.accepted.push_back(std::move(A));
    }
    out.tries = tries;
    out.accept_prob = static_cast<double>(out.accepted.size()) / tries;
    if (out.accepted.empty() || out.accept_prob < 1e-6)
        throw TooSmallCone("hatvs_frames: rejection efficiency below 1e-6");
    return out;
}

double hat_vs_given(const Vec& z0, const std::vector<Vec>& F, const HatVsFrames& frames) {
    std::vector<Vec> pts;
    pts.reserve(F.size() + 1);
    pts.push_back(z0);
    for (const Vec& f : F) pts.push_back(f);
    double mean = 0.0;
    long k = 0;
    for (const Frame& A : frames.accepted) {
        double v;
        const int s = A.subspace_dim();
        if (s == 1) {
            double lo = 0.0, hi = 0.0;
            bool first = true;
            for (const Vec& p : pts) {
                double c = p.dot(A.basis[0]);
                if (first)
                    lo = hi = c, first = false;
                else
                    lo = std::min(lo, c), hi = std::max(hi, c);
            }
            v = hi - lo;
        } else {
            std::vector<Vec> proj = project_points(pts, A);
            if (s == 2 && proj.size() == 3) {
                Vec a = proj[1] - proj[0], b = proj[2] - proj[0];
                v = std::abs(a[0] * b[1] - a[1] * b[0]) / 2.0;
            } else {
                try {
                    v = convex_hull(proj, s).volume();
                } catch (const DegenerateInput&) {
                    v = 0.0;
                }
            }
        }
        mean += (v - mean) / ++k;
    }
    return mean * frames.accept_prob;
}

double hat_vs(const Vec& z0, const std::vector<Vec>& F, const Vec& x, double t, int s,
              int n_frames, RngStream& rng) {
    HatVsFrames frames = hatvs_frames(x.dim(), s, x, t, n_frames, rng);
    return hat_vs_given(z0, F, frames);
}

bool in_outer_dual_cone(const Vec& y, const Vec& x, double t) {
    double yn = y.norm();
    if (yn == 0.0) return true;
    const int d = x.dim();
    double psi = chord_to_angle(std::min(2.0 * d * std::sqrt(t), 2.0));
    if (psi >= M_PI / 2.0) return false;  // dual of more than a hemisphere is {0}
    // angle(y,x) >= pi/2 + psi  <=>  <y,x>/|y| <= -sin(psi)
    return y.dot(x) / yn <= -std::sin(psi) + 1e-12;
}

CapCover economic_cover(int d, double t, RngStream& rng) {
    const double beta = 8.0;
    if (d < 2 || d > kMaxDim) throw OutOfRange("economic_cover: dimension outside [2,8]");
    const double kd = unit_ball_volume(d);
    if (!(t > 0.0)) throw OutOfRange("economic_cover: t must be positive");
    CapCover cover;
    cover.dim = d;
    cover.t = t;
    cover.t_abs = t * kd;
    if (cover.t_abs > kd / 2.0) throw OutOfRange("economic_cover: t too large");
    WetPartProfile wet = wet_part(d, cover.t_abs);
    cover.cap_height = wet.cap_height;
    cover.outer_height = beta * wet.cap_height;
    cover.inner_height = wet.cap_height / beta;
    cover.wet_volume = wet.wet_volume;
    if (cover.outer_height >= 1.0)
        throw OutOfRange("economic_cover: enlarged caps exceed a half-ball; t too large");

    // greedy maximal packing on the sphere at separation 2 sqrt(h)
    const double sep = 2.0 * std::sqrt(wet.cap_height);
    const double sep2 = sep * sep;
    long consecutive_rejects = 0;
    long proposals = 0;
    const long hard_cap = 5000000;
    while (proposals < hard_cap) {
        long needed = std::max<long>(2000, 30 * static_cast<long>(cover.centers.size()));
        if (consecutive_rejects >= needed) break;
        ++proposals;
        Vec q = uniform_sphere(d, rng);
        bool clear = true;
        for (const Vec& y : cover.centers) {
            if ((q - y).norm2() < sep2) {
                clear = false;
                break;
            }
        }
        if (clear) {
            cover.centers.push_back(q);
            consecutive_rejects = 0;
        } else {
            ++consecutive_rejects;
        }
    }
    cover.m = static_cast<int>(cover.centers.size());
    cover.ratio = cover.m * cover.t_abs / cover.wet_volume;
    return cover;
}

double cover_coverage_fraction(const CapCover& cover, long n_samples, RngStream& rng) {
    const int d = cover.dim;
    const double r = 1.0 - cover.cap_height;
    const double thresh = 1.0 - cover.outer_height;
    long covered = 0;
    for (long i = 0; i < n_samples; ++i) {
        Vec u = uniform_sphere(d, rng);
        double rho = std::pow(std::pow(r, d) + rng.next_unit() * (1.0 - std::pow(r, d)), 1.0 / d);
        Vec p = u * rho;
        for (const Vec& y : cover.centers) {
            if (p.dot(y) >= thresh) {
                ++covered;
                break;
            }
        }
    }
    return static_cast<double>(covered) / n_samples;
}

bool cover_inner_disjoint(const CapCover& cover) {
    // caps of angular radius theta are disjoint iff centers are > 2 theta apart
    double theta = std::acos(1.0 - cover.inner_height);
    double max_cos = std::cos(2.0 * theta);
    for (size_t i = 0; i < cover.centers.size(); ++i)
        for (size_t j = i + 1; j < cover.centers.size(); ++j)
            if (cover.centers[i].dot(cover.centers[j]) > max_cos + 1e-12) return false;
    return true;
}

double cover_cap_containment_fraction(const CapCover& cover, long n_samples, RngStream& rng) {
    const int d = cover.dim;
    long contained = 0;
    for (long i = 0; i < n_samples; ++i) {
        Vec xdir = uniform_sphere(d, rng);
        double tp = rng.next_unit_pos() * cover.cap_height;  // disjoint from the floating body
        double theta_c = std::acos(1.0 - tp);
        for (const Vec& y : cover.centers) {
            double ang = std::acos(std::clamp(xdir.dot(y), -1.0, 1.0));
            // C(xdir,tp) inside C(y,T) iff cos(ang + theta_c) >= 1 - T
            if (ang + theta_c <= M_PI &&
                std::cos(ang + theta_c) >= 1.0 - cover.outer_height - 1e-12) {
                ++contained;
                break;
            }
        }
    }
    return static_cast<double>(contained) / n_samples;
}

}  // namespace stochgeo
