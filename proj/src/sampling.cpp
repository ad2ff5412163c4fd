#include "stochgeo/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "stochgeo/linalg.hpp"

namespace stochgeo {

BodySpec BodySpec::ellipsoid(std::vector<double> axes) {
    if (axes.empty() || axes.size() > static_cast<size_t>(kMaxDim))
        throw OutOfRange("BodySpec: dimension outside [1,8]");
    for (double a : axes)
        if (!(a > 0.0)) throw OutOfRange("BodySpec: semiaxes must be positive");
    return BodySpec{std::move(axes)};
}

bool BodySpec::is_ball() const {
    for (double a : semiaxes)
        if (a != 1.0) return false;
    return true;
}

double BodySpec::volume() const {
    double v = unit_ball_volume(dim());
    for (double a : semiaxes) v *= a;
    return v;
}

double BodySpec::min_curvature() const {
    double amin = *std::min_element(semiaxes.begin(), semiaxes.end());
    double amax = *std::max_element(semiaxes.begin(), semiaxes.end());
    return amin / (amax * amax);
}

double BodySpec::max_curvature() const {
    double amin = *std::min_element(semiaxes.begin(), semiaxes.end());
    double amax = *std::max_element(semiaxes.begin(), semiaxes.end());
    return amax / (amin * amin);
}

bool BodySpec::contains(const Vec& p, double tol) const {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) {
        double c = p[i] / semiaxes[i];
        s += c * c;
    }
    return s <= 1.0 + tol;
}

Vec uniform_sphere(int d, RngStream& rng) {
    if (d < 1 || d > kMaxDim) throw OutOfRange("uniform_sphere: dimension outside [1,8]");
    for (;;) {
        Vec g(d);
        for (int i = 0; i < d; ++i) g[i] = rng.next_gaussian();
        double n = g.norm();
        if (n > 1e-100) return g / n;
    }
}

Vec uniform_ball(int d, RngStream& rng) {
    if (d < 1 || d > kMaxDim) throw OutOfRange("uniform_ball: dimension outside [1,8]");
    Vec u = uniform_sphere(d, rng);
    double r = std::pow(rng.next_unit_pos(), 1.0 / d);
    return u * r;
}

Vec uniform_body(const BodySpec& spec, RngStream& rng) {
    Vec p = uniform_ball(spec.dim(), rng);
    for (int i = 0; i < spec.dim(); ++i) p[i] *= spec.semiaxes[i];
    return p;
}

Frame haar_subspace(int d, int s, RngStream& rng) {
    if (!(1 <= s && s <= d)) throw OutOfRange("haar_subspace: need 1 <= s <= d");
    for (;;) {
        std::vector<Vec> g;
        g.reserve(s);
        for (int i = 0; i < s; ++i) {
            Vec v(d);
            for (int j = 0; j < d; ++j) v[j] = rng.next_gaussian();
            g.push_back(v);
        }
        bool degen = false;
        std::vector<Vec> basis = gram_schmidt(g, &degen, 1e-8);
        if (!degen && static_cast<int>(basis.size()) == s) return Frame(std::move(basis));
        // near-degenerate Gaussian draw: resample
    }
}

Vec uniform_simplex(const std::vector<Vec>& vertices, RngStream& rng) {
    const int k = static_cast<int>(vertices.size());
    // Dirichlet(1,..,1) via normalized exponentials
    double total = 0.0;
    std::vector<double> w(k);
    for (int i = 0; i < k; ++i) {
        w[i] = -std::log(rng.next_unit_pos());
        total += w[i];
    }
    Vec p(vertices[0].dim());
    for (int i = 0; i < k; ++i) p += vertices[i] * (w[i] / total);
    return p;
}

}  // namespace stochgeo
