#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "stochgeo/errors.hpp"

namespace stochgeo {

inline constexpr int kMaxDim = 8;

/// Fixed-capacity Euclidean vector with a runtime dimension in [1, 8].
/// Value type, no allocation; the dimension travels with the value and all
/// binary operations assert consistency.
class Vec {
  public:
    Vec() : d_(0) { c_.fill(0.0); }
    explicit Vec(int dim) : d_(dim) {
        assert(dim >= 1 && dim <= kMaxDim);
        c_.fill(0.0);
    }
    Vec(std::initializer_list<double> xs) : d_(static_cast<int>(xs.size())) {
        assert(d_ >= 1 && d_ <= kMaxDim);
        c_.fill(0.0);
        int i = 0;
        for (double x : xs) c_[i++] = x;
    }
    static Vec from(const std::vector<double>& xs) {
        Vec v(static_cast<int>(xs.size()));
        for (int i = 0; i < v.d_; ++i) v.c_[i] = xs[i];
        return v;
    }
    static Vec unit(int dim, int axis) {
        Vec v(dim);
        v.c_[axis] = 1.0;
        return v;
    }

    int dim() const { return d_; }
    double operator[](int i) const { return c_[i]; }
    double& operator[](int i) { return c_[i]; }

    Vec operator+(const Vec& o) const {
        assert(d_ == o.d_);
        Vec r(d_);
        for (int i = 0; i < d_; ++i) r.c_[i] = c_[i] + o.c_[i];
        return r;
    }
    Vec operator-(const Vec& o) const {
        assert(d_ == o.d_);
        Vec r(d_);
        for (int i = 0; i < d_; ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }
    Vec operator*(double s) const {
        Vec r(d_);
        for (int i = 0; i < d_; ++i) r.c_[i] = c_[i] * s;
        return r;
    }
    friend Vec operator*(double s, const Vec& v) { return v * s; }
    Vec operator/(double s) const { return *this * (1.0 / s); }
    Vec operator-() const { return *this * -1.0; }
    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < d_; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < d_; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < d_; ++i) c_[i] *= s;
        return *this;
    }

    double dot(const Vec& o) const {
        assert(d_ == o.d_);
        double s = 0.0;
        for (int i = 0; i < d_; ++i) s += c_[i] * o.c_[i];
        return s;
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    double dist(const Vec& o) const { return (*this - o).norm(); }

    Vec normalized() const {
        double n = norm();
        assert(n > 0.0);
        return *this / n;
    }

    bool finite() const {
        for (int i = 0; i < d_; ++i)
            if (!std::isfinite(c_[i])) return false;
        return true;
    }

  private:
    std::array<double, kMaxDim> c_;
    int d_;
};

/// Volume of the unit j-ball, kappa_j = pi^{j/2} / Gamma(j/2 + 1).
/// Computed by the two-step recurrence kappa_j = kappa_{j-2} * 2*pi / j.
inline double unit_ball_volume(int j) {
    assert(j >= 0);
    double even = 1.0;  // kappa_0
    double odd = 2.0;   // kappa_1
    for (int k = 2; k <= j; ++k) {
        double next = (k % 2 == 0 ? even : odd) * 2.0 * M_PI / k;
        (k % 2 == 0 ? even : odd) = next;
    }
    return j % 2 == 0 ? even : odd;
}

inline constexpr double kUnitNormTol = 1e-12;

/// {y : <y, normal> = offset} with a unit normal.
struct Hyperplane {
    Vec normal;
    double offset = 0.0;

    Hyperplane() = default;
    Hyperplane(const Vec& n, double off) : normal(n), offset(off) {
        double len = normal.norm();
        if (std::abs(len - 1.0) > 1e-6)
            throw OutOfRange("Hyperplane: normal is not unit length");
        normal = normal / len;  // renormalize residual drift
    }

    double signed_dist(const Vec& p) const { return p.dot(normal) - offset; }
};

/// Spherical cap of the unit ball: boundary direction x on S^{d-1} and
/// height t in (0,1). The cap is {y in B^d : <y, direction> >= 1 - height}.
struct Cap {
    Vec direction;
    double height = 0.0;

    Cap() = default;
    Cap(const Vec& x, double t) : direction(x), height(t) {
        if (!(t > 0.0 && t < 1.0)) throw OutOfRange("Cap: height must lie in (0,1)");
        double len = direction.norm();
        if (std::abs(len - 1.0) > 1e-6)
            throw OutOfRange("Cap: direction is not unit length");
        direction = direction / len;
    }

    bool contains(const Vec& p, double tol = 1e-12) const {
        return p.norm2() <= 1.0 + tol && p.dot(direction) >= 1.0 - height - tol;
    }
};

/// Orthonormal basis of an s-dimensional linear subspace of R^d,
/// i.e. a representative of a point of the Grassmannian G(d,s).
struct Frame {
    std::vector<Vec> basis;

    Frame() = default;
    explicit Frame(std::vector<Vec> b) : basis(std::move(b)) {}

    int ambient_dim() const { return basis.empty() ? 0 : basis[0].dim(); }
    int subspace_dim() const { return static_cast<int>(basis.size()); }

    /// Max deviation of pairwise inner products from the Kronecker delta.
    double orthonormality_defect() const {
        double worst = 0.0;
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = i; j < basis.size(); ++j) {
                double target = (i == j) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(basis[i].dot(basis[j]) - target));
            }
        return worst;
    }
};

}  // namespace stochgeo
