#include "stochgeo/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace stochgeo {

bool solve_dense(std::vector<double>& A, std::vector<double>& b, int n, double tol) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
        if (std::abs(A[piv * n + col]) < tol) return false;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(A[piv * n + c], A[col * n + c]);
            std::swap(b[piv], b[col]);
        }
        double inv = 1.0 / A[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            double f = A[r * n + col] * inv;
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A[r * n + c] * b[c];
        b[r] = s / A[r * n + r];
    }
    return true;
}

namespace {

double det_small(std::vector<double> M, int n) {
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(M[r * n + col]) > std::abs(M[piv * n + col])) piv = r;
        if (M[piv * n + col] == 0.0) return 0.0;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(M[piv * n + c], M[col * n + c]);
            det = -det;
        }
        det *= M[col * n + col];
        double inv = 1.0 / M[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            double f = M[r * n + col] * inv;
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) M[r * n + c] -= f * M[col * n + c];
        }
    }
    return det;
}

}  // namespace

Vec generalized_cross(const std::vector<Vec>& edges) {
    const int d = edges.empty() ? 0 : edges[0].dim();
    assert(static_cast<int>(edges.size()) == d - 1);
    Vec n(d);
    // cofactor expansion along the "missing" row
    std::vector<double> minor((d - 1) * (d - 1));
    for (int skip = 0; skip < d; ++skip) {
        int mc = 0;
        for (int c = 0; c < d; ++c) {
            if (c == skip) continue;
            for (int r = 0; r < d - 1; ++r) minor[r * (d - 1) + mc] = edges[r][c];
            ++mc;
        }
        double cof = det_small(minor, d - 1);
        n[skip] = ((skip % 2) == 0) ? cof : -cof;
    }
    return n;
}

std::vector<Vec> gram_schmidt(const std::vector<Vec>& vs, bool* degenerate, double cond_tol) {
    if (degenerate) *degenerate = false;
    std::vector<Vec> out;
    out.reserve(vs.size());
    for (const Vec& v : vs) {
        double in_norm = v.norm();
        Vec w = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : out) w -= b * w.dot(b);
        double res = w.norm();
        if (in_norm == 0.0 || res < cond_tol * in_norm) {
            if (degenerate) *degenerate = true;
            continue;
        }
        out.push_back(w / res);
    }
    return out;
}

int affine_dim(const std::vector<Vec>& pts, double rel_tol) {
    if (pts.empty()) return -1;
    if (pts.size() == 1) return 0;
    std::vector<Vec> diffs;
    diffs.reserve(pts.size() - 1);
    double scale = 0.0;
    for (size_t i = 1; i < pts.size(); ++i) {
        diffs.push_back(pts[i] - pts[0]);
        scale = std::max(scale, diffs.back().norm());
    }
    if (scale == 0.0) return 0;
    std::vector<Vec> basis;
    for (const Vec& v : diffs) {
        Vec w = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : basis) w -= b * w.dot(b);
        if (w.norm() > rel_tol * scale) basis.push_back(w / w.norm());
    }
    return static_cast<int>(basis.size());
}

std::vector<Vec> orthogonal_complement(const std::vector<Vec>& vs, int d) {
    bool degen = false;
    std::vector<Vec> basis = gram_schmidt(vs, &degen);
    std::vector<Vec> out;
    for (int axis = 0; axis < d && static_cast<int>(basis.size()) < d; ++axis) {
        Vec w = Vec::unit(d, axis);
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : basis) w -= b * w.dot(b);
        double res = w.norm();
        if (res > 1e-9) {
            Vec u = w / res;
            basis.push_back(u);
            out.push_back(u);
        }
    }
    return out;
}

double simplex_volume(const std::vector<Vec>& v) {
    const int k = static_cast<int>(v.size()) - 1;
    if (k <= 0) return 0.0;
    // Gram determinant of edge vectors; exact in the simplex's affine hull.
    std::vector<double> G(k * k);
    std::vector<Vec> e;
    e.reserve(k);
    for (int i = 1; i <= k; ++i) e.push_back(v[i] - v[0]);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) G[i * k + j] = e[i].dot(e[j]);
    double g = det_small(G, k);
    if (g <= 0.0) return 0.0;
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return std::sqrt(g) / fact;
}

LeastSquaresFit weighted_least_squares(const std::vector<std::vector<double>>& X,
                                       const std::vector<double>& y,
                                       const std::vector<double>& sigma) {
    const int m = static_cast<int>(X.size());
    const int p = m ? static_cast<int>(X[0].size()) : 0;
    assert(m >= p && p >= 1);

    double min_pos = 0.0;
    for (double s : sigma)
        if (s > 0.0 && (min_pos == 0.0 || s < min_pos)) min_pos = s;
    std::vector<double> w(m);
    bool all_exact = (min_pos == 0.0);
    for (int i = 0; i < m; ++i) {
        double s = (sigma[i] > 0.0) ? sigma[i] : (all_exact ? 1.0 : min_pos);
        w[i] = 1.0 / (s * s);
    }

    std::vector<double> XtWX(p * p, 0.0), XtWy(p, 0.0);
    for (int i = 0; i < m; ++i)
        for (int a = 0; a < p; ++a) {
            XtWy[a] += w[i] * X[i][a] * y[i];
            for (int b = 0; b < p; ++b) XtWX[a * p + b] += w[i] * X[i][a] * X[i][b];
        }

    // invert XtWX column by column for the parameter covariance
    std::vector<double> cov(p * p, 0.0);
    for (int col = 0; col < p; ++col) {
        std::vector<double> A = XtWX, e(p, 0.0);
        e[col] = 1.0;
        if (!solve_dense(A, e, p, 1e-300)) throw IllConditioned("least squares: singular normal matrix");
        for (int r = 0; r < p; ++r) cov[r * p + col] = e[r];
    }

    LeastSquaresFit fit;
    fit.coeff.assign(p, 0.0);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) fit.coeff[a] += cov[a * p + b] * XtWy[b];

    if (all_exact) {
        // no prior error scale: report residual-based errors (0 for exact fits)
        double rss = 0.0;
        for (int i = 0; i < m; ++i) {
            double pred = 0.0;
            for (int a = 0; a < p; ++a) pred += X[i][a] * fit.coeff[a];
            rss += (y[i] - pred) * (y[i] - pred);
        }
        double s2 = (m > p) ? rss / (m - p) : 0.0;
        fit.coeff_stderr.assign(p, 0.0);
        for (int a = 0; a < p; ++a) fit.coeff_stderr[a] = std::sqrt(std::max(0.0, s2 * cov[a * p + a]));
    } else {
        fit.coeff_stderr.assign(p, 0.0);
        for (int a = 0; a < p; ++a) fit.coeff_stderr[a] = std::sqrt(std::max(0.0, cov[a * p + a]));
    }
    return fit;
}

}  // namespace stochgeo
