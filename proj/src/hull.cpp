#include "stochgeo/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "stochgeo/linalg.hpp"

namespace stochgeo {

namespace {
constexpr double kVisTol = 1e-10;     // strict-beyond threshold
constexpr double kOrientTol = 1e-10;  // on the normalized determinant
}  // namespace

// ---------------------------------------------------------------------------
// Polytope

Polytope::Polytope(int dim, std::vector<Vec> vertices, std::vector<Facet> facets,
                   std::vector<std::vector<int>> boundary_simplices, Vec interior)
    : dim_(dim),
      vertices_(std::move(vertices)),
      facets_(std::move(facets)),
      tris_(std::move(boundary_simplices)),
      interior_(interior) {}

double Polytope::volume() const {
    double vol = 0.0;
    std::vector<Vec> simplex(dim_);
    for (const auto& tri : tris_) {
        for (int i = 0; i < dim_; ++i) simplex[i] = vertices_[tri[i]];
        double area = simplex_volume(simplex);
        // cone from the interior point over each boundary simplex
        Vec e0 = simplex[0] - interior_;
        std::vector<Vec> edges;
        edges.reserve(dim_ - 1);
        for (int i = 1; i < dim_; ++i) edges.push_back(simplex[i] - simplex[0]);
        Vec n = generalized_cross(edges);
        double nn = n.norm();
        if (nn == 0.0) continue;
        double h = std::abs(e0.dot(n)) / nn;
        vol += h * area / dim_;
    }
    return vol;
}

double Polytope::boundary_measure() const {
    double total = 0.0;
    std::vector<Vec> simplex(dim_);
    for (const auto& tri : tris_) {
        for (int i = 0; i < dim_; ++i) simplex[i] = vertices_[tri[i]];
        total += simplex_volume(simplex);
    }
    return total;
}

double Polytope::min_facet_offset() const {
    double best = 0.0;
    bool first = true;
    for (const Facet& f : facets_) {
        if (f.offset <= 0.0) throw OriginOutside("min_facet_offset: origin not interior");
        if (first || f.offset < best) best = f.offset, first = false;
    }
    if (first) throw OriginOutside("min_facet_offset: empty polytope");
    return best;
}

bool Polytope::contains(const Vec& p, double tol) const {
    for (const Facet& f : facets_)
        if (p.dot(f.normal) > f.offset + tol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// HullBuilder

HullBuilder::HullBuilder(int dim) : d_(dim), interior_(dim) {
    if (dim < 1 || dim > kMaxDim) throw OutOfRange("HullBuilder: dimension outside [1,8]");
}

bool HullBuilder::insert(const Vec& p) {
    assert(p.dim() == d_);
    if (!p.finite()) throw DegenerateInput("insert: non-finite point");
    ++seen_;
    if (!initialized_) {
        pts_.push_back(p);
        init_pending_.push_back(static_cast<int>(pts_.size()) - 1);
        try_initialize();
        return true;
    }
    // quick interior rejection against the largest known inscribed ball
    if (p.norm() < inradius_lb_) return false;

    // find one visible facet
    int first_vis = -1;
    for (int fi = 0; fi < static_cast<int>(facets_.size()); ++fi) {
        if (facets_[fi].dead) continue;
        if (signed_excess(facets_[fi], p) > kVisTol) {
            first_vis = fi;
            break;
        }
    }
    if (first_vis < 0) return false;

    pts_.push_back(p);
    return insert_index(static_cast<int>(pts_.size()) - 1);
}

void HullBuilder::try_initialize() {
    // greedily grow an affinely independent seed set
    for (int idx : init_pending_) {
        if (static_cast<int>(init_indep_.size()) > d_) break;
        if (init_indep_.empty()) {
            init_indep_.push_back(idx);
            continue;
        }
        if (std::find(init_indep_.begin(), init_indep_.end(), idx) != init_indep_.end()) continue;
        Vec diff = pts_[idx] - pts_[init_indep_[0]];
        double dn = diff.norm();
        init_scale_ = std::max(init_scale_, dn);
        Vec w = diff;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : init_basis_) w -= b * w.dot(b);
        double res = w.norm();
        if (init_scale_ > 0.0 && res > 1e-9 * init_scale_) {
            init_basis_.push_back(w / res);
            init_indep_.push_back(idx);
        }
    }
    if (static_cast<int>(init_indep_.size()) == d_ + 1) build_initial_simplex();
}

int HullBuilder::make_facet(const std::array<int, kMaxDim>& verts) {
    BFacet f;
    f.v = verts;
    std::sort(f.v.begin(), f.v.begin() + d_);
    std::vector<Vec> edges;
    edges.reserve(d_ - 1);
    double scale = 1.0;
    const Vec& p0 = pts_[f.v[0]];
    for (int i = 1; i < d_; ++i) {
        edges.push_back(pts_[f.v[i]] - p0);
        scale *= edges.back().norm();
    }
    Vec n = (d_ == 1) ? Vec{1.0} : generalized_cross(edges);
    double nn = n.norm();
    if (!(scale > 0.0) || nn < kOrientTol * scale)
        throw DegenerateInput("convex_hull: near-coplanar facet below orientation tolerance");
    n = n / nn;
    double off = n.dot(p0);
    double side = interior_.dot(n) - off;
    if (std::abs(side) < 1e-14 * (1.0 + std::abs(off)))
        throw DegenerateInput("convex_hull: interior point on facet plane");
    if (side > 0.0) {
        n = -n;
        off = -off;
    }
    f.n = n;
    f.off = off;
    f.nb.fill(-1);
    facets_.push_back(std::move(f));
    ++live_count_;
    return static_cast<int>(facets_.size()) - 1;
}

void HullBuilder::build_initial_simplex() {
    interior_ = Vec(d_);
    for (int idx : init_indep_) interior_ += pts_[idx];
    interior_ = interior_ / static_cast<double>(d_ + 1);

    // facet j omits init_indep_[j]
    std::vector<int> facet_ids(d_ + 1);
    for (int j = 0; j <= d_; ++j) {
        std::array<int, kMaxDim> verts;
        verts.fill(-1);
        int m = 0;
        for (int i = 0; i <= d_; ++i)
            if (i != j) verts[m++] = init_indep_[i];
        facet_ids[j] = make_facet(verts);
    }
    // adjacency: the neighbor across the ridge omitting vertex u is the facet
    // whose omitted seed vertex is u
    std::map<int, int> facet_of_omitted;
    for (int j = 0; j <= d_; ++j) facet_of_omitted[init_indep_[j]] = facet_ids[j];
    for (int j = 0; j <= d_; ++j) {
        BFacet& f = facets_[facet_ids[j]];
        for (int i = 0; i < d_; ++i) f.nb[i] = facet_of_omitted.at(f.v[i]);
    }
    initialized_ = true;
    inradius_lb_ = 0.0;

    std::vector<int> pending = std::move(init_pending_);
    init_pending_.clear();
    for (int idx : pending) {
        if (std::find(init_indep_.begin(), init_indep_.end(), idx) != init_indep_.end()) continue;
        // replay buffered points through the normal path
        int first_vis = -1;
        for (int fi = 0; fi < static_cast<int>(facets_.size()); ++fi) {
            if (facets_[fi].dead) continue;
            if (signed_excess(facets_[fi], pts_[idx]) > kVisTol) {
                first_vis = fi;
                break;
            }
        }
        if (first_vis >= 0) insert_index(idx);
    }
}

bool HullBuilder::insert_index(int idx) {
    const Vec& p = pts_[idx];
    // collect the visible set by BFS over facet adjacency
    ++epoch_;
    std::vector<int> visible, stack;
    int start = -1;
    for (int fi = 0; fi < static_cast<int>(facets_.size()); ++fi) {
        if (facets_[fi].dead) continue;
        if (signed_excess(facets_[fi], p) > kVisTol) {
            start = fi;
            break;
        }
    }
    if (start < 0) return false;
    stack.push_back(start);
    facets_[start].mark = epoch_;
    while (!stack.empty()) {
        int fi = stack.back();
        stack.pop_back();
        visible.push_back(fi);
        for (int i = 0; i < d_; ++i) {
            int g = facets_[fi].nb[i];
            if (g < 0 || facets_[g].dead || facets_[g].mark == epoch_) continue;
            if (signed_excess(facets_[g], p) > kVisTol) {
                facets_[g].mark = epoch_;
                stack.push_back(g);
            }
        }
    }

    // horizon ridges: (visible facet, slot) whose neighbor is not visible
    struct Horizon {
        int facet, slot, outside;
    };
    std::vector<Horizon> horizon;
    for (int fi : visible)
        for (int i = 0; i < d_; ++i) {
            int g = facets_[fi].nb[i];
            if (g >= 0 && facets_[g].mark != epoch_) horizon.push_back({fi, i, g});
        }
    if (horizon.empty()) return false;  // numerically interior after all

    for (int fi : visible) {
        facets_[fi].dead = true;
        --live_count_;
    }

    // build the new cone of facets over the horizon
    std::map<std::array<int, kMaxDim>, std::pair<int, int>> open_ridges;
    std::vector<int> created;
    created.reserve(horizon.size());
    for (const Horizon& hz : horizon) {
        const BFacet& f = facets_[hz.facet];
        std::array<int, kMaxDim> verts;
        verts.fill(-1);
        int m = 0;
        for (int i = 0; i < d_; ++i)
            if (i != hz.slot) verts[m++] = f.v[i];
        verts[m++] = idx;
        int nf = make_facet(verts);
        created.push_back(nf);
        BFacet& g = facets_[hz.outside];
        BFacet& newf = facets_[nf];

        // pair with the surviving outside facet across the old ridge
        int slot_new = -1, slot_out = -1;
        for (int i = 0; i < d_; ++i)
            if (newf.v[i] == idx) slot_new = i;
        for (int i = 0; i < d_; ++i) {
            bool in_ridge = false;
            for (int j = 0; j < d_; ++j)
                if (j != slot_new && newf.v[j] == g.v[i]) in_ridge = true;
            if (!in_ridge) slot_out = i;
        }
        newf.nb[slot_new] = hz.outside;
        g.nb[slot_out] = nf;

        // pair sibling new facets across ridges containing the new point
        for (int i = 0; i < d_; ++i) {
            if (newf.v[i] == idx) continue;
            std::array<int, kMaxDim> key;
            key.fill(-1);
            int km = 0;
            for (int j = 0; j < d_; ++j)
                if (j != i && newf.v[j] != idx) key[km++] = newf.v[j];
            auto it = open_ridges.find(key);
            if (it == open_ridges.end()) {
                open_ridges.emplace(key, std::make_pair(nf, i));
            } else {
                facets_[nf].nb[i] = it->second.first;
                facets_[it->second.first].nb[it->second.second] = nf;
                open_ridges.erase(it);
            }
        }
    }
    if (!open_ridges.empty())
        throw DegenerateInput("convex_hull: horizon did not close (degenerate geometry)");

    // refresh the inscribed-ball bound; the stale value stays a valid lower
    // bound because the hull only grows
    if (++accepted_since_refresh_ >= 32) {
        accepted_since_refresh_ = 0;
        double r = 0.0;
        bool ok = true;
        bool first = true;
        for (const BFacet& f : facets_) {
            if (f.dead) continue;
            if (f.off <= 0.0) {
                ok = false;
                break;
            }
            if (first || f.off < r) r = f.off, first = false;
        }
        if (ok && !first) inradius_lb_ = std::max(inradius_lb_, r);
    }
    return true;
}

double HullBuilder::volume() const {
    if (!initialized_) return 0.0;
    double vol = 0.0;
    std::vector<Vec> simplex(d_);
    for (const BFacet& f : facets_) {
        if (f.dead) continue;
        for (int i = 0; i < d_; ++i) simplex[i] = pts_[f.v[i]];
        vol += (f.off - f.n.dot(interior_)) * simplex_volume(simplex) / d_;
    }
    return vol;
}

double HullBuilder::boundary_measure() const {
    if (!initialized_) return 0.0;
    double total = 0.0;
    std::vector<Vec> simplex(d_);
    for (const BFacet& f : facets_) {
        if (f.dead) continue;
        for (int i = 0; i < d_; ++i) simplex[i] = pts_[f.v[i]];
        total += simplex_volume(simplex);
    }
    return total;
}

double HullBuilder::inradius() const {
    if (!initialized_) throw OriginOutside("inradius: hull not initialized");
    double best = 0.0;
    bool first = true;
    for (const BFacet& f : facets_) {
        if (f.dead) continue;
        if (f.off <= 0.0) throw OriginOutside("inradius: origin not interior");
        if (first || f.off < best) best = f.off, first = false;
    }
    return best;
}

int HullBuilder::live_facet_count() const { return live_count_; }

std::vector<Vec> HullBuilder::vertex_points() const {
    std::vector<char> used(pts_.size(), 0);
    for (const BFacet& f : facets_) {
        if (f.dead) continue;
        for (int i = 0; i < d_; ++i) used[f.v[i]] = 1;
    }
    std::vector<Vec> out;
    for (size_t i = 0; i < pts_.size(); ++i)
        if (used[i]) out.push_back(pts_[i]);
    return out;
}

Polytope HullBuilder::snapshot() const {
    if (!initialized_)
        throw DegenerateInput("convex_hull: fewer than d+1 affinely independent points");

    std::vector<int> remap(pts_.size(), -1);
    std::vector<Vec> verts;
    std::vector<int> live;
    for (int fi = 0; fi < static_cast<int>(facets_.size()); ++fi) {
        if (facets_[fi].dead) continue;
        live.push_back(fi);
        for (int i = 0; i < d_; ++i) {
            int v = facets_[fi].v[i];
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(verts.size());
                verts.push_back(pts_[v]);
            }
        }
    }

    // merge coplanar ridge-connected simplicial facets into geometric facets
    std::vector<int> parent(live.size());
    for (size_t i = 0; i < live.size(); ++i) parent[i] = static_cast<int>(i);
    std::vector<int> live_index(facets_.size(), -1);
    for (size_t i = 0; i < live.size(); ++i) live_index[live[i]] = static_cast<int>(i);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (size_t i = 0; i < live.size(); ++i) {
        const BFacet& f = facets_[live[i]];
        for (int s = 0; s < d_; ++s) {
            int g = f.nb[s];
            if (g < 0 || facets_[g].dead) continue;
            const BFacet& fg = facets_[g];
            if (f.n.dot(fg.n) > 1.0 - 1e-9 && std::abs(f.off - fg.off) <= 1e-9 * (1.0 + std::abs(f.off))) {
                int a = find(static_cast<int>(i)), b = find(live_index[g]);
                if (a != b) parent[a] = b;
            }
        }
    }
    std::map<int, std::set<int>> groups;
    for (size_t i = 0; i < live.size(); ++i) {
        int root = find(static_cast<int>(i));
        for (int v = 0; v < d_; ++v) groups[root].insert(remap[facets_[live[i]].v[v]]);
    }
    std::vector<Facet> merged;
    merged.reserve(groups.size());
    for (auto& [root, vs] : groups) {
        Facet f;
        f.normal = facets_[live[root]].n;
        f.offset = facets_[live[root]].off;
        f.vertices.assign(vs.begin(), vs.end());
        merged.push_back(std::move(f));
    }

    std::vector<std::vector<int>> tris;
    tris.reserve(live.size());
    for (int fi : live) {
        std::vector<int> tri(d_);
        for (int i = 0; i < d_; ++i) tri[i] = remap[facets_[fi].v[i]];
        tris.push_back(std::move(tri));
    }
    return Polytope(d_, std::move(verts), std::move(merged), std::move(tris), interior_);
}

// ---------------------------------------------------------------------------
// free functions

Polytope convex_hull(const std::vector<Vec>& pts, int d) {
    if (static_cast<int>(pts.size()) < d + 1)
        throw DegenerateInput("convex_hull: need at least d+1 points");
    HullBuilder b(d);
    for (const Vec& p : pts) b.insert(p);
    return b.snapshot();
}

double polytope_volume(const Polytope& P) { return P.volume(); }

double min_facet_offset(const Polytope& P) { return P.min_facet_offset(); }

FaceSet enumerate_faces(const Polytope& P, int k) {
    const int d = P.dim();
    if (k < 0 || k > d - 1) throw OutOfRange("enumerate_faces: k outside [0, d-1]");
    FaceSet out;
    out.k = k;
    std::set<std::vector<int>> level;
    for (const Facet& f : P.facets()) level.insert(f.vertices);
    for (int j = d - 1; j > k; --j) {
        std::set<std::vector<int>> next;
        for (const auto& face : level) {
            for (const Facet& g : P.facets()) {
                std::vector<int> inter;
                std::set_intersection(face.begin(), face.end(), g.vertices.begin(),
                                      g.vertices.end(), std::back_inserter(inter));
                if (static_cast<int>(inter.size()) < j) continue;
                if (inter == face) continue;  // the facet contains the whole face
                std::vector<Vec> pts;
                pts.reserve(inter.size());
                for (int v : inter) pts.push_back(P.vertices()[v]);
                if (affine_dim(pts) == j - 1) next.insert(std::move(inter));
            }
        }
        level = std::move(next);
    }
    out.faces.assign(level.begin(), level.end());
    return out;
}

double distance_to_hull(const std::vector<Vec>& vertices, const Vec& y, Vec* nearest) {
    const int m = static_cast<int>(vertices.size());
    assert(m >= 1);
    const int d = y.dim();

    // Wolfe's algorithm on the translated set Q = {v - y}: min-norm point of conv Q.
    std::vector<Vec> q;
    q.reserve(m);
    double scale2 = 0.0;
    for (const Vec& v : vertices) {
        q.push_back(v - y);
        scale2 = std::max(scale2, q.back().norm2());
    }
    if (scale2 == 0.0) return 0.0;
    const double eps = 1e-12 * scale2;

    int best0 = 0;
    for (int i = 1; i < m; ++i)
        if (q[i].norm2() < q[best0].norm2()) best0 = i;

    std::vector<int> corral{best0};
    std::vector<double> lam{1.0};
    Vec x = q[best0];

    for (int outer = 0; outer < 16 * (m + d) + 64; ++outer) {
        // optimality test: x minimal iff <x,q_j> >= |x|^2 for all j
        int jstar = -1;
        double worst = x.norm2() - eps;
        for (int j = 0; j < m; ++j) {
            double s = x.dot(q[j]);
            if (s < worst) {
                worst = s;
                jstar = j;
            }
        }
        if (jstar < 0) break;
        bool already = false;
        for (int idx : corral)
            if (idx == jstar) already = true;
        if (already) break;
        corral.push_back(jstar);
        lam.push_back(0.0);

        for (int inner = 0; inner < 4 * (d + 2); ++inner) {
            // affine min-norm point over the corral
            const int k = static_cast<int>(corral.size());
            std::vector<double> A((k + 1) * (k + 1), 0.0), b(k + 1, 0.0);
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) A[i * (k + 1) + j] = q[corral[i]].dot(q[corral[j]]);
                A[i * (k + 1) + k] = 1.0;
                A[k * (k + 1) + i] = 1.0;
            }
            b[k] = 1.0;
            std::vector<double> sol = b;
            if (!solve_dense(A, sol, k + 1, 1e-14 * (1.0 + scale2))) {
                // affinely dependent corral: drop the smallest-weight member
                int drop = 0;
                for (int i = 1; i < k; ++i)
                    if (lam[i] < lam[drop]) drop = i;
                corral.erase(corral.begin() + drop);
                lam.erase(lam.begin() + drop);
                continue;
            }
            std::vector<double> mu(sol.begin(), sol.begin() + k);
            bool feasible = true;
            for (double w : mu)
                if (w < -1e-12) feasible = false;
            if (feasible) {
                lam = mu;
                x = Vec(d);
                for (int i = 0; i < k; ++i) x += q[corral[i]] * lam[i];
                break;
            }
            // step toward z until a weight hits zero, then drop it
            double theta = 1.0;
            int drop = -1;
            for (int i = 0; i < k; ++i) {
                if (mu[i] < lam[i] && mu[i] < 0.0) {
                    double t = lam[i] / (lam[i] - mu[i]);
                    if (t < theta) {
                        theta = t;
                        drop = i;
                    }
                }
            }
            for (int i = 0; i < k; ++i) lam[i] = (1.0 - theta) * lam[i] + theta * mu[i];
            if (drop >= 0) {
                corral.erase(corral.begin() + drop);
                lam.erase(lam.begin() + drop);
            }
            x = Vec(d);
            for (size_t i = 0; i < corral.size(); ++i) x += q[corral[i]] * lam[i];
        }
    }
    if (nearest) *nearest = x + y;
    return x.norm();
}

}  // namespace stochgeo
