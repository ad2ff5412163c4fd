#pragma once

#include <array>
#include <vector>

#include "stochgeo/vec.hpp"

namespace stochgeo {

/// One facet of a full-dimensional polytope: outer unit normal, offset
/// (plane is <y,normal> = offset), and the indices of the vertices lying on it.
/// Coplanar simplicial pieces are merged, so a cube reports 6 facets.
struct Facet {
    Vec normal;
    double offset = 0.0;
    std::vector<int> vertices;  // sorted indices into Polytope::vertices()
};

struct FaceSet {
    int k = 0;
    std::vector<std::vector<int>> faces;  // sorted vertex index lists
};

/// Immutable convex polytope produced by hull construction. Keeps both the
/// merged facet list (for the face lattice) and the simplicial boundary
/// triangulation (for metric computations).
class Polytope {
  public:
    Polytope() = default;
    Polytope(int dim, std::vector<Vec> vertices, std::vector<Facet> facets,
             std::vector<std::vector<int>> boundary_simplices, Vec interior);

    int dim() const { return dim_; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<std::vector<int>>& boundary_simplices() const { return tris_; }
    const Vec& interior_point() const { return interior_; }

    double volume() const;
    double boundary_measure() const;  // sum of facet (d-1)-volumes
    double min_facet_offset() const;  // largest r with r*B^d inside; throws OriginOutside
    bool contains(const Vec& p, double tol = 1e-9) const;

  private:
    int dim_ = 0;
    std::vector<Vec> vertices_;
    std::vector<Facet> facets_;
    std::vector<std::vector<int>> tris_;
    Vec interior_;
};

/// Incremental beneath-beyond convex hull with facet adjacency. Points are
/// inserted one at a time; interior points are discarded immediately, so a
/// long nested trajectory stores only the points that were ever vertices.
/// Near-coplanarity below the orientation tolerance raises DegenerateInput;
/// callers with absolutely continuous inputs resample instead of perturbing.
class HullBuilder {
  public:
    explicit HullBuilder(int dim);

    /// Feed one point. Returns true when the hull changed (point was outside
    /// or initialization is still collecting a first simplex).
    bool insert(const Vec& p);

    bool initialized() const { return initialized_; }
    int dim() const { return d_; }
    long points_seen() const { return seen_; }

    double volume() const;
    double boundary_measure() const;
    double inradius() const;  // throws OriginOutside when o is not interior
    int live_facet_count() const;
    std::vector<Vec> vertex_points() const;

    Polytope snapshot() const;

  private:
    struct BFacet {
        std::array<int, kMaxDim> v;   // sorted point ids, d used
        std::array<int, kMaxDim> nb;  // neighbor across the ridge omitting v[i]
        Vec n;
        double off = 0.0;
        bool dead = false;
        int mark = 0;
    };

    void try_initialize();
    void build_initial_simplex();
    bool insert_index(int idx);
    int make_facet(const std::array<int, kMaxDim>& verts);
    double signed_excess(const BFacet& f, const Vec& p) const { return p.dot(f.n) - f.off; }

    int d_;
    bool initialized_ = false;
    long seen_ = 0;
    std::vector<Vec> pts_;
    std::vector<int> init_indep_;     // indices of affinely independent seeds
    std::vector<Vec> init_basis_;     // orthonormal basis of their differences
    double init_scale_ = 0.0;
    std::vector<int> init_pending_;   // buffered point ids awaiting the simplex
    std::vector<BFacet> facets_;
    int live_count_ = 0;
    Vec interior_;
    double inradius_lb_ = 0.0;        // conservative lower bound, refreshed periodically
    int accepted_since_refresh_ = 0;
    int epoch_ = 0;
};

/// Convex hull of a point set in R^d. Requires at least d+1 affinely
/// independent points; throws DegenerateInput otherwise.
Polytope convex_hull(const std::vector<Vec>& pts, int d);

double polytope_volume(const Polytope& P);

/// All k-faces (vertex index lists) obtained by intersecting facet vertex
/// sets downward from the facets; k = d-1 returns the facets, k = 0 the
/// vertices.
FaceSet enumerate_faces(const Polytope& P, int k);

double min_facet_offset(const Polytope& P);

/// Euclidean distance from y to conv(vertices); 0 for interior points.
/// Wolfe's nearest-point algorithm on the vertex set, so the hull may be
/// lower-dimensional (a segment, a single point). When `nearest` is given it
/// receives the minimizing point of the hull.
double distance_to_hull(const std::vector<Vec>& vertices, const Vec& y, Vec* nearest = nullptr);

}  // namespace stochgeo
