#include <doctest.h>

#include <cmath>

#include "stochgeo/io.hpp"
#include "stochgeo/rng.hpp"
#include "stochgeo/sampling.hpp"

using namespace stochgeo;

TEST_CASE("format_g17 round-trips doubles exactly") {
    RngStream rng(3, 3);
    for (int i = 0; i < 200; ++i) {
        double x = (rng.next_unit() - 0.5) * std::pow(10.0, (int)(rng.next_unit() * 20) - 10);
        CHECK(std::stod(format_g17(x)) == x);
    }
    CHECK(format_g17(1.0) == "1");
    CHECK(format_g17(0.5) == "0.5");
}

TEST_CASE("fnv1a64 is stable and order-sensitive") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("ab") != fnv1a64_hex("ba"));
    CHECK(fnv1a64_hex("seed=1") == fnv1a64_hex("seed=1"));
}

TEST_CASE("config file parsing: comments, whitespace, errors") {
    auto kv = parse_config_file("# comment\n dim = 3 \nseed=42\n\nn=128..512x2\n");
    CHECK(kv.at("dim") == "3");
    CHECK(kv.at("seed") == "42");
    CHECK(kv.at("n") == "128..512x2");
    CHECK(kv.size() == 3);
    CHECK_THROWS_AS(parse_config_file("not an assignment\n"), OutOfRange);
}

TEST_CASE("polytope json round-trip preserves the hull") {
    std::vector<Vec> pts;
    RngStream rng(9, 9);
    for (int i = 0; i < 50; ++i) pts.push_back(uniform_ball(3, rng));
    Polytope P = convex_hull(pts, 3);
    std::string json = polytope_to_json(P);
    Polytope Q = polytope_from_json(json);
    CHECK(Q.dim() == 3);
    CHECK(Q.vertices().size() == P.vertices().size());
    CHECK(Q.facets().size() == P.facets().size());
    CHECK(Q.volume() == doctest::Approx(P.volume()).epsilon(1e-12));
}

TEST_CASE("points json accepts both key spellings") {
    int dim = 0;
    auto a = points_from_json("{\"dim\":2,\"points\":[[0,0],[1,0],[0,1]]}", &dim);
    CHECK(dim == 2);
    CHECK(a.size() == 3);
    auto b = points_from_json("{\"vertices\":[[0,0,1],[1,0,0]]}", &dim);
    CHECK(dim == 3);
    CHECK(b[0][2] == 1.0);
    CHECK_THROWS_AS(points_from_json("{\"dim\":2}", nullptr), OutOfRange);
}

TEST_CASE("points csv layout") {
    std::vector<Vec> pts{Vec{1.0, 2.0}, Vec{3.0, 4.0}};
    CHECK(points_to_csv(pts) == "x0,x1\n1,2\n3,4\n");
}
