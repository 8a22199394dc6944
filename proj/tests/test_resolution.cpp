#include "doctest.h"

#include "tf/corpus.hpp"
#include "tf/resolution.hpp"

using namespace tf;

TEST_CASE("theta resolution diagrams match the paper hypercube") {
    auto g = corpus::theta();

    auto d0 = resolve(g, State(0, 1));
    CHECK(d0.circle_count() == 2);
    CHECK(d0.arcs.size() == 1);
    CHECK(d0.double_points[0].empty());
    CHECK(d0.double_points[1].empty());
    // the single arc joins the two circles
    CHECK(d0.arcs[0].circle[0] != d0.arcs[0].circle[1]);

    auto d1 = resolve(g, State(1, 1));
    CHECK(d1.circle_count() == 1);
    CHECK(d1.arcs.empty());
    CHECK(d1.double_points[0] == std::vector<int>{0, 0});  // one double point passed twice
}

TEST_CASE("theta arc is an m-arc") {
    auto g = corpus::theta();
    CHECK(arc_kind(g, State(0, 1), 0) == ArcKind::M);
    CHECK_THROWS_AS(arc_kind(g, State(1, 1), 0), std::invalid_argument);
}

TEST_CASE("l2 resolution counts") {
    auto g = corpus::l2();
    CHECK(resolve(g, State(0b00, 2)).circle_count() == 2);
    CHECK(resolve(g, State(0b01, 2)).circle_count() == 1);
    CHECK(resolve(g, State(0b10, 2)).circle_count() == 1);
    CHECK(resolve(g, State(0b11, 2)).circle_count() == 2);

    auto d0 = resolve(g, State(0, 2));
    REQUIRE(d0.arcs.size() == 2);
    // both arcs join circle 1 to circle 2
    CHECK(d0.arcs[0].circle[0] != d0.arcs[0].circle[1]);
    CHECK(d0.arcs[1].circle[0] != d0.arcs[1].circle[1]);

    CHECK(arc_kind(g, State(0b00, 2), 0) == ArcKind::M);
    CHECK(arc_kind(g, State(0b10, 2), 1) == ArcKind::Delta);
}

TEST_CASE("token accounting sum rule") {
    for (const auto& g : corpus::base_graphs()) {
        int n = g.matching_size();
        int nonmatching = g.num_edges() - n;
        for (uint32_t code = 0; code < (1u << n); ++code) {
            auto d = resolve(g, State(code, n));
            size_t total = 0, he = 0, site = 0;
            for (auto& c : d.circles) {
                total += c.size();
                for (auto& t : c) (t.kind == TravToken::HalfEdge ? he : site)++;
            }
            CHECK(he == 2 * (size_t)nonmatching);
            CHECK(site == 2 * (size_t)n);
            CHECK(total == he + site);
            CHECK(d.arcs.size() == (size_t)(n - State(code, n).weight()));
        }
    }
}

TEST_CASE("circle count parity across hypercube edges") {
    for (const auto& g : corpus::base_graphs()) {
        int n = g.matching_size();
        for (uint32_t code = 0; code < (1u << n); ++code) {
            State v(code, n);
            int c0 = resolve(g, v).circle_count();
            for (int i = 0; i < n; ++i) {
                if (v.bit(i)) continue;
                int c1 = resolve(g, v.with_bit(i)).circle_count();
                CHECK(std::abs(c1 - c0) <= 1);
            }
        }
    }
}

TEST_CASE("theta has no 2-faces and is in G") {
    auto g = corpus::theta();
    CHECK(scan_faces(g).empty());
    CHECK(in_family_G(g).member);
}

TEST_CASE("l2 face report") {
    auto g = corpus::l2();
    auto faces = scan_faces(g);
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].v.to_string() == "00");
    CHECK(faces[0].k1 == ArcKind::M);
    CHECK(faces[0].k2 == ArcKind::Delta);
    CHECK(faces[0].k3 == ArcKind::M);
    CHECK(faces[0].k4 == ArcKind::Delta);
    CHECK(!faces[0].bad);
    CHECK(faces[0].line() == "v=00 face=(0,1) kinds=m,d|m,d bad=0");
    CHECK(in_family_G(g).member);
}

TEST_CASE("badface graph is caught") {
    auto g = corpus::badface();
    REQUIRE(validate(g).ok());
    auto res = in_family_G(g);
    CHECK(!res.member);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->bad);
}

TEST_CASE("arc kinds and G membership are flip covariant") {
    std::vector<MatchedGraph> graphs = {corpus::l2(), corpus::l3(), corpus::dumbbell(), corpus::badface()};
    for (const auto& g : graphs) {
        auto disks = enumerate_flip_disks(g);
        for (const auto& disk : disks) {
            auto f = apply_flip(g, disk);
            int n = g.matching_size();
            for (uint32_t code = 0; code < (1u << n); ++code) {
                State v(code, n);
                for (int i = 0; i < n; ++i)
                    if (!v.bit(i)) CHECK(arc_kind(g, v, i) == arc_kind(f, v, i));
            }
            CHECK(in_family_G(g).member == in_family_G(f).member);
        }
    }
}

TEST_CASE("configuration graph of theta and l2") {
    auto g = corpus::theta();
    auto cg = configuration_graph(g, State(0, 1));
    CHECK(cg.n_circles == 2);
    REQUIRE(cg.edges.size() == 1);
    CHECK(cg.leaf[0]);
    CHECK(cg.leaf[1]);

    auto l2 = corpus::l2();
    auto cg2 = configuration_graph(l2, State(0, 2));
    CHECK(cg2.n_circles == 2);
    REQUIRE(cg2.edges.size() == 2);
    CHECK(cg2.edges[0].c0 != cg2.edges[0].c1);
    CHECK(cg2.edges[1].c0 != cg2.edges[1].c1);
    CHECK(!cg2.leaf[0]);
    CHECK(!cg2.leaf[1]);
}

TEST_CASE("basic restriction: restricted circles all meet arcs") {
    for (const auto& g : corpus::base_graphs()) {
        int n = g.matching_size();
        for (uint32_t code = 0; code < (1u << n); ++code) {
            State v(code, n);
            auto d = resolve(g, v);
            std::vector<int> zeros;
            for (int i = 0; i < n; ++i)
                if (!v.bit(i)) zeros.push_back(i);
            for (int c : restricted_circles(d, zeros)) CHECK(!d.site_passages(c, zeros).empty());
        }
    }
}
