#include "doctest.h"

#include "tf/census.hpp"
#include "tf/corpus.hpp"
#include "tf/resolution.hpp"

using namespace tf;

TEST_CASE("m=1 census is the theta graph alone") {
    auto res = census_exhaustive(1);
    CHECK(res.embeddings_total == 1);
    CHECK(res.abstract_total == 1);
    CHECK(res.fraction_abstract() == 1.0);
    CHECK(canonical_abstract_code(res.classes[0].representative) == canonical_abstract_code(corpus::theta()));
}

TEST_CASE("m=2 graphs are all in the family") {
    // eta arcs need double points, so no |M|=2 hypercube can hold a bad face
    auto res = census_exhaustive(2);
    CHECK(res.abstract_total == res.abstract_in_family);
    CHECK(res.embeddings_total == res.embeddings_in_family);
    CHECK(res.abstract_total == 3);
}

TEST_CASE("m=3 census brackets the reported fraction") {
    auto res = census_exhaustive(3);
    CHECK(res.abstract_total == 9);
    CHECK(res.abstract_in_family == 7);
    CHECK(res.embeddings_total == 15);
    CHECK(res.embeddings_in_family == 13);
    bool in_range = (res.fraction_abstract() >= 0.70 && res.fraction_abstract() <= 0.84) ||
                    (res.fraction_embeddings() >= 0.70 && res.fraction_embeddings() <= 0.84);
    CHECK(in_range);
}

TEST_CASE("exhaustive mode rejects large matchings") {
    CHECK_THROWS_AS(census_exhaustive(4), std::invalid_argument);
}

TEST_CASE("canonical codes are invariant under relabeling and reflection") {
    auto g = corpus::l2();
    // relabel: swap vertex names 1 <-> 4 and edge names a <-> f
    auto h = g;
    std::swap(h.vertex_ids[0], h.vertex_ids[3]);
    std::swap(h.edge_ids[0], h.edge_ids[4]);
    auto h2 = read_graph(write_graph(h));
    CHECK(canonical_map_code(g) == canonical_map_code(h2));
    CHECK(canonical_abstract_code(g) == canonical_abstract_code(h2));
    // reflection: reverse every rotation
    auto m = g;
    for (auto& r : m.rotations) std::swap(r[0], r[2]);
    CHECK(canonical_map_code(g) == canonical_map_code(m));
}

TEST_CASE("distinct matchings of k4 give distinct canonical codes") {
    // all three K4 matchings are abstractly isomorphic to each other
    CHECK(canonical_abstract_code(corpus::k4(0)) == canonical_abstract_code(corpus::k4(1)));
    CHECK(canonical_abstract_code(corpus::k4(0)) != canonical_abstract_code(corpus::l2()));
}

TEST_CASE("sampling is deterministic for a fixed seed") {
    auto a = census_sample(3, 50, 7);
    auto b = census_sample(3, 50, 7);
    CHECK(a.embeddings_total == b.embeddings_total);
    CHECK(a.embeddings_in_family == b.embeddings_in_family);
    CHECK(a.summary() == b.summary());
    auto c = census_sample(3, 50, 8);
    CHECK(c.embeddings_total == 50);
}

TEST_CASE("census members really are members") {
    auto res = census_exhaustive(2);
    for (const auto& cls : res.classes) {
        CHECK(validate(cls.representative).ok());
        CHECK(in_family_G(cls.representative).member == cls.in_family);
    }
}
