#include "tf/corpus.hpp"

namespace tf::corpus {

namespace {
MatchedGraph from_text(const std::string& text) { return read_graph(text); }
}

MatchedGraph theta() {
    return from_text(R"(graph theta
vertex u
vertex w
edge e1 u w
edge e2 u w
edge e3 u w
rotation u e1.0 e2.0 e3.0
rotation w e1.1 e3.1 e2.1
matching e1
)");
}

MatchedGraph l2() {
    return from_text(R"(graph l2
vertex 1
vertex 2
vertex 3
vertex 4
edge a 1 2
edge e 1 2
edge b 2 3
edge c 3 4
edge f 3 4
edge d 4 1
rotation 1 d.1 a.0 e.0
rotation 2 b.0 e.1 a.1
rotation 3 b.1 f.0 c.0
rotation 4 d.0 c.1 f.1
matching b d
)");
}

MatchedGraph l3() {
    return from_text(R"(graph l3
vertex 1
vertex 2
vertex 3
vertex 4
vertex 5
vertex 6
edge o1 1 2
edge i1 1 2
edge s1 2 3
edge o2 3 4
edge i2 3 4
edge s2 4 5
edge o3 5 6
edge i3 5 6
edge s3 6 1
rotation 1 s3.1 o1.0 i1.0
rotation 2 s1.0 i1.1 o1.1
rotation 3 s1.1 o2.0 i2.0
rotation 4 s2.0 i2.1 o2.1
rotation 5 s2.1 o3.0 i3.0
rotation 6 s3.0 i3.1 o3.1
matching s1 s2 s3
)");
}

MatchedGraph k4(int which) {
    std::string matching;
    switch (which) {
        case 0: matching = "e12 e34"; break;
        case 1: matching = "e13 e24"; break;
        case 2: matching = "e14 e23"; break;
        default: throw std::invalid_argument("k4 matching index must be 0, 1 or 2");
    }
    return from_text(R"(graph k4m)" + std::to_string(which) + R"(
vertex 1
vertex 2
vertex 3
vertex 4
edge e12 1 2
edge e13 1 3
edge e14 1 4
edge e23 2 3
edge e24 2 4
edge e34 3 4
rotation 1 e12.0 e13.0 e14.0
rotation 2 e12.1 e24.0 e23.0
rotation 3 e34.0 e13.1 e23.1
rotation 4 e24.1 e14.1 e34.1
matching )" + matching + "\n");
}

MatchedGraph prism() {
    return from_text(R"(graph prism
vertex 1
vertex 2
vertex 3
vertex 4
vertex 5
vertex 6
edge t12 1 2
edge t23 2 3
edge t31 3 1
edge s45 4 5
edge s56 5 6
edge s64 6 4
edge r14 1 4
edge r25 2 5
edge r36 3 6
rotation 1 t12.0 t31.1 r14.0
rotation 2 t12.1 r25.0 t23.0
rotation 3 t31.0 t23.1 r36.0
rotation 4 r14.1 s64.1 s45.0
rotation 5 r25.1 s45.1 s56.0
rotation 6 r36.1 s56.1 s64.0
matching r14 r25 r36
)");
}

MatchedGraph dumbbell() {
    return from_text(R"(graph dumbbell
vertex u1
vertex v1
vertex w1
vertex u2
vertex v2
vertex w2
edge p1a u1 v1
edge p1b u1 v1
edge q1 u1 w1
edge s1 v1 w1
edge p2a u2 v2
edge p2b u2 v2
edge q2 u2 w2
edge s2 v2 w2
edge br w1 w2
rotation u1 p1a.0 p1b.0 q1.0
rotation v1 p1a.1 s1.0 p1b.1
rotation w1 q1.1 s1.1 br.0
rotation u2 q2.0 p2b.0 p2a.0
rotation v2 s2.0 p2a.1 p2b.1
rotation w2 br.1 s2.1 q2.1
matching br p1a p2a
)");
}

MatchedGraph badface() {
    // found by the exhaustive |M| = 3 census; the face (v=010, coords (0,2))
    // composes eta-eta one way and delta-then-m the other
    return from_text(R"(graph badface
vertex v1
vertex v2
vertex v3
vertex v4
vertex v5
vertex v6
edge e1 v1 v5
edge e2 v1 v6
edge e3 v1 v6
edge e4 v2 v3
edge e5 v2 v4
edge e6 v2 v6
edge e7 v3 v4
edge e8 v3 v5
edge e9 v4 v5
rotation v1 e1.0 e3.0 e2.0
rotation v2 e4.0 e6.0 e5.0
rotation v3 e4.1 e7.0 e8.0
rotation v4 e5.1 e9.0 e7.1
rotation v5 e1.1 e8.1 e9.1
rotation v6 e2.1 e3.1 e6.1
matching e1 e6 e7
)");
}

std::string trefoil_pd() {
    return "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";
}

std::string hopf_pd() {
    return "X 1 4 2 3\nX 3 2 4 1\n";
}

std::string figure_eight_pd() {
    return "X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8\n";
}

std::string cinquefoil_pd() {
    return "X 1 6 2 7\nX 3 8 4 9\nX 5 10 6 1\nX 7 2 8 3\nX 9 4 10 5\n";
}

std::string kinked_unknot_pd() {
    return "X 1 2 2 1\n";
}

std::vector<MatchedGraph> base_graphs() {
    return {theta(), l2(), k4(0), k4(1), k4(2), prism()};
}

}  // namespace tf::corpus
