#pragma once

#include "tf/invariants.hpp"
#include "tf/plane_graph.hpp"
#include "tf/resolution.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tf {

// Decorated face of the hypercube: base state, coordinate set S of
// 0-coordinates to surger, bottom labeling y on the circles of
// resolve(base), top labeling x on the circles of resolve(base + sum S).
// Labelings are masks over all circles (bit = x_-); circles not meeting the
// S-sites must carry equal labels in y and x.
struct DecoratedFace {
    State base;
    std::vector<int> coords;
    uint32_t y = 0;
    uint32_t x = 0;

    int index() const { return (int)coords.size(); }
};

// Poset P(D, x, y) of labeled intermediate configurations, graded by the
// number of surgered coordinates.
struct ChainPoset {
    struct Elem {
        uint32_t tmask;   // subset of coords surgered (bit p = coords[p])
        uint32_t labels;  // labeling of the circles of that state
        bool operator<(const Elem& o) const {
            return tmask != o.tmask ? tmask < o.tmask : labels < o.labels;
        }
        bool operator==(const Elem& o) const { return tmask == o.tmask && labels == o.labels; }
    };
    struct Cover {
        int from, to;   // element indices within consecutive levels
        int coord_pos;  // position into coords
    };
    std::vector<std::vector<Elem>> levels;
    std::vector<std::vector<Cover>> covers;  // covers[l]: level l -> l+1

    bool empty() const { return levels.empty() || levels.front().empty(); }
    int index() const { return (int)levels.size() - 1; }
    int middle_count() const { return index() >= 2 ? (int)levels[1].size() : 0; }

    // maximal chains as sequences of element indices per level, in
    // deterministic order
    std::vector<std::vector<int>> maximal_chains() const;
};

// Throws std::invalid_argument("not a decorated face") when no chain joins
// bottom to top.
ChainPoset face_poset(const MatchedGraph& g, const DecoratedFace& face);

// All decorated faces of the given index with nonempty poset, enumerated
// deterministically (base lex, coords ascending, restricted bottom labeling,
// reachable top labeling). Circles not meeting the face carry x_+.
std::vector<DecoratedFace> enumerate_decorated_faces(const MatchedGraph& g, int index);

enum class Index2Class : uint8_t { LeafOrColeaf, TwoCircleParallel, Butterfly };
const char* index2_class_name(Index2Class c);

Index2Class classify_index2(const MatchedGraph& g, const DecoratedFace& face);

// Butterfly matching data: the four maximal chains of a k=4 face paired into
// two intervals via the residual segments P and Q of the bottom circle.
struct ButterflyMatching {
    std::array<std::array<int, 2>, 2> intervals;  // chain indices per interval
    std::array<int, 2> p_circle;  // P-containing circle after surgery along coords[0] / coords[1]
    std::array<int, 2> q_circle;
};

// Throws std::invalid_argument("degenerate butterfly") when neither run
// between one arc's endpoints is free of the other arc (see Open Questions).
ButterflyMatching butterfly_match(const MatchedGraph& g, const DecoratedFace& face);

// Interval pairing of an index-2 face's maximal chains: k=2 faces pair their
// two chains, butterflies pair by P/Q labels. opposite_pairing flips the
// butterfly matching (negative control).
std::vector<std::pair<int, int>> interval_pairs(const MatchedGraph& g, const DecoratedFace& face,
                                                bool opposite_pairing = false);

struct BoundaryGraph {
    int n_chains = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> component_lengths() const;  // cycle lengths; requires 2-regularity
    bool all_six_cycles() const;
};

BoundaryGraph boundary_graph(const MatchedGraph& g, const DecoratedFace& face, bool opposite_pairing = false);

struct SixCycleRow {
    DecoratedFace face;
    std::vector<int> components;
    bool pass;
    std::string line(const MatchedGraph& g) const;
};

struct SixCycleReport {
    std::vector<SixCycleRow> rows;
    size_t faces_checked = 0;
    bool pass = true;
};

SixCycleReport verify_six_cycles(const MatchedGraph& g, bool opposite_pairing = false);

// Builds the dual face poset by running the covering rules downward on
// complemented labelings and checks the order-reversing bijection.
bool dual_poset_check(const MatchedGraph& g, const DecoratedFace& face);

// Explicit product decomposition P = P' x {0,1} along a leaf's arc; true
// when the face has no leaf.
bool leaf_product_check(const MatchedGraph& g, const DecoratedFace& face);

struct CoverReport {
    size_t faces_checked = 0;
    size_t intervals_checked = 0;
    size_t empty_hom_pairs = 0;  // grading-compatible label pairs with empty moduli (reported, not failed)
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

// Chain-level covering property: interval endpoints project to the two
// broken flows of the cube interval (opposite surgery orders).
CoverReport cover_check(const MatchedGraph& g);

struct RealizationReport {
    int shift = 1;  // N, with d_0 = 1
    Ring ring;
    std::vector<std::string> cell_lines;   // one per generator, sorted by (j desc, dim, id)
    std::vector<std::string> mismatches;   // blockwise comparison failures
    bool pass = true;
};

// Emits the cell table of the realization and rebuilds the incidence
// matrices from 0-dimensional moduli counts (with cube signs over Z),
// comparing them blockwise against build_complex.
RealizationReport realization_report(const MatchedGraph& g, Ring ring);

}  // namespace tf
