#pragma once

#include "tf/plane_graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tf {

// State vector over {0,1}^|M|. Coordinate 0 is the most significant bit of
// `code`, so integer order on `code` is lexicographic order on states.
struct State {
    uint32_t code = 0;
    int n = 0;

    State() = default;
    State(uint32_t c, int n_) : code(c), n(n_) {}

    bool bit(int i) const { return (code >> (n - 1 - i)) & 1u; }
    State with_bit(int i) const { return State(code | (1u << (n - 1 - i)), n); }
    int weight() const { return __builtin_popcount(code); }
    std::string to_string() const {
        std::string s;
        for (int i = 0; i < n; ++i) s += bit(i) ? '1' : '0';
        return s;
    }
    bool operator==(const State& o) const { return code == o.code && n == o.n; }
    bool operator<(const State& o) const { return code < o.code; }
};

inline State zero_state(int n) { return State(0, n); }
inline State ones_state(int n) { return State(n == 32 ? ~0u : ((1u << n) - 1), n); }

// Traversal tokens of a resolution diagram. A circle strand traversing a
// non-matching edge emits the half-edge token of the entry end followed by
// the exit end; passing a resolution site emits one site token. Port 0 of a
// site is the strand through the rotation-successor leg at ends[0]; port 1
// the one through the predecessor leg.
struct TravToken {
    enum Kind : uint8_t { HalfEdge, Site } kind;
    int a;  // HalfEdge: half-edge token (2*edge+end); Site: matching index
    int b;  // HalfEdge: unused (0); Site: port 0|1

    bool operator==(const TravToken& o) const { return kind == o.kind && a == o.a && b == o.b; }
    bool operator<(const TravToken& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
};

struct ResolutionDiagram {
    State state;
    std::vector<std::vector<TravToken>> circles;  // cyclic token sequences, discovery order
    std::vector<std::vector<int>> double_points;  // per circle, sorted matching indices of 1-site passages

    struct Arc {
        int matching_index;
        int circle[2];  // circle holding port 0 / port 1 of the site
        int pos[2];     // index of the site token within that circle
    };
    std::vector<Arc> arcs;  // one per zero coordinate, ascending matching index

    int circle_count() const { return (int)circles.size(); }
    // circle index containing a given site passage
    int circle_of_site(int matching_index, int port) const;
    // matching indices in S (zero or one resolved) passed by a circle, with multiplicity
    std::vector<int> site_passages(int circle, const std::vector<int>& sites) const;
};

ResolutionDiagram resolve(const MatchedGraph& g, State v);

enum class ArcKind : uint8_t { M, Delta, Eta };
char arc_kind_char(ArcKind k);

// Kind of the arc at 0-resolved coordinate i of state v, by circle-count
// difference under surgery. Throws std::invalid_argument when v_i = 1.
ArcKind arc_kind(const MatchedGraph& g, State v, int i);

struct FaceReport {
    State v;
    int i, j;              // coordinate pair, i < j, v_i = v_j = 0
    ArcKind k1, k2, k3, k4;  // arc i at v; arc j at v+e_i; arc j at v; arc i at v+e_j
    bool bad;
    std::string line() const;
};

// One report per (v, i<j) with v_i = v_j = 0, in (v lex, then (i,j)) order.
std::vector<FaceReport> scan_faces(const MatchedGraph& g);

struct FamilyResult {
    bool member;
    std::optional<FaceReport> witness;  // first bad face when not a member
};

FamilyResult in_family_G(const MatchedGraph& g);

// Abstract graph G(D) of the resolution configuration at state v:
// one vertex per circle, one edge per arc.
struct ConfigGraph {
    int n_circles;
    struct Edge {
        int matching_index;
        int c0, c1;  // endpoint circles (equal for a self-loop)
    };
    std::vector<Edge> edges;
    std::vector<bool> leaf;    // per circle: degree 1
    std::vector<bool> coleaf;  // per edge: dual arc has a leaf endpoint in the dual configuration
};

ConfigGraph configuration_graph(const MatchedGraph& g, State v);

// Circles of a diagram meeting at least one site of S (as passage tokens,
// whether 0- or 1-resolved). These are the circles of the basic restriction
// of a face with coordinate set S.
std::vector<int> restricted_circles(const ResolutionDiagram& d, const std::vector<int>& S);

// Circle correspondence across a single surgery at `site` (states v and
// v+e_site). Untouched circles are matched by their half-edge token sets;
// the circles meeting the site merge (m), split (Delta) or persist (Eta).
struct SurgeryStep {
    int site;
    ArcKind kind;
    std::vector<int> untouched;       // before-circle -> after-circle, -1 when touched
    std::vector<int> before_touched;  // circles meeting the site before (1 or 2)
    std::vector<int> after_touched;   // circles meeting the site after (1 or 2)

    // Frobenius rules applied to a labeling mask (bit = x_-): the labelings
    // reachable in one covering step. Empty for Eta and for merge(x-,x-).
    std::vector<uint32_t> image_labels(uint32_t labels) const;
};

SurgeryStep surgery_step(const ResolutionDiagram& before, const ResolutionDiagram& after, int site);

}  // namespace tf
