#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tf {

// Half-edge token: edge index e with end k in {0,1}. Token k of an edge sits
// at vertex edge_ends[e][k].
inline int make_token(int edge, int end) { return 2 * edge + end; }
inline int token_edge(int tok) { return tok >> 1; }
inline int token_end(int tok) { return tok & 1; }

struct parse_error : std::runtime_error {
    int line;
    int col;
    parse_error(int line_, int col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

// Plane trivalent multigraph with a perfect matching, embedding given as a
// rotation system. Kept in normalized form: vertices and edges sorted by id,
// rotations cyclically rotated so the smallest token string comes first.
struct MatchedGraph {
    std::string name;
    std::vector<std::string> vertex_ids;
    std::vector<std::string> edge_ids;
    std::vector<std::array<int, 2>> edge_ends;     // vertex indices
    std::vector<std::array<int, 3>> rotations;     // per vertex, ccw cyclic order of tokens
    std::vector<int> matching;                     // edge indices; order = state coordinate order

    int num_vertices() const { return (int)vertex_ids.size(); }
    int num_edges() const { return (int)edge_ids.size(); }
    int matching_size() const { return (int)matching.size(); }

    bool is_matching_edge(int e) const {
        for (int m : matching)
            if (m == e) return true;
        return false;
    }
    // vertex holding a token, or -1 if the token appears in no rotation
    int vertex_of_token(int tok) const {
        for (int v = 0; v < num_vertices(); ++v)
            for (int t : rotations[v])
                if (t == tok) return v;
        return -1;
    }
    std::string token_str(int tok) const {
        return edge_ids[token_edge(tok)] + "." + std::to_string(token_end(tok));
    }
};

struct Violation {
    std::string invariant;
    std::string element;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

ValidationReport validate(const MatchedGraph& g);

// Throws std::invalid_argument if the graph fails validation.
void require_valid(const MatchedGraph& g);

// Number of face cycles of the rotation system (orbits of sigma.alpha).
int face_count(const MatchedGraph& g);

bool is_connected(const MatchedGraph& g);

struct FlipDisk {
    std::vector<int> vertices;  // vertex indices, nonempty proper subset
};

// Edges with exactly one endpoint inside the disk.
std::vector<int> cut_edges(const MatchedGraph& g, const FlipDisk& disk);

// Mirror-reflects the disk interior: reverses the rotation of every vertex in
// the disk. Throws std::invalid_argument("not a flip disk") when the subset is
// empty/improper or the cut has more than two edges.
MatchedGraph apply_flip(const MatchedGraph& g, const FlipDisk& disk);

// All flip disks of the graph, vertex subsets in mask order (graphs up to 20
// vertices; larger graphs would need a smarter enumeration).
std::vector<FlipDisk> enumerate_flip_disks(const MatchedGraph& g);

// Number of spanning 2-regular subgraphs containing every matching edge,
// by exhaustive choice of one non-matching edge per vertex.
long long two_factor_count(const MatchedGraph& g);

MatchedGraph read_graph(const std::string& text);
std::string write_graph(const MatchedGraph& g);

// Canonical equality: same normalized serialization.
inline bool canonically_equal(const MatchedGraph& a, const MatchedGraph& b) {
    return write_graph(a) == write_graph(b);
}

}  // namespace tf
