#pragma once

#include "tf/plane_graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tf {

// Canonical code of the embedded pair (rotation system, matching): minimum
// over all root darts and both chiralities of a BFS traversal code. Equal
// codes = same plane graph with matching up to relabeling and reflection.
std::vector<int> canonical_map_code(const MatchedGraph& g);

// Canonical code of the abstract pair (G, M): minimum over vertex
// permutations of the sorted edge multiset with matching flags.
std::vector<int> canonical_abstract_code(const MatchedGraph& g);

struct CensusClass {
    MatchedGraph representative;
    bool in_family;
    size_t embeddings;  // embedding classes realizing this abstract pair
};

struct CensusResult {
    int m = 0;
    bool sampled = false;
    size_t embeddings_total = 0;
    size_t embeddings_in_family = 0;
    size_t abstract_total = 0;
    size_t abstract_in_family = 0;
    std::vector<CensusClass> classes;  // abstract classes in canonical-code order

    double fraction_embeddings() const {
        return embeddings_total ? (double)embeddings_in_family / embeddings_total : 0.0;
    }
    double fraction_abstract() const {
        return abstract_total ? (double)abstract_in_family / abstract_total : 0.0;
    }
    std::string summary() const;
};

// Enumerates all connected trivalent plane multigraphs on 2m vertices with a
// chosen perfect matching, by rotation systems filtered to genus 0 and
// deduplicated by canonical form. Supported for m <= 3.
CensusResult census_exhaustive(int m);

// Seeded sampling over random rotation systems for larger m. Counts `count`
// accepted samples; deduplication is not attempted, fractions are per draw.
CensusResult census_sample(int m, int count, uint64_t seed);

}  // namespace tf
