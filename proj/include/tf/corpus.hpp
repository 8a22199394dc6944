#pragma once

#include "tf/plane_graph.hpp"

#include <string>
#include <vector>

namespace tf::corpus {

// theta graph: two vertices joined by three parallel edges, matching {e1}
MatchedGraph theta();

// 4-vertex ladder: doubled edges a/e and c/f, matching {b,d}
MatchedGraph l2();

// necklace of three bigons, matching = the three single edges
MatchedGraph l3();

// K4 with one of its three perfect matchings (which = 0,1,2)
MatchedGraph k4(int which);

// triangular prism with the rung matching
MatchedGraph prism();

// two triangle-with-doubled-side blobs joined by a bridge; has 1- and 2-flip disks
MatchedGraph dumbbell();

// smallest non-member of the family G (6 vertices, |M| = 3), found by search
MatchedGraph badface();

// PD codes
std::string trefoil_pd();
std::string hopf_pd();
std::string figure_eight_pd();
std::string cinquefoil_pd();
std::string kinked_unknot_pd();

// the graphs of acceptance criterion 3 (theta, l2, k4 x3, prism);
// web flattenings are added by the callers that need them
std::vector<MatchedGraph> base_graphs();

}  // namespace tf::corpus
