#pragma once

#include "tf/plane_graph.hpp"
#include "tf/resolution.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tf {

// Oriented link diagram as a PD code. Slot order per crossing: under-strand
// entering first, then counterclockwise. Arcs are renumbered 0..2n-1
// preserving the ascending order of the input labels.
struct Crossing {
    std::array<int, 4> arcs;
    bool over_b_to_d;  // over-strand direction: enters at slot 1 (else slot 3)
    int sign() const { return over_b_to_d ? +1 : -1; }
};

struct LinkDiagram {
    std::string name;
    std::vector<Crossing> crossings;
    int arc_count = 0;
    int n() const { return (int)crossings.size(); }
};

// Throws parse_error on syntax errors, arc labels not used exactly twice,
// inconsistent orientations, or an empty diagram ("no crossings").
LinkDiagram parse_pd(const std::string& text, const std::string& name = "link");
std::string write_pd(const LinkDiagram& link);

// Flattening state: bit i picks the flattening of crossing i. A crossing
// flattens either to the wide edge (two trivalent vertices joined by a
// matching edge, strands grouped compatibly with their orientations) or to
// the oriented smoothing (strands merge, no vertex). Bit 0 keeps the wide
// edge at positive crossings, so the OF preset is the all-wide web and the
// DOF preset is the fully smoothed diagram (which is degenerate as a graph).
State of_state(const LinkDiagram& link);   // 0-flattening at positive crossings
State dof_state(const LinkDiagram& link);  // the complement

// Closed web of a flattening state as a matched graph. Matching order =
// order of the crossings that keep their wide edge. Throws std::invalid_-
// argument for degenerate states (no wide edge left, or a merged strand
// closing into a free loop) and "non-planar flattening" when the rotation
// system is not genus 0 (malformed PD input).
MatchedGraph flatten(const LinkDiagram& link, State f);

// Circles of the oriented smoothing, computed directly on the PD code.
int seifert_circle_count(const LinkDiagram& link);

struct OrientabilityResult {
    bool ok = false;
    std::vector<int> orientation;       // per circle, +1/-1 when ok
    std::vector<int> conflict_circles;  // witness cycle of circles when not
};

// Certificate that the circles of a resolution diagram of 0-sites only can be
// oriented so both strands of every 0-site corridor run the same way.
OrientabilityResult orientability_certificate(const MatchedGraph& g, const ResolutionDiagram& d);

struct ZeroStateAudit {
    bool all_m = false;
    std::vector<int> non_m_arcs;  // matching indices of arcs that are not m-arcs
    OrientabilityResult orient;
    int circles_zero_state = 0;
    int seifert_circles = 0;
    bool circle_count_matches = false;
    bool pass() const { return all_m && orient.ok && circle_count_matches; }
};

ZeroStateAudit zero_state_audit(const LinkDiagram& link, const MatchedGraph& web);

struct WebFamilyReport {
    size_t states_checked = 0;
    size_t degenerate_states = 0;  // vacuously in the family (no faces)
    bool sampled = false;
    std::vector<State> violations;  // flattening states whose web left the family
    // descriptive per-state audit outcomes (see zero_state_audit); the family
    // membership above is the asserted part
    size_t audits_passed = 0;
    bool ok() const { return violations.empty(); }
};

// Checks in_family_G(flatten(link, f)) for every flattening state (or a
// seeded sample when n exceeds the cap) and audits each state's web.
WebFamilyReport web_family_check(const LinkDiagram& link, int exhaustive_cap = 12, uint64_t seed = 0,
                                 int sample_count = 256);

}  // namespace tf
