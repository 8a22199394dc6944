#include "tf/webs.hpp"

#include "tf/parallel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace tf {

namespace {

struct SlotRef {
    int crossing;
    int slot;
};

// occurrences of each arc, in crossing-scan order
std::vector<std::vector<SlotRef>> arc_slots(const LinkDiagram& link) {
    std::vector<std::vector<SlotRef>> occ(link.arc_count);
    for (int k = 0; k < link.n(); ++k)
        for (int s = 0; s < 4; ++s) occ[link.crossings[k].arcs[s]].push_back({k, s});
    return occ;
}

}  // namespace

LinkDiagram parse_pd(const std::string& text, const std::string& name) {
    LinkDiagram link;
    link.name = name;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::map<long, int> label_to_arc;
    std::vector<long> labels_in_order;
    std::vector<std::array<long, 4>> raw_crossings;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw != "X") throw parse_error(lineno, 1, "expected: X <a> <b> <c> <d>");
        std::array<long, 4> a{};
        for (int s = 0; s < 4; ++s)
            if (!(ls >> a[s])) throw parse_error(lineno, 1, "expected four arc labels");
        long extra;
        if (ls >> extra) throw parse_error(lineno, 1, "expected four arc labels");
        raw_crossings.push_back(a);
        for (long l : a)
            if (!label_to_arc.count(l)) {
                label_to_arc[l] = 0;
                labels_in_order.push_back(l);
            }
    }
    if (raw_crossings.empty()) throw parse_error(lineno, 1, "no crossings");

    // canonical renumbering: ascending label order
    std::sort(labels_in_order.begin(), labels_in_order.end());
    for (size_t i = 0; i < labels_in_order.size(); ++i) label_to_arc[labels_in_order[i]] = (int)i;
    link.arc_count = (int)labels_in_order.size();
    std::vector<int> uses(link.arc_count, 0);
    for (const auto& rc : raw_crossings) {
        Crossing c{};
        for (int s = 0; s < 4; ++s) {
            c.arcs[s] = label_to_arc.at(rc[s]);
            uses[c.arcs[s]]++;
        }
        c.over_b_to_d = false;
        link.crossings.push_back(c);
    }
    for (int a = 0; a < link.arc_count; ++a)
        if (uses[a] != 2)
            throw parse_error(lineno, 1,
                              "arc label " + std::to_string(labels_in_order[a]) + " used " + std::to_string(uses[a]) +
                                  " times");
    if (link.arc_count != 2 * link.n()) throw parse_error(lineno, 1, "arc count != 2 * crossings");

    // orientation: slot 0 is incoming, slot 2 outgoing; the over-strand
    // direction is a boolean t per crossing (t = over enters slot 1), and
    // every arc must have exactly one head and one tail. Propagate to a
    // fixpoint; components untouched by any slot-0/2 constraint (all-over
    // link components) get a deterministic seed.
    auto occ = arc_slots(link);
    std::vector<int> assigned(link.n(), -1);
    // incoming flag of a slot: -1 when it still depends on an unassigned t
    auto role = [&](const SlotRef& r) {
        switch (r.slot) {
            case 0: return 1;
            case 2: return 0;
            case 1: return assigned[r.crossing];
            default: return assigned[r.crossing] < 0 ? -1 : 1 - assigned[r.crossing];
        }
    };
    auto force = [&](const SlotRef& r, int incoming) {
        assigned[r.crossing] = (r.slot == 1) ? incoming : 1 - incoming;
    };
    auto sweep = [&]() {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int a = 0; a < link.arc_count; ++a) {
                int r0 = role(occ[a][0]), r1 = role(occ[a][1]);
                if (r0 >= 0 && r1 >= 0) {
                    if (r0 + r1 != 1) throw parse_error(0, 0, "orientation inconsistency at arc " + std::to_string(a));
                } else if (r0 >= 0) {
                    force(occ[a][1], 1 - r0);
                    progress = true;
                } else if (r1 >= 0) {
                    force(occ[a][0], 1 - r1);
                    progress = true;
                }
            }
        }
    };
    sweep();
    for (int k = 0; k < link.n(); ++k) {
        if (assigned[k] < 0) {
            assigned[k] = 1;
            sweep();
        }
    }
    for (int k = 0; k < link.n(); ++k) link.crossings[k].over_b_to_d = (assigned[k] == 1);
    return link;
}

std::string write_pd(const LinkDiagram& link) {
    std::ostringstream os;
    for (const auto& c : link.crossings) {
        os << "X";
        for (int s = 0; s < 4; ++s) os << " " << c.arcs[s] + 1;
        os << "\n";
    }
    return os.str();
}

State of_state(const LinkDiagram& link) {
    uint32_t code = 0;
    for (int k = 0; k < link.n(); ++k)
        if (link.crossings[k].sign() < 0) code |= 1u << (link.n() - 1 - k);
    return State(code, link.n());
}

State dof_state(const LinkDiagram& link) {
    State of = of_state(link);
    uint32_t mask = link.n() == 32 ? ~0u : ((1u << link.n()) - 1);
    return State(~of.code & mask, link.n());
}

MatchedGraph flatten(const LinkDiagram& link, State f) {
    if (f.n != link.n()) throw std::invalid_argument("flattening state length != crossing count");
    int n = link.n();
    // Per crossing, the flattening is either the wide edge (two trivalent
    // vertices joined by a matching edge, strands grouped the one way
    // compatible with the strand orientations) or the oriented smoothing
    // (strands merge, no vertex). Bit = 0 keeps the wide edge at positive
    // crossings, so the OF preset is the all-wide web.
    std::vector<char> wide(n);
    bool any_wide = false;
    for (int k = 0; k < n; ++k) {
        wide[k] = (f.bit(k) == (link.crossings[k].sign() < 0));
        any_wide |= (bool)wide[k];
    }
    if (!any_wide)
        throw std::invalid_argument("degenerate flattening: every crossing smoothed, no matching edge left");

    auto occ = arc_slots(link);
    // walk merged strands between wide-crossing legs. At a smoothed crossing
    // the caps pair slots the orientation-compatible way (same pairing as the
    // Seifert oracle); at a wide crossing the walk terminates.
    auto cap_partner = [&](int k, int s) {
        if (link.crossings[k].over_b_to_d) return s ^ 3;  // caps {0,3},{1,2}
        return s ^ 1;                                     // caps {0,1},{2,3}
    };
    auto arc_partner = [&](int k, int s) {
        int a = link.crossings[k].arcs[s];
        const auto& o = occ[a];
        return (o[0].crossing == k && o[0].slot == s) ? o[1] : o[0];
    };
    struct Strand {
        SlotRef from, to;  // terminal slots at wide crossings
        int min_arc;
    };
    std::vector<Strand> strands;
    std::vector<int> strand_at_slot(4 * n, -1), end_at_slot(4 * n, -1);
    size_t arcs_used = 0;
    for (int k = 0; k < n; ++k) {
        if (!wide[k]) continue;
        for (int s = 0; s < 4; ++s) {
            if (strand_at_slot[4 * k + s] >= 0) continue;
            Strand st;
            st.from = {k, s};
            st.min_arc = link.arc_count;
            SlotRef cur{k, s};
            while (true) {
                int a = link.crossings[cur.crossing].arcs[cur.slot];
                st.min_arc = std::min(st.min_arc, a);
                ++arcs_used;
                cur = arc_partner(cur.crossing, cur.slot);
                if (wide[cur.crossing]) break;
                cur = {cur.crossing, cap_partner(cur.crossing, cur.slot)};
            }
            st.to = cur;
            strand_at_slot[4 * k + s] = strand_at_slot[4 * cur.crossing + cur.slot] = (int)strands.size();
            end_at_slot[4 * k + s] = 0;
            end_at_slot[4 * cur.crossing + cur.slot] = 1;
            if (cur.crossing == k && cur.slot == s)
                throw std::invalid_argument("degenerate flattening: strand closes on itself");
            strands.push_back(st);
        }
    }
    // strands that avoid every wide crossing close into free circles; they
    // carry no vertices and cannot live in a matched graph
    if (arcs_used != (size_t)link.arc_count)
        throw std::invalid_argument("degenerate flattening: free loop with no matching edge");

    auto pad = [](int v, int width) {
        std::string s = std::to_string(v);
        while ((int)s.size() < width) s = "0" + s;
        return s;
    };
    int cw = (int)std::to_string(n).size();
    int aw = (int)std::to_string(2 * n).size();
    auto vname = [&](int k, bool b) { return "x" + pad(k + 1, cw) + (b ? "b" : "a"); };
    auto sname = [&](int idx) { return "s" + pad(strands[idx].min_arc + 1, aw); };

    std::ostringstream os;
    os << "graph " << link.name << "-" << f.to_string() << "\n";
    std::vector<int> wide_list;
    for (int k = 0; k < n; ++k) {
        if (!wide[k]) continue;
        wide_list.push_back(k);
        os << "vertex " << vname(k, false) << "\n";
        os << "vertex " << vname(k, true) << "\n";
    }
    // orientation-compatible grouping: the a-vertex holds slots {0,1} when
    // the over strand runs b->d, slots {1,2} otherwise
    auto at_a = [&](int k, int s) {
        if (link.crossings[k].over_b_to_d) return s == 0 || s == 1;
        return s == 1 || s == 2;
    };
    for (int k : wide_list) os << "edge m" << pad(k + 1, cw) << " " << vname(k, false) << " " << vname(k, true) << "\n";
    for (size_t i = 0; i < strands.size(); ++i) {
        const auto& st = strands[i];
        os << "edge " << sname((int)i) << " " << vname(st.from.crossing, !at_a(st.from.crossing, st.from.slot))
           << " " << vname(st.to.crossing, !at_a(st.to.crossing, st.to.slot)) << "\n";
    }
    auto strand_token = [&](int k, int s) {
        return sname(strand_at_slot[4 * k + s]) + "." + std::to_string(end_at_slot[4 * k + s]);
    };
    for (int k : wide_list) {
        std::string m = "m" + pad(k + 1, cw);
        bool bd = link.crossings[k].over_b_to_d;
        // ccw rotations after the matching token: (a,b)/(c,d) when the over
        // strand runs b->d, (b,c)/(d,a) otherwise
        int ua0 = bd ? 0 : 1, ua1 = bd ? 1 : 2, ub0 = bd ? 2 : 3, ub1 = bd ? 3 : 0;
        os << "rotation " << vname(k, false) << " " << m << ".0 " << strand_token(k, ua0) << " "
           << strand_token(k, ua1) << "\n";
        os << "rotation " << vname(k, true) << " " << m << ".1 " << strand_token(k, ub0) << " "
           << strand_token(k, ub1) << "\n";
    }
    os << "matching";
    for (int k : wide_list) os << " m" << pad(k + 1, cw);
    os << "\n";

    auto g = read_graph(os.str());
    auto rep = validate(g);
    if (!rep.ok()) {
        for (const auto& v : rep.violations)
            if (v.invariant == "embedding not genus 0") throw std::invalid_argument("non-planar flattening");
        throw std::invalid_argument("flatten produced invalid graph: " + rep.to_string());
    }
    return g;
}

int seifert_circle_count(const LinkDiagram& link) {
    // union-find over crossing slots; caps follow the orientation-compatible
    // smoothing, arcs join their two occurrences
    int n = link.n();
    std::vector<int> parent(4 * n);
    for (int i = 0; i < 4 * n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int k = 0; k < n; ++k) {
        if (link.crossings[k].over_b_to_d) {
            unite(4 * k + 0, 4 * k + 3);  // ins {a,b}: caps {a,d}, {b,c}
            unite(4 * k + 1, 4 * k + 2);
        } else {
            unite(4 * k + 0, 4 * k + 1);  // ins {a,d}: caps {a,b}, {c,d}
            unite(4 * k + 2, 4 * k + 3);
        }
    }
    auto occ = arc_slots(link);
    for (int a = 0; a < link.arc_count; ++a)
        unite(4 * occ[a][0].crossing + occ[a][0].slot, 4 * occ[a][1].crossing + occ[a][1].slot);
    std::vector<char> root_seen(4 * n, 0);
    int circles = 0;
    for (int i = 0; i < 4 * n; ++i)
        if (!root_seen[find(i)]) {
            root_seen[find(i)] = 1;
            ++circles;
        }
    return circles;
}

OrientabilityResult orientability_certificate(const MatchedGraph& g, const ResolutionDiagram& d) {
    OrientabilityResult res;
    int nc = d.circle_count();
    // corridor direction of a site passage with the circle's default
    // traversal: +1 when the strand enters from the ends[0] side
    auto passage_dir = [&](int circle, int pos) {
        const auto& circ = d.circles[circle];
        int site = circ[pos].a;
        const auto& prev = circ[(pos + circ.size() - 1) % circ.size()];
        int from_vertex = g.edge_ends[token_edge(prev.a)][token_end(prev.a)];
        return from_vertex == g.edge_ends[g.matching[site]][0] ? +1 : -1;
    };
    // constraints: orient circles so both strands of each 0-site run the same
    // corridor direction; relation between the two circles' flips
    std::vector<int> color(nc, 0);
    std::vector<int> parent(nc, -1);
    for (int start = 0; start < nc; ++start) {
        if (color[start]) continue;
        color[start] = 1;
        std::vector<int> queue{start};
        while (!queue.empty()) {
            int c = queue.back();
            queue.pop_back();
            for (const auto& arc : d.arcs) {
                int c0 = arc.circle[0], c1 = arc.circle[1];
                if (c0 != c && c1 != c) continue;
                int rel = passage_dir(c0, arc.pos[0]) * passage_dir(c1, arc.pos[1]);
                // color[c0] * color[c1] must equal rel
                int other = (c0 == c) ? c1 : c0;
                int want = rel * color[c];
                if (color[other] == 0) {
                    color[other] = want;
                    parent[other] = c;
                    queue.push_back(other);
                } else if (color[other] != want) {
                    // witness: path from c to root, path from other to root
                    res.ok = false;
                    res.conflict_circles.clear();
                    for (int x = c; x >= 0; x = parent[x]) res.conflict_circles.push_back(x);
                    for (int x = other; x >= 0; x = parent[x]) res.conflict_circles.push_back(x);
                    return res;
                }
            }
        }
    }
    res.ok = true;
    res.orientation = color;
    return res;
}

ZeroStateAudit zero_state_audit(const LinkDiagram& link, const MatchedGraph& web) {
    ZeroStateAudit audit;
    int n = web.matching_size();
    auto d0 = resolve(web, zero_state(n));
    audit.all_m = true;
    for (int i = 0; i < n; ++i) {
        if (arc_kind(web, zero_state(n), i) != ArcKind::M) {
            audit.all_m = false;
            audit.non_m_arcs.push_back(i);
        }
    }
    audit.orient = orientability_certificate(web, d0);
    audit.circles_zero_state = d0.circle_count();
    audit.seifert_circles = seifert_circle_count(link);
    audit.circle_count_matches = (audit.circles_zero_state == audit.seifert_circles);
    return audit;
}

WebFamilyReport web_family_check(const LinkDiagram& link, int exhaustive_cap, uint64_t seed, int sample_count) {
    WebFamilyReport rep;
    int n = link.n();
    std::vector<State> states;
    if (n <= exhaustive_cap) {
        for (uint32_t code = 0; code < (1u << n); ++code) states.push_back(State(code, n));
    } else {
        rep.sampled = true;
        std::mt19937_64 rng(seed);
        for (int i = 0; i < sample_count; ++i) states.push_back(State((uint32_t)(rng() & ((1u << n) - 1)), n));
    }
    struct Outcome {
        bool degenerate = false;
        bool member = true;
        bool audit = false;
    };
    std::vector<Outcome> results(states.size());
    parallel_for(states.size(), [&](size_t i) {
        MatchedGraph web;
        try {
            web = flatten(link, states[i]);
        } catch (const std::invalid_argument&) {
            // all-smoothed or free-loop states have no hypercube faces at
            // all, so they are vacuously in the family
            results[i].degenerate = true;
            return;
        }
        results[i].member = in_family_G(web).member;
        results[i].audit = zero_state_audit(link, web).pass();
    });
    for (size_t i = 0; i < states.size(); ++i) {
        rep.states_checked++;
        if (results[i].degenerate) {
            rep.degenerate_states++;
            continue;
        }
        if (!results[i].member) rep.violations.push_back(states[i]);
        if (results[i].audit) rep.audits_passed++;
    }
    return rep;
}

}  // namespace tf
