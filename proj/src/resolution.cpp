#include "tf/resolution.hpp"

#include "tf/parallel.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tf {

int ResolutionDiagram::circle_of_site(int matching_index, int port) const {
    for (int c = 0; c < (int)circles.size(); ++c)
        for (const auto& t : circles[c])
            if (t.kind == TravToken::Site && t.a == matching_index && t.b == port) return c;
    return -1;
}

std::vector<int> ResolutionDiagram::site_passages(int circle, const std::vector<int>& sites) const {
    std::vector<int> out;
    for (const auto& t : circles[circle])
        if (t.kind == TravToken::Site && std::find(sites.begin(), sites.end(), t.a) != sites.end())
            out.push_back(t.a);
    std::sort(out.begin(), out.end());
    return out;
}

ResolutionDiagram resolve(const MatchedGraph& g, State v) {
    if (v.n != g.matching_size()) throw std::invalid_argument("state length != |matching|");
    int ntok = 2 * g.num_edges();

    // site connectors: for each non-matching half-edge token, the partner
    // token across the resolution site at its vertex, plus (site, port)
    std::vector<int> partner(ntok, -1), site_of(ntok, -1), port_of(ntok, -1);
    for (int i = 0; i < g.matching_size(); ++i) {
        int m = g.matching[i];
        int legs[2][2];  // [endpoint 0|1][succ|pred]
        for (int end = 0; end < 2; ++end) {
            int mtok = make_token(m, end);
            int vtx = g.edge_ends[m][end];
            const auto& r = g.rotations[vtx];
            int pos = 0;
            while (r[pos] != mtok) ++pos;
            legs[end][0] = r[(pos + 1) % 3];  // successor
            legs[end][1] = r[(pos + 2) % 3];  // predecessor
        }
        // 0-resolution: two parallel strands through the site, succ <-> pred.
        // 1-resolution: the strands cross once, succ <-> succ.
        int a0, b0, a1, b1;
        if (!v.bit(i)) {
            a0 = legs[0][0]; b0 = legs[1][1];  // port 0
            a1 = legs[0][1]; b1 = legs[1][0];  // port 1
        } else {
            a0 = legs[0][0]; b0 = legs[1][0];
            a1 = legs[0][1]; b1 = legs[1][1];
        }
        partner[a0] = b0; partner[b0] = a0;
        partner[a1] = b1; partner[b1] = a1;
        site_of[a0] = site_of[b0] = site_of[a1] = site_of[b1] = i;
        port_of[a0] = port_of[b0] = 0;
        port_of[a1] = port_of[b1] = 1;
    }

    ResolutionDiagram d;
    d.state = v;
    std::vector<char> visited(ntok, 0);
    for (int start = 0; start < ntok; ++start) {
        if (visited[start] || g.is_matching_edge(token_edge(start))) continue;
        std::vector<TravToken> circ;
        int cur = start;
        do {
            int e = token_edge(cur);
            int other = make_token(e, 1 - token_end(cur));
            circ.push_back({TravToken::HalfEdge, cur, 0});
            circ.push_back({TravToken::HalfEdge, other, 0});
            visited[cur] = visited[other] = 1;
            circ.push_back({TravToken::Site, site_of[other], port_of[other]});
            cur = partner[other];
        } while (cur != start);
        d.circles.push_back(std::move(circ));
    }

    d.double_points.resize(d.circles.size());
    for (int c = 0; c < (int)d.circles.size(); ++c)
        for (const auto& t : d.circles[c])
            if (t.kind == TravToken::Site && v.bit(t.a)) d.double_points[c].push_back(t.a);
    for (auto& dp : d.double_points) std::sort(dp.begin(), dp.end());

    for (int i = 0; i < g.matching_size(); ++i) {
        if (v.bit(i)) continue;
        ResolutionDiagram::Arc arc;
        arc.matching_index = i;
        for (int port = 0; port < 2; ++port) {
            arc.circle[port] = -1;
            for (int c = 0; c < (int)d.circles.size() && arc.circle[port] < 0; ++c)
                for (int p = 0; p < (int)d.circles[c].size(); ++p) {
                    const auto& t = d.circles[c][p];
                    if (t.kind == TravToken::Site && t.a == i && t.b == port) {
                        arc.circle[port] = c;
                        arc.pos[port] = p;
                        break;
                    }
                }
        }
        d.arcs.push_back(arc);
    }
    return d;
}

char arc_kind_char(ArcKind k) {
    switch (k) {
        case ArcKind::M: return 'm';
        case ArcKind::Delta: return 'd';
        case ArcKind::Eta: return 'e';
    }
    return '?';
}

ArcKind arc_kind(const MatchedGraph& g, State v, int i) {
    if (v.bit(i)) throw std::invalid_argument("not a 0-resolved coordinate");
    int before = resolve(g, v).circle_count();
    int after = resolve(g, v.with_bit(i)).circle_count();
    switch (after - before) {
        case -1: return ArcKind::M;
        case 1: return ArcKind::Delta;
        case 0: return ArcKind::Eta;
    }
    throw std::logic_error("surgery changed circle count by more than 1");
}

std::string FaceReport::line() const {
    std::ostringstream os;
    os << "v=" << v.to_string() << " face=(" << i << "," << j << ")"
       << " kinds=" << arc_kind_char(k1) << "," << arc_kind_char(k2) << "|" << arc_kind_char(k3) << ","
       << arc_kind_char(k4) << " bad=" << (bad ? 1 : 0);
    return os.str();
}

std::vector<FaceReport> scan_faces(const MatchedGraph& g) {
    int n = g.matching_size();
    std::vector<FaceReport> out;
    for (uint32_t code = 0; code < (1u << n); ++code) {
        State v(code, n);
        for (int i = 0; i < n; ++i) {
            if (v.bit(i)) continue;
            for (int j = i + 1; j < n; ++j) {
                if (v.bit(j)) continue;
                FaceReport r;
                r.v = v;
                r.i = i;
                r.j = j;
                out.push_back(r);
            }
        }
    }
    // faces are independent; results land at their slot so the report order
    // stays (v lex, then (i,j)) regardless of TF_THREADS
    parallel_for(out.size(), [&](size_t idx) {
        FaceReport& r = out[idx];
        r.k1 = arc_kind(g, r.v, r.i);
        r.k2 = arc_kind(g, r.v.with_bit(r.i), r.j);
        r.k3 = arc_kind(g, r.v, r.j);
        r.k4 = arc_kind(g, r.v.with_bit(r.j), r.i);
        bool p1_dm = r.k1 == ArcKind::Delta && r.k2 == ArcKind::M;
        bool p1_ee = r.k1 == ArcKind::Eta && r.k2 == ArcKind::Eta;
        bool p2_dm = r.k3 == ArcKind::Delta && r.k4 == ArcKind::M;
        bool p2_ee = r.k3 == ArcKind::Eta && r.k4 == ArcKind::Eta;
        r.bad = (p1_dm && p2_ee) || (p2_dm && p1_ee);
    });
    return out;
}

FamilyResult in_family_G(const MatchedGraph& g) {
    for (const auto& r : scan_faces(g))
        if (r.bad) return {false, r};
    return {true, std::nullopt};
}

ConfigGraph configuration_graph(const MatchedGraph& g, State v) {
    auto d = resolve(g, v);
    ConfigGraph cg;
    cg.n_circles = d.circle_count();
    std::vector<int> degree(cg.n_circles, 0);
    std::vector<int> zero_sites;
    for (const auto& a : d.arcs) zero_sites.push_back(a.matching_index);
    for (const auto& a : d.arcs) {
        cg.edges.push_back({a.matching_index, a.circle[0], a.circle[1]});
        degree[a.circle[0]]++;
        degree[a.circle[1]]++;
    }
    cg.leaf.resize(cg.n_circles);
    for (int c = 0; c < cg.n_circles; ++c) cg.leaf[c] = (degree[c] == 1);

    // coleaf: in the fully surgered state, some circle passes this site
    // exactly once and meets no other surgered site
    auto top = resolve(g, ones_state(v.n));
    cg.coleaf.resize(cg.edges.size());
    for (size_t e = 0; e < cg.edges.size(); ++e) {
        int site = cg.edges[e].matching_index;
        bool coleaf = false;
        for (int c = 0; c < top.circle_count() && !coleaf; ++c) {
            auto passes = top.site_passages(c, zero_sites);
            coleaf = (passes.size() == 1 && passes[0] == site);
        }
        cg.coleaf[e] = coleaf;
    }
    return cg;
}

std::vector<int> restricted_circles(const ResolutionDiagram& d, const std::vector<int>& S) {
    std::vector<int> out;
    for (int c = 0; c < d.circle_count(); ++c)
        if (!d.site_passages(c, S).empty()) out.push_back(c);
    return out;
}

namespace {

// key identifying a circle across neighbouring states: its half-edge tokens
std::vector<int> circle_key(const std::vector<TravToken>& circ) {
    std::vector<int> key;
    for (const auto& t : circ)
        if (t.kind == TravToken::HalfEdge) key.push_back(t.a);
    std::sort(key.begin(), key.end());
    return key;
}

bool circle_meets_site(const std::vector<TravToken>& circ, int site) {
    for (const auto& t : circ)
        if (t.kind == TravToken::Site && t.a == site) return true;
    return false;
}

}  // namespace

SurgeryStep surgery_step(const ResolutionDiagram& before, const ResolutionDiagram& after, int site) {
    SurgeryStep st;
    st.site = site;
    std::map<std::vector<int>, int> after_by_key;
    std::vector<int> after_touched;
    for (int c = 0; c < after.circle_count(); ++c) {
        if (circle_meets_site(after.circles[c], site))
            after_touched.push_back(c);
        else
            after_by_key[circle_key(after.circles[c])] = c;
    }
    st.untouched.assign(before.circle_count(), -1);
    for (int c = 0; c < before.circle_count(); ++c) {
        if (circle_meets_site(before.circles[c], site)) {
            st.before_touched.push_back(c);
        } else {
            auto it = after_by_key.find(circle_key(before.circles[c]));
            if (it == after_by_key.end()) throw std::logic_error("untouched circle lost across surgery");
            st.untouched[c] = it->second;
        }
    }
    st.after_touched = after_touched;
    int delta = after.circle_count() - before.circle_count();
    if (delta == -1) st.kind = ArcKind::M;
    else if (delta == 1) st.kind = ArcKind::Delta;
    else st.kind = ArcKind::Eta;
    if (st.kind == ArcKind::M && (st.before_touched.size() != 2 || st.after_touched.size() != 1))
        throw std::logic_error("merge with unexpected circle incidence");
    if (st.kind == ArcKind::Delta && (st.before_touched.size() != 1 || st.after_touched.size() != 2))
        throw std::logic_error("split with unexpected circle incidence");
    return st;
}

std::vector<uint32_t> SurgeryStep::image_labels(uint32_t labels) const {
    std::vector<uint32_t> out;
    if (kind == ArcKind::Eta) return out;
    auto bit = [&](int c) -> uint32_t { return (labels >> c) & 1u; };
    uint32_t base = 0;
    for (int c = 0; c < (int)untouched.size(); ++c)
        if (untouched[c] >= 0 && bit(c)) base |= 1u << untouched[c];
    if (kind == ArcKind::M) {
        uint32_t la = bit(before_touched[0]), lb = bit(before_touched[1]);
        if (la && lb) return out;  // merge(x-,x-) = 0
        out.push_back(base | (((la || lb) ? 1u : 0u) << after_touched[0]));
    } else {
        if (bit(before_touched[0])) {
            out.push_back(base | (1u << after_touched[0]) | (1u << after_touched[1]));  // x- -> x-x-
        } else {
            out.push_back(base | (1u << after_touched[1]));  // x+ -> x+x- + x-x+
            out.push_back(base | (1u << after_touched[0]));
        }
    }
    return out;
}

}  // namespace tf
