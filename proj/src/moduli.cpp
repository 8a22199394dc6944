#include "tf/moduli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tf {

namespace {

// cached diagrams and surgery steps for the sub-hypercube of one face
struct FaceContext {
    const MatchedGraph& g;
    State base;
    std::vector<int> coords;
    int k;
    std::vector<ResolutionDiagram> diagrams;          // per tmask
    std::vector<std::vector<SurgeryStep>> steps;      // [tmask][pos], valid when pos not in tmask

    FaceContext(const MatchedGraph& graph, State b, const std::vector<int>& cs)
        : g(graph), base(b), coords(cs), k((int)cs.size()) {
        for (int p = 0; p < k; ++p)
            if (b.bit(coords[p])) throw std::invalid_argument("face coordinate not 0-resolved in base state");
        diagrams.resize(1u << k);
        for (uint32_t t = 0; t < (1u << k); ++t) diagrams[t] = resolve(g, state_of(t));
        steps.resize(1u << k);
        for (uint32_t t = 0; t < (1u << k); ++t) {
            steps[t].resize(k);
            for (int p = 0; p < k; ++p)
                if (!(t & (1u << p))) steps[t][p] = surgery_step(diagrams[t], diagrams[t | (1u << p)], coords[p]);
        }
    }

    State state_of(uint32_t tmask) const {
        State s = base;
        for (int p = 0; p < k; ++p)
            if (tmask & (1u << p)) s = s.with_bit(coords[p]);
        return s;
    }
};

std::string label_string(uint32_t mask, const std::vector<int>& circles) {
    std::string s;
    for (int c : circles) s += (mask >> c) & 1 ? '-' : '+';
    return s;
}

}  // namespace

std::vector<std::vector<int>> ChainPoset::maximal_chains() const {
    std::vector<std::vector<int>> chains;
    if (empty()) return chains;
    std::vector<int> cur(levels.size(), -1);
    std::function<void(int, int)> dfs = [&](int level, int elem) {
        cur[level] = elem;
        if (level == index()) {
            chains.push_back(cur);
            return;
        }
        for (const auto& cv : covers[level])
            if (cv.from == elem) dfs(level + 1, cv.to);
    };
    for (int e = 0; e < (int)levels[0].size(); ++e) dfs(0, e);
    return chains;
}

ChainPoset face_poset(const MatchedGraph& g, const DecoratedFace& face) {
    FaceContext ctx(g, face.base, face.coords);
    int k = ctx.k;
    uint32_t full = (1u << k) - 1;

    // forward reachability from (0, y)
    std::vector<std::set<uint32_t>> reach(1u << k);
    reach[0].insert(face.y);
    for (int level = 0; level < k; ++level) {
        for (uint32_t t = 0; t < (1u << k); ++t) {
            if (__builtin_popcount(t) != level) continue;
            for (uint32_t labels : reach[t])
                for (int p = 0; p < k; ++p) {
                    if (t & (1u << p)) continue;
                    for (uint32_t out : ctx.steps[t][p].image_labels(labels)) reach[t | (1u << p)].insert(out);
                }
        }
    }
    // backward pruning from (full, x)
    std::vector<std::set<uint32_t>> good(1u << k);
    if (reach[full].count(face.x)) good[full].insert(face.x);
    for (int level = k - 1; level >= 0; --level) {
        for (uint32_t t = 0; t < (1u << k); ++t) {
            if (__builtin_popcount(t) != level) continue;
            for (uint32_t labels : reach[t])
                for (int p = 0; p < k && !good[t].count(labels); ++p) {
                    if (t & (1u << p)) continue;
                    for (uint32_t out : ctx.steps[t][p].image_labels(labels))
                        if (good[t | (1u << p)].count(out)) {
                            good[t].insert(labels);
                            break;
                        }
                }
        }
    }
    if (!good[0].count(face.y)) throw std::invalid_argument("not a decorated face");

    ChainPoset poset;
    poset.levels.resize(k + 1);
    poset.covers.resize(k);
    std::map<std::pair<uint32_t, uint32_t>, int> index_of;
    for (int level = 0; level <= k; ++level) {
        std::vector<ChainPoset::Elem> elems;
        for (uint32_t t = 0; t < (1u << k); ++t) {
            if (__builtin_popcount(t) != level) continue;
            for (uint32_t labels : good[t]) elems.push_back({t, labels});
        }
        std::sort(elems.begin(), elems.end());
        for (int i = 0; i < (int)elems.size(); ++i) index_of[{elems[i].tmask, elems[i].labels}] = i;
        poset.levels[level] = std::move(elems);
    }
    for (int level = 0; level < k; ++level) {
        for (int i = 0; i < (int)poset.levels[level].size(); ++i) {
            const auto& e = poset.levels[level][i];
            for (int p = 0; p < k; ++p) {
                if (e.tmask & (1u << p)) continue;
                for (uint32_t out : ctx.steps[e.tmask][p].image_labels(e.labels)) {
                    auto it = index_of.find({e.tmask | (1u << p), out});
                    if (it != index_of.end() && good[e.tmask | (1u << p)].count(out))
                        poset.covers[level].push_back({i, it->second, p});
                }
            }
        }
        std::sort(poset.covers[level].begin(), poset.covers[level].end(),
                  [](const ChainPoset::Cover& a, const ChainPoset::Cover& b) {
                      if (a.from != b.from) return a.from < b.from;
                      if (a.coord_pos != b.coord_pos) return a.coord_pos < b.coord_pos;
                      return a.to < b.to;
                  });
    }
    return poset;
}

std::vector<DecoratedFace> enumerate_decorated_faces(const MatchedGraph& g, int index) {
    int n = g.matching_size();
    std::vector<DecoratedFace> out;
    for (uint32_t code = 0; code < (1u << n); ++code) {
        State v(code, n);
        std::vector<int> zeros;
        for (int i = 0; i < n; ++i)
            if (!v.bit(i)) zeros.push_back(i);
        if ((int)zeros.size() < index) continue;
        // ascending subsets of the zero coordinates
        std::vector<int> pick(index);
        std::function<void(int, int)> choose = [&](int from, int depth) {
            if (depth == index) {
                std::vector<int> S(pick);
                FaceContext ctx(g, v, S);
                auto rest = restricted_circles(ctx.diagrams[0], S);
                uint32_t full = (1u << ctx.k) - 1;
                for (uint32_t sub = 0; sub < (1u << rest.size()); ++sub) {
                    uint32_t y = 0;
                    for (size_t b = 0; b < rest.size(); ++b)
                        if (sub & (1u << b)) y |= 1u << rest[b];
                    // forward closure to the top state
                    std::vector<std::set<uint32_t>> reach(1u << ctx.k);
                    reach[0].insert(y);
                    for (int level = 0; level < ctx.k; ++level)
                        for (uint32_t t = 0; t < (1u << ctx.k); ++t) {
                            if (__builtin_popcount(t) != level) continue;
                            for (uint32_t labels : reach[t])
                                for (int p = 0; p < ctx.k; ++p) {
                                    if (t & (1u << p)) continue;
                                    for (uint32_t o : ctx.steps[t][p].image_labels(labels))
                                        reach[t | (1u << p)].insert(o);
                                }
                        }
                    for (uint32_t x : reach[full]) out.push_back({v, S, y, x});
                }
                return;
            }
            for (int i = from; i < (int)zeros.size(); ++i) {
                pick[depth] = zeros[i];
                choose(i + 1, depth + 1);
            }
        };
        choose(0, 0);
    }
    return out;
}

const char* index2_class_name(Index2Class c) {
    switch (c) {
        case Index2Class::LeafOrColeaf: return "LEAF_OR_COLEAF";
        case Index2Class::TwoCircleParallel: return "TWO_CIRCLE_PARALLEL";
        case Index2Class::Butterfly: return "BUTTERFLY";
    }
    return "?";
}

Index2Class classify_index2(const MatchedGraph& g, const DecoratedFace& face) {
    if (face.index() != 2) throw std::invalid_argument("classify_index2 needs an index-2 face");
    FaceContext ctx(g, face.base, face.coords);
    const auto& bottom = ctx.diagrams[0];
    const auto& top = ctx.diagrams[3];

    bool leaf = false, coleaf = false;
    for (int c : restricted_circles(bottom, face.coords))
        leaf |= (bottom.site_passages(c, face.coords).size() == 1);
    for (int c : restricted_circles(top, face.coords))
        coleaf |= (top.site_passages(c, face.coords).size() == 1);

    Index2Class result;
    if (leaf || coleaf) {
        result = Index2Class::LeafOrColeaf;
    } else {
        ArcKind ka = ctx.steps[0][0].kind;
        ArcKind kb = ctx.steps[0][1].kind;
        if (ka == ArcKind::Eta || kb == ArcKind::Eta)
            throw std::invalid_argument("classify_index2: eta arc in a decorated face");
        if (ka != kb) throw std::logic_error("mixed arc kinds without a leaf or coleaf");
        if (ka == ArcKind::M) {
            auto rest = restricted_circles(bottom, face.coords);
            if (rest.size() != 2) throw std::logic_error("parallel m-arc face without two circles");
            result = Index2Class::TwoCircleParallel;
        } else {
            auto rest = restricted_circles(bottom, face.coords);
            if (rest.size() != 1) throw std::logic_error("butterfly face without a single circle");
            result = Index2Class::Butterfly;
        }
    }
    int k = face_poset(g, face).middle_count();
    int expect = (result == Index2Class::Butterfly) ? 4 : 2;
    if (k != expect)
        throw std::logic_error("index-2 middle count " + std::to_string(k) + " does not match class " +
                               index2_class_name(result));
    return result;
}

namespace {

int circle_containing_half_edge(const ResolutionDiagram& d, int he_token) {
    for (int c = 0; c < d.circle_count(); ++c)
        for (const auto& t : d.circles[c])
            if (t.kind == TravToken::HalfEdge && t.a == he_token) return c;
    return -1;
}

// The residual segments P and Q of the butterfly circle. Cutting the circle
// at the four arc endpoints leaves four runs; deleting the four paths that
// connect the endpoints to the double point removes one opposite pair of
// runs, namely the pair separated by the double point's two passages. P and
// Q are the other pair, as half-edge token lists.
std::array<std::vector<int>, 2> butterfly_segments(const std::vector<TravToken>& circ, State v, int site_i,
                                                   int site_j) {
    int nsz = (int)circ.size();
    std::vector<int> cuts;
    for (int i = 0; i < nsz; ++i)
        if (circ[i].kind == TravToken::Site && (circ[i].a == site_i || circ[i].a == site_j)) cuts.push_back(i);
    if (cuts.size() != 4) throw std::logic_error("butterfly circle without four arc endpoints");

    auto segment_of = [&](int pos) {
        for (int t = 0; t < 4; ++t) {
            int from = cuts[t], to = cuts[(t + 1) % 4];
            for (int i = (from + 1) % nsz; i != to; i = (i + 1) % nsz)
                if (i == pos) return t;
        }
        return -1;
    };
    // Double points whose two passages land in opposite segments separate
    // that segment pair. Separating double points come and go in pairs under
    // the local equivalence moves (a cancelling pair always splits the same
    // segments), so the essential double point of the reduced butterfly is
    // the pair class with an odd count; P and Q are the other pair.
    int separating[2] = {0, 0};  // [0]: passages across segments {0,2}; [1]: across {1,3}
    for (int i = 0; i < nsz; ++i) {
        if (circ[i].kind != TravToken::Site || circ[i].a == site_i || circ[i].a == site_j) continue;
        if (!v.bit(circ[i].a)) continue;
        for (int k = i + 1; k < nsz; ++k) {
            if (circ[k].kind != TravToken::Site || circ[k].a != circ[i].a || circ[k].b != 1 - circ[i].b) continue;
            int s1 = segment_of(i), s2 = segment_of(k);
            if ((s1 ^ s2) == 2) separating[s1 & 1]++;
        }
    }
    if ((separating[0] % 2) == (separating[1] % 2)) throw std::invalid_argument("degenerate butterfly");
    int vote = (separating[0] % 2) ? 1 : 0;  // P,Q = the non-essential pair
    std::array<std::vector<int>, 2> pq;
    for (int which = 0; which < 2; ++which) {
        int t = vote + 2 * which;
        int from = cuts[t], to = cuts[(t + 1) % 4];
        for (int i = (from + 1) % nsz; i != to; i = (i + 1) % nsz)
            if (circ[i].kind == TravToken::HalfEdge) pq[which].push_back(circ[i].a);
        if (pq[which].empty()) throw std::invalid_argument("degenerate butterfly");
    }
    return pq;
}

}  // namespace

ButterflyMatching butterfly_match(const MatchedGraph& g, const DecoratedFace& face) {
    if (classify_index2(g, face) != Index2Class::Butterfly)
        throw std::invalid_argument("butterfly_match needs a butterfly face");
    FaceContext ctx(g, face.base, face.coords);
    const auto& bottom = ctx.diagrams[0];
    int zc = restricted_circles(bottom, face.coords)[0];
    const auto& circ = bottom.circles[zc];
    int site_i = face.coords[0], site_j = face.coords[1];

    auto pq = butterfly_segments(circ, face.base, site_i, site_j);
    const auto& p_run = pq[0];
    const auto& q_run = pq[1];

    ButterflyMatching bm;
    for (int side = 0; side < 2; ++side) {
        const auto& mid = ctx.diagrams[1u << side];
        bm.p_circle[side] = circle_containing_half_edge(mid, p_run.front());
        bm.q_circle[side] = circle_containing_half_edge(mid, q_run.front());
        if (bm.p_circle[side] < 0 || bm.q_circle[side] < 0 || bm.p_circle[side] == bm.q_circle[side])
            throw std::logic_error("butterfly segments did not separate");
    }

    auto poset = face_poset(g, face);
    auto chains = poset.maximal_chains();
    if (chains.size() != 4) throw std::logic_error("butterfly face without four chains");
    // pair chains with equal (P,Q) labels across the two surgery orders
    std::vector<std::pair<int, int>> byside[2];
    for (int c = 0; c < 4; ++c) {
        const auto& mid = poset.levels[1][chains[c][1]];
        int side = (mid.tmask == 1u) ? 0 : 1;
        int lp = (mid.labels >> bm.p_circle[side]) & 1;
        int lq = (mid.labels >> bm.q_circle[side]) & 1;
        byside[side].push_back({lp * 2 + lq, c});
    }
    if (byside[0].size() != 2 || byside[1].size() != 2) throw std::logic_error("butterfly chains not two per order");
    int iv = 0;
    for (auto [key, c0] : byside[0]) {
        for (auto [key1, c1] : byside[1])
            if (key1 == key) bm.intervals[iv] = {c0, c1};
        ++iv;
    }
    return bm;
}

std::vector<std::pair<int, int>> interval_pairs(const MatchedGraph& g, const DecoratedFace& face,
                                                bool opposite_pairing) {
    auto cls = classify_index2(g, face);
    auto poset = face_poset(g, face);
    auto chains = poset.maximal_chains();
    if (cls != Index2Class::Butterfly) {
        if (chains.size() != 2) throw std::logic_error("k=2 face without two chains");
        return {{0, 1}};
    }
    auto bm = butterfly_match(g, face);
    if (!opposite_pairing) return {{bm.intervals[0][0], bm.intervals[0][1]}, {bm.intervals[1][0], bm.intervals[1][1]}};
    // the wrong pairing for the negative control: cross the intervals
    return {{bm.intervals[0][0], bm.intervals[1][1]}, {bm.intervals[1][0], bm.intervals[0][1]}};
}

std::vector<int> BoundaryGraph::component_lengths() const {
    std::vector<std::vector<int>> adj(n_chains);
    for (auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (int v = 0; v < n_chains; ++v)
        if (adj[v].size() != 2) throw std::logic_error("boundary graph is not 2-regular");
    std::vector<char> seen(n_chains, 0);
    std::vector<int> lengths;
    for (int start = 0; start < n_chains; ++start) {
        if (seen[start]) continue;
        int len = 0, prev = -1, cur = start;
        while (!seen[cur]) {
            seen[cur] = 1;
            ++len;
            int nxt = (adj[cur][0] != prev) ? adj[cur][0] : adj[cur][1];
            prev = cur;
            cur = nxt;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

bool BoundaryGraph::all_six_cycles() const {
    auto lens = component_lengths();
    return std::all_of(lens.begin(), lens.end(), [](int l) { return l == 6; });
}

BoundaryGraph boundary_graph(const MatchedGraph& g, const DecoratedFace& face, bool opposite_pairing) {
    if (face.index() != 3) throw std::invalid_argument("boundary_graph needs an index-3 face");
    auto poset = face_poset(g, face);
    // chains = adjacent (level-1, level-2) cover pairs
    struct Chain {
        int e1, e2;
    };
    std::vector<Chain> chains;
    std::map<std::pair<int, int>, int> chain_id;
    for (const auto& cv : poset.covers[1]) {
        chain_id[{cv.from, cv.to}] = (int)chains.size();
        chains.push_back({cv.from, cv.to});
    }
    BoundaryGraph bg;
    bg.n_chains = (int)chains.size();

    auto add_pairs = [&](const std::vector<std::pair<int, int>>& mids, const std::vector<int>& chain_of_mid) {
        for (auto& [m1, m2] : mids) bg.edges.push_back({chain_of_mid[m1], chain_of_mid[m2]});
    };

    // upper index-2 subfaces: fix the first step at a level-1 element
    for (int e1 = 0; e1 < (int)poset.levels[1].size(); ++e1) {
        const auto& el = poset.levels[1][e1];
        int cpos = __builtin_ctz(el.tmask);
        std::vector<int> subcoords;
        for (int p = 0; p < 3; ++p)
            if (p != cpos) subcoords.push_back(face.coords[p]);
        DecoratedFace sub{face.base.with_bit(face.coords[cpos]), subcoords, el.labels, face.x};
        auto subposet = face_poset(g, sub);
        auto subchains = subposet.maximal_chains();
        // map sub-middle -> our chain (e1, e2)
        std::vector<int> chain_of_mid(subchains.size(), -1);
        for (size_t sc = 0; sc < subchains.size(); ++sc) {
            const auto& mid = subposet.levels[1][subchains[sc][1]];
            int q = subcoords[__builtin_ctz(mid.tmask)];
            int qpos = 0;
            while (face.coords[qpos] != q) ++qpos;
            uint32_t tmask2 = el.tmask | (1u << qpos);
            // find the level-2 element with these labels
            int e2 = -1;
            for (int i = 0; i < (int)poset.levels[2].size(); ++i)
                if (poset.levels[2][i].tmask == tmask2 && poset.levels[2][i].labels == mid.labels) e2 = i;
            auto it = chain_id.find({e1, e2});
            if (e2 < 0 || it == chain_id.end()) throw std::logic_error("subface chain missing upstairs");
            chain_of_mid[sc] = it->second;
        }
        add_pairs(interval_pairs(g, sub, opposite_pairing), chain_of_mid);
    }
    // lower index-2 subfaces: fix the last step at a level-2 element
    for (int e2 = 0; e2 < (int)poset.levels[2].size(); ++e2) {
        const auto& el = poset.levels[2][e2];
        std::vector<int> subcoords;
        for (int p = 0; p < 3; ++p)
            if (el.tmask & (1u << p)) subcoords.push_back(face.coords[p]);
        DecoratedFace sub{face.base, subcoords, face.y, el.labels};
        auto subposet = face_poset(g, sub);
        auto subchains = subposet.maximal_chains();
        std::vector<int> chain_of_mid(subchains.size(), -1);
        for (size_t sc = 0; sc < subchains.size(); ++sc) {
            const auto& mid = subposet.levels[1][subchains[sc][1]];
            int q = subcoords[__builtin_ctz(mid.tmask)];
            int qpos = 0;
            while (face.coords[qpos] != q) ++qpos;
            int e1 = -1;
            for (int i = 0; i < (int)poset.levels[1].size(); ++i)
                if (poset.levels[1][i].tmask == (1u << qpos) && poset.levels[1][i].labels == mid.labels) e1 = i;
            auto it = chain_id.find({e1, e2});
            if (e1 < 0 || it == chain_id.end()) throw std::logic_error("subface chain missing downstairs");
            chain_of_mid[sc] = it->second;
        }
        add_pairs(interval_pairs(g, sub, opposite_pairing), chain_of_mid);
    }
    return bg;
}

std::string SixCycleRow::line(const MatchedGraph& g) const {
    FaceContext ctx(g, face.base, face.coords);
    auto rb = restricted_circles(ctx.diagrams[0], face.coords);
    auto rt = restricted_circles(ctx.diagrams.back(), face.coords);
    std::ostringstream os;
    os << "face v=" << face.base.to_string() << " S=";
    for (size_t i = 0; i < face.coords.size(); ++i) os << (i ? "," : "") << face.coords[i];
    os << " x=" << label_string(face.x, rt) << " y=" << label_string(face.y, rb) << " components=";
    for (size_t i = 0; i < components.size(); ++i) os << (i ? "," : "") << components[i];
    os << " pass=" << (pass ? 1 : 0);
    return os.str();
}

SixCycleReport verify_six_cycles(const MatchedGraph& g, bool opposite_pairing) {
    SixCycleReport rep;
    for (const auto& face : enumerate_decorated_faces(g, 3)) {
        SixCycleRow row;
        row.face = face;
        auto bg = boundary_graph(g, face, opposite_pairing);
        row.components = bg.component_lengths();
        row.pass = bg.all_six_cycles();
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(std::move(row));
        rep.faces_checked++;
    }
    return rep;
}

bool dual_poset_check(const MatchedGraph& g, const DecoratedFace& face) {
    auto poset = face_poset(g, face);
    FaceContext ctx(g, face.base, face.coords);
    int k = ctx.k;
    uint32_t full = (1u << k) - 1;
    auto complement = [&](uint32_t labels, uint32_t tmask) {
        int nc = ctx.diagrams[tmask].circle_count();
        return labels ^ ((nc == 32 ? ~0u : (1u << nc) - 1));
    };

    // downward reachability of the dual covering from (full, ~x)
    std::vector<std::set<uint32_t>> reach(1u << k);
    reach[full].insert(complement(face.x, full));
    for (int level = k; level > 0; --level) {
        for (uint32_t t = 0; t < (1u << k); ++t) {
            if (__builtin_popcount(t) != level) continue;
            for (uint32_t labels : reach[t])
                for (int p = 0; p < k; ++p) {
                    if (!(t & (1u << p))) continue;
                    auto st = surgery_step(ctx.diagrams[t], ctx.diagrams[t ^ (1u << p)], face.coords[p]);
                    for (uint32_t out : st.image_labels(labels)) reach[t ^ (1u << p)].insert(out);
                }
        }
    }
    if (!reach[0].count(complement(face.y, 0))) return false;
    // backward pruning toward (0, ~y)
    std::vector<std::set<uint32_t>> good(1u << k);
    good[0].insert(complement(face.y, 0));
    for (int level = 1; level <= k; ++level) {
        for (uint32_t t = 0; t < (1u << k); ++t) {
            if (__builtin_popcount(t) != level) continue;
            for (uint32_t labels : reach[t])
                for (int p = 0; p < k && !good[t].count(labels); ++p) {
                    if (!(t & (1u << p))) continue;
                    auto st = surgery_step(ctx.diagrams[t], ctx.diagrams[t ^ (1u << p)], face.coords[p]);
                    for (uint32_t out : st.image_labels(labels))
                        if (good[t ^ (1u << p)].count(out)) {
                            good[t].insert(labels);
                            break;
                        }
                }
        }
    }
    // order-reversing bijection: elements match with complemented labels
    for (int level = 0; level <= k; ++level) {
        for (const auto& e : poset.levels[level])
            if (!good[e.tmask].count(complement(e.labels, e.tmask))) return false;
        size_t starcount = 0;
        for (uint32_t t = 0; t < (1u << k); ++t)
            if (__builtin_popcount(t) == level) starcount += good[t].size();
        if (starcount != poset.levels[level].size()) return false;
    }
    // covers reverse: every P cover must be a dual cover downward
    for (int level = 0; level < k; ++level) {
        for (const auto& cv : poset.covers[level]) {
            const auto& from = poset.levels[level][cv.from];
            const auto& to = poset.levels[level + 1][cv.to];
            auto st = surgery_step(ctx.diagrams[to.tmask], ctx.diagrams[from.tmask], face.coords[cv.coord_pos]);
            auto outs = st.image_labels(complement(to.labels, to.tmask));
            if (std::find(outs.begin(), outs.end(), complement(from.labels, from.tmask)) == outs.end()) return false;
        }
    }
    return true;
}

bool leaf_product_check(const MatchedGraph& g, const DecoratedFace& face) {
    FaceContext ctx(g, face.base, face.coords);
    const auto& bottom = ctx.diagrams[0];
    int leaf_pos = -1;
    for (int c : restricted_circles(bottom, face.coords)) {
        auto passes = bottom.site_passages(c, face.coords);
        if (passes.size() == 1) {
            for (int p = 0; p < ctx.k; ++p)
                if (face.coords[p] == passes[0]) leaf_pos = p;
            break;
        }
    }
    if (leaf_pos < 0) return true;

    auto poset = face_poset(g, face);
    // elements keyed globally
    struct Key {
        int level;
        int idx;
        bool operator<(const Key& o) const { return level != o.level ? level < o.level : idx < o.idx; }
    };
    std::map<Key, Key> phi;  // without-leaf-arc -> with-leaf-arc via the leaf cover
    for (int level = 0; level < (int)poset.covers.size(); ++level) {
        for (const auto& cv : poset.covers[level]) {
            if (cv.coord_pos != leaf_pos) continue;
            Key from{level, cv.from};
            if (phi.count(from)) return false;  // more than one leaf cover
            phi[from] = {level + 1, cv.to};
        }
    }
    // every element without the leaf bit maps, every element with it is hit once
    size_t without = 0, with = 0;
    for (int level = 0; level <= poset.index(); ++level)
        for (int i = 0; i < (int)poset.levels[level].size(); ++i) {
            bool has = poset.levels[level][i].tmask & (1u << leaf_pos);
            (has ? with : without)++;
            if (!has && !phi.count({level, i})) return false;
        }
    if (with != without || phi.size() != without) return false;
    std::set<std::pair<int, int>> hit;
    for (auto& [k, v] : phi)
        if (!hit.insert({v.level, v.idx}).second) return false;
    // covers commute with phi on the non-leaf coordinates
    std::set<std::array<int, 4>> covers0, covers1;  // (level, from, to, coord) in phi-image coordinates
    for (int level = 0; level < (int)poset.covers.size(); ++level) {
        for (const auto& cv : poset.covers[level]) {
            if (cv.coord_pos == leaf_pos) continue;
            bool has = poset.levels[level][cv.from].tmask & (1u << leaf_pos);
            if (!has) {
                auto f = phi.at({level, cv.from});
                auto t = phi.at({level + 1, cv.to});
                covers0.insert({f.level, f.idx, t.idx, cv.coord_pos});
            } else {
                covers1.insert({level, cv.from, cv.to, cv.coord_pos});
            }
        }
    }
    return covers0 == covers1;
}

CoverReport cover_check(const MatchedGraph& g) {
    CoverReport rep;
    int n = g.matching_size();
    for (uint32_t code = 0; code < (1u << n); ++code) {
        State v(code, n);
        std::vector<int> zeros;
        for (int i = 0; i < n; ++i)
            if (!v.bit(i)) zeros.push_back(i);
        for (size_t a = 0; a < zeros.size(); ++a) {
            for (size_t b = a + 1; b < zeros.size(); ++b) {
                std::vector<int> S{zeros[a], zeros[b]};
                FaceContext ctx(g, v, S);
                auto rest_bottom = restricted_circles(ctx.diagrams[0], S);
                auto rest_top = restricted_circles(ctx.diagrams[3], S);
                for (uint32_t sub = 0; sub < (1u << rest_bottom.size()); ++sub) {
                    uint32_t y = 0;
                    for (size_t t = 0; t < rest_bottom.size(); ++t)
                        if (sub & (1u << t)) y |= 1u << rest_bottom[t];
                    // reachable tops
                    std::set<uint32_t> tops;
                    for (int first : {0, 1}) {
                        for (uint32_t mid : ctx.steps[0][first].image_labels(y))
                            for (uint32_t top : ctx.steps[1u << first][1 - first].image_labels(mid)) tops.insert(top);
                    }
                    // grading-compatible tops: quantum grading is preserved
                    Generator bot{v, y, ctx.diagrams[0].circle_count()};
                    for (uint32_t subx = 0; subx < (1u << rest_top.size()); ++subx) {
                        uint32_t x = 0;
                        for (size_t t = 0; t < rest_top.size(); ++t)
                            if (subx & (1u << t)) x |= 1u << rest_top[t];
                        Generator topg{ctx.state_of(3), x, ctx.diagrams[3].circle_count()};
                        if (topg.gr_q() != bot.gr_q()) continue;
                        if (!tops.count(x)) rep.empty_hom_pairs++;
                    }
                    for (uint32_t x : tops) {
                        DecoratedFace face{v, S, y, x};
                        rep.faces_checked++;
                        auto poset = face_poset(g, face);
                        int k = poset.middle_count();
                        if (k != 2 && k != 4) {
                            rep.failures.push_back("face " + v.to_string() + " middles=" + std::to_string(k));
                            continue;
                        }
                        auto chains = poset.maximal_chains();
                        for (auto& [c0, c1] : interval_pairs(g, face)) {
                            rep.intervals_checked++;
                            // interval endpoints must project to the two broken cube flows
                            int first0 = poset.levels[1][chains[c0][1]].tmask;
                            int first1 = poset.levels[1][chains[c1][1]].tmask;
                            if (first0 == first1)
                                rep.failures.push_back("interval endpoints share a surgery order at v=" +
                                                       v.to_string());
                        }
                    }
                }
            }
        }
    }
    return rep;
}

RealizationReport realization_report(const MatchedGraph& g, Ring ring) {
    RealizationReport rep;
    rep.ring = ring;
    rep.shift = 1;
    auto cx = build_complex(g, ring);
    int n = cx.n;

    // independent covering test on raw diagrams: untouched circles matched by
    // their half-edge token sets, touched labels checked against the merge
    // and split tables
    auto he_key = [](const std::vector<TravToken>& circ) {
        std::vector<int> key;
        for (const auto& t : circ)
            if (t.kind == TravToken::HalfEdge) key.push_back(t.a);
        std::sort(key.begin(), key.end());
        return key;
    };
    auto covering = [&](const ResolutionDiagram& d0, const ResolutionDiagram& d1, int site, uint32_t y,
                        uint32_t x) -> bool {
        std::map<std::vector<int>, int> after;
        std::vector<int> touched_after;
        for (int c = 0; c < d1.circle_count(); ++c) {
            bool meets = false;
            for (const auto& t : d1.circles[c]) meets |= (t.kind == TravToken::Site && t.a == site);
            if (meets)
                touched_after.push_back(c);
            else
                after[he_key(d1.circles[c])] = c;
        }
        std::vector<int> touched_before;
        for (int c = 0; c < d0.circle_count(); ++c) {
            bool meets = false;
            for (const auto& t : d0.circles[c]) meets |= (t.kind == TravToken::Site && t.a == site);
            if (meets) {
                touched_before.push_back(c);
            } else {
                auto it = after.find(he_key(d0.circles[c]));
                if (it == after.end()) return false;
                if (((y >> c) & 1) != ((x >> it->second) & 1)) return false;
            }
        }
        int diff = d1.circle_count() - d0.circle_count();
        if (diff == 0) return false;  // eta contributes nothing
        if (diff == -1) {
            int la = (y >> touched_before[0]) & 1, lb = (y >> touched_before[1]) & 1;
            int lc = (x >> touched_after[0]) & 1;
            if (la && lb) return false;
            return lc == (la | lb);
        }
        int la = (y >> touched_before[0]) & 1;
        int lc = (x >> touched_after[0]) & 1, ld = (x >> touched_after[1]) & 1;
        if (la) return lc && ld;
        return lc != ld;
    };

    std::vector<ResolutionDiagram> diagrams(1u << n);
    for (uint32_t code = 0; code < (1u << n); ++code) diagrams[code] = resolve(g, State(code, n));

    struct CellLine {
        int j, dim;
        std::string id;
        std::string text;
        bool operator<(const CellLine& o) const {
            if (j != o.j) return j > o.j;
            if (dim != o.dim) return dim < o.dim;
            return id < o.id;
        }
    };
    std::vector<CellLine> lines;

    for (auto& [j, levels] : cx.basis) {
        for (int i = 0; i <= n; ++i) {
            // rebuilt block C^{i,j} -> C^{i+1,j}
            IntMatrix rebuilt(i < n ? (int)levels[i + 1].size() : 0, (int)levels[i].size());
            if (i < n) {
                for (int col = 0; col < (int)levels[i].size(); ++col) {
                    const auto& u = levels[i][col];
                    for (int row = 0; row < (int)levels[i + 1].size(); ++row) {
                        const auto& w = levels[i + 1][row];
                        uint32_t dcode = u.v.code ^ w.v.code;
                        if (__builtin_popcount(dcode) != 1 || (u.v.code & dcode)) continue;
                        int coord = 0;
                        while (!(dcode & (1u << (n - 1 - coord)))) ++coord;
                        if (!covering(diagrams[u.v.code], diagrams[w.v.code], coord, u.labels, w.labels)) continue;
                        int sign = 1;
                        if (ring == Ring::Z) {
                            int ones = 0;
                            for (int p = 0; p < coord; ++p)
                                if (u.v.bit(p)) ++ones;
                            sign = ones % 2 ? -1 : 1;
                        }
                        rebuilt.at(row, col) = sign;
                    }
                }
                const IntMatrix& built = cx.diff.at(j)[i];
                for (int r = 0; r < rebuilt.rows; ++r)
                    for (int c = 0; c < rebuilt.cols; ++c) {
                        int want = built.at(r, c);
                        if (ring == Ring::Z2) want &= 1;
                        if (rebuilt.at(r, c) != want) {
                            std::ostringstream os;
                            os << "j=" << j << " i=" << i << " row=" << r << " col=" << c
                               << " rebuilt=" << rebuilt.at(r, c) << " complex=" << want;
                            rep.mismatches.push_back(os.str());
                        }
                    }
            }
            // cell lines: cell of dimension gr_h + N with its attachments
            for (int idx = 0; idx < (int)levels[i].size(); ++idx) {
                const auto& gen = levels[i][idx];
                CellLine cl;
                cl.j = j;
                cl.dim = i + rep.shift;
                cl.id = gen.id();
                std::ostringstream os;
                os << "cell gen=" << cl.id << " dim=" << cl.dim << " attach=";
                std::vector<std::string> atts;
                if (i > 0) {
                    const IntMatrix& below = cx.diff.at(j)[i - 1];
                    for (int c = 0; c < below.cols; ++c)
                        if (below.at(idx, c))
                            atts.push_back(levels[i - 1][c].id() + ":" + std::to_string(below.at(idx, c)));
                }
                std::sort(atts.begin(), atts.end());
                if (atts.empty()) os << "-";
                for (size_t a = 0; a < atts.size(); ++a) os << (a ? "," : "") << atts[a];
                cl.text = os.str();
                lines.push_back(cl);
            }
        }
    }
    std::sort(lines.begin(), lines.end());
    for (auto& l : lines) rep.cell_lines.push_back(l.text);
    rep.pass = rep.mismatches.empty();
    return rep;
}

}  // namespace tf
