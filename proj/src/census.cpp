#include "tf/census.hpp"

#include "tf/resolution.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace tf {

namespace {

int rot_step(const MatchedGraph& g, int vtx, int tok, int dir) {
    const auto& r = g.rotations[vtx];
    int pos = 0;
    while (r[pos] != tok) ++pos;
    return r[(pos + 3 + dir) % 3];
}

std::vector<int> rooted_code(const MatchedGraph& g, int root, int dir) {
    int nv = g.num_vertices();
    std::vector<int> num(nv, -1), entry(nv, -1);
    std::vector<int> order;
    int v0 = g.vertex_of_token(root);
    num[v0] = 0;
    entry[v0] = root;
    order.push_back(v0);
    std::vector<int> code;
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int v = order[qi];
        int d = entry[v];
        for (int k = 0; k < 3; ++k) {
            int opp = d ^ 1;
            int w = g.edge_ends[token_edge(d)][1 - token_end(d)];
            if (num[w] < 0) {
                num[w] = (int)order.size();
                entry[w] = opp;
                order.push_back(w);
            }
            // slot of opp relative to w's entry dart
            int slot = 0;
            int t = entry[w];
            while (t != opp && slot < 3) {
                t = rot_step(g, w, t, dir);
                ++slot;
            }
            code.push_back(num[w]);
            code.push_back(slot);
            code.push_back(g.is_matching_edge(token_edge(d)) ? 1 : 0);
            d = rot_step(g, v, d, dir);
        }
    }
    return code;
}

}  // namespace

std::vector<int> canonical_map_code(const MatchedGraph& g) {
    std::vector<int> best;
    for (int tok = 0; tok < 2 * g.num_edges(); ++tok)
        for (int dir : {+1, -1}) {
            auto code = rooted_code(g, tok, dir);
            if (best.empty() || code < best) best = std::move(code);
        }
    return best;
}

std::vector<int> canonical_abstract_code(const MatchedGraph& g) {
    int nv = g.num_vertices();
    std::vector<int> perm(nv);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
        std::vector<std::array<int, 3>> items;
        for (int e = 0; e < g.num_edges(); ++e) {
            int a = perm[g.edge_ends[e][0]], b = perm[g.edge_ends[e][1]];
            items.push_back({std::min(a, b), std::max(a, b), g.is_matching_edge(e) ? 1 : 0});
        }
        std::sort(items.begin(), items.end());
        std::vector<int> code;
        for (auto& it : items) {
            code.push_back(it[0]);
            code.push_back(it[1]);
            code.push_back(it[2]);
        }
        if (best.empty() || code < best) best = std::move(code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace {

// all loopless multigraphs on nv labeled vertices with every degree 3,
// as multiplicity maps over vertex pairs
void enumerate_cubic_multigraphs(int nv, std::vector<std::vector<std::pair<int, int>>>& out) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j) pairs.push_back({i, j});
    std::vector<int> deg(nv, 0), mult(pairs.size(), 0);
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == pairs.size()) {
            if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 3; })) {
                std::vector<std::pair<int, int>> edges;
                for (size_t k = 0; k < pairs.size(); ++k)
                    for (int c = 0; c < mult[k]; ++c) edges.push_back(pairs[k]);
                out.push_back(std::move(edges));
            }
            return;
        }
        auto [a, b] = pairs[idx];
        int maxm = std::min(3 - deg[a], 3 - deg[b]);
        for (int m = 0; m <= maxm; ++m) {
            mult[idx] = m;
            deg[a] += m;
            deg[b] += m;
            // prune: a's remaining pairs must be able to finish its degree
            bool feasible = true;
            if (idx + 1 < pairs.size()) {
                // vertex a is finished once idx passes its last pair
                for (int v = 0; v <= a; ++v) {
                    bool more = false;
                    for (size_t k = idx + 1; k < pairs.size() && !more; ++k)
                        more = (pairs[k].first == v || pairs[k].second == v);
                    if (!more && deg[v] != 3) {
                        feasible = false;
                        break;
                    }
                }
            }
            if (feasible) rec(idx + 1);
            deg[a] -= m;
            deg[b] -= m;
            mult[idx] = 0;
        }
    };
    rec(0);
}

MatchedGraph assemble(int nv, const std::vector<std::pair<int, int>>& edges,
                      const std::vector<std::array<int, 3>>& rotations, const std::vector<int>& matching) {
    MatchedGraph g;
    g.name = "census";
    for (int v = 0; v < nv; ++v) g.vertex_ids.push_back("v" + std::to_string(v + 1));
    for (size_t e = 0; e < edges.size(); ++e) {
        g.edge_ids.push_back("e" + std::to_string(e + 1));
        g.edge_ends.push_back({edges[e].first, edges[e].second});
    }
    g.rotations = rotations;
    g.matching = matching;
    return g;
}

// all perfect matchings of the edge list, as sorted edge-index sets
void perfect_matchings(int nv, const std::vector<std::pair<int, int>>& edges, std::vector<std::vector<int>>& out) {
    std::vector<char> used(nv, 0);
    std::vector<int> cur;
    std::function<void()> rec = [&]() {
        int first = 0;
        while (first < nv && used[first]) ++first;
        if (first == nv) {
            out.push_back(cur);
            return;
        }
        for (size_t e = 0; e < edges.size(); ++e) {
            auto [a, b] = edges[e];
            if (a != first && b != first) continue;
            if (used[a] || used[b]) continue;
            if (!cur.empty() && (int)e < cur.back()) continue;  // ascending edge indices
            used[a] = used[b] = 1;
            cur.push_back((int)e);
            rec();
            cur.pop_back();
            used[a] = used[b] = 0;
        }
    };
    rec();
}

}  // namespace

CensusResult census_exhaustive(int m) {
    if (m < 1 || m > 3) throw std::invalid_argument("use sample mode");
    int nv = 2 * m;
    std::vector<std::vector<std::pair<int, int>>> graphs;
    enumerate_cubic_multigraphs(nv, graphs);

    CensusResult res;
    res.m = m;
    std::set<std::vector<int>> embedding_codes_seen;
    // abstract code -> (index into classes)
    std::map<std::vector<int>, size_t> abstract_index;
    std::map<std::vector<int>, std::set<std::vector<int>>> abstract_embeddings;

    for (const auto& edges : graphs) {
        int ne = (int)edges.size();
        // incident tokens per vertex
        std::vector<std::vector<int>> inc(nv);
        for (int e = 0; e < ne; ++e) {
            inc[edges[e].first].push_back(make_token(e, 0));
            inc[edges[e].second].push_back(make_token(e, 1));
        }
        std::vector<std::vector<int>> matchings;
        perfect_matchings(nv, edges, matchings);
        if (matchings.empty()) continue;

        for (uint32_t rbits = 0; rbits < (1u << nv); ++rbits) {
            std::vector<std::array<int, 3>> rot(nv);
            for (int v = 0; v < nv; ++v) {
                rot[v] = {inc[v][0], inc[v][1], inc[v][2]};
                if (rbits & (1u << v)) std::swap(rot[v][1], rot[v][2]);
            }
            for (const auto& matching : matchings) {
                auto g = assemble(nv, edges, rot, matching);
                if (!is_connected(g)) continue;
                if (g.num_vertices() - g.num_edges() + face_count(g) != 2) continue;

                auto mcode = canonical_map_code(g);
                if (!embedding_codes_seen.insert(mcode).second) continue;

                auto acode = canonical_abstract_code(g);
                auto it = abstract_index.find(acode);
                if (it == abstract_index.end()) {
                    CensusClass cls;
                    cls.representative = g;
                    cls.in_family = in_family_G(g).member;
                    cls.embeddings = 0;
                    abstract_index[acode] = res.classes.size();
                    res.classes.push_back(std::move(cls));
                }
                abstract_embeddings[acode].insert(mcode);
            }
        }
    }

    for (auto& [acode, idx] : abstract_index) res.classes[idx].embeddings = abstract_embeddings[acode].size();
    res.abstract_total = res.classes.size();
    for (const auto& cls : res.classes) {
        res.embeddings_total += cls.embeddings;
        if (cls.in_family) {
            res.abstract_in_family++;
            res.embeddings_in_family += cls.embeddings;
        }
    }
    // canonical order: classes were appended in discovery order; reorder by code
    std::vector<size_t> order;
    for (auto& [acode, idx] : abstract_index) order.push_back(idx);
    std::vector<CensusClass> sorted;
    for (size_t idx : order) sorted.push_back(std::move(res.classes[idx]));
    res.classes = std::move(sorted);
    return res;
}

CensusResult census_sample(int m, int count, uint64_t seed) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    int nv = 2 * m;
    std::mt19937_64 rng(seed);
    CensusResult res;
    res.m = m;
    res.sampled = true;

    int accepted = 0;
    while (accepted < count) {
        // random pairing of the 3*nv dart slots; slot order gives the rotation
        std::vector<int> slots(3 * nv);
        std::iota(slots.begin(), slots.end(), 0);
        std::shuffle(slots.begin(), slots.end(), rng);
        std::vector<std::pair<int, int>> edges;
        bool loop = false;
        for (int k = 0; k < 3 * nv && !loop; k += 2) {
            int a = slots[k] / 3, b = slots[k + 1] / 3;
            if (a == b) loop = true;
            edges.push_back({a, b});
        }
        if (loop) continue;
        // slot -> token
        std::vector<std::array<int, 3>> rot(nv, {-1, -1, -1});
        for (int e = 0; e < (int)edges.size(); ++e) {
            int sa = slots[2 * e], sb = slots[2 * e + 1];
            rot[sa / 3][sa % 3] = make_token(e, 0);
            rot[sb / 3][sb % 3] = make_token(e, 1);
        }
        std::vector<std::vector<int>> matchings;
        perfect_matchings(nv, edges, matchings);
        if (matchings.empty()) continue;
        auto g = assemble(nv, edges, rot, matchings[rng() % matchings.size()]);
        if (!is_connected(g)) continue;
        if (g.num_vertices() - g.num_edges() + face_count(g) != 2) continue;
        ++accepted;
        res.embeddings_total++;
        res.abstract_total++;
        if (in_family_G(g).member) {
            res.embeddings_in_family++;
            res.abstract_in_family++;
        }
    }
    return res;
}

std::string CensusResult::summary() const {
    char buf[64];
    std::ostringstream os;
    os << "census m=" << m << " mode=" << (sampled ? "sample" : "exhaustive") << "\n";
    snprintf(buf, sizeof buf, "%.4f", fraction_embeddings());
    os << "embeddings total=" << embeddings_total << " in_family=" << embeddings_in_family << " fraction=" << buf
       << "\n";
    snprintf(buf, sizeof buf, "%.4f", fraction_abstract());
    os << "abstract total=" << abstract_total << " in_family=" << abstract_in_family << " fraction=" << buf << "\n";
    return os.str();
}

}  // namespace tf
