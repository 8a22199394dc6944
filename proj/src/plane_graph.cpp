#include "tf/plane_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tf {

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& v : violations) {
        if (!s.empty()) s += "\n";
        s += v.invariant + ": " + v.element;
    }
    return s;
}

namespace {

// next token clockwise = predecessor in the ccw rotation
int rot_next(const MatchedGraph& g, int tok) {
    int v = g.vertex_of_token(tok);
    const auto& r = g.rotations[v];
    for (int i = 0; i < 3; ++i)
        if (r[i] == tok) return r[(i + 1) % 3];
    return -1;
}

}  // namespace

int face_count(const MatchedGraph& g) {
    // faces = orbits of tok -> sigma(alpha(tok))
    int ntok = 2 * g.num_edges();
    std::vector<char> seen(ntok, 0);
    int faces = 0;
    for (int t = 0; t < ntok; ++t) {
        if (seen[t]) continue;
        ++faces;
        int cur = t;
        while (!seen[cur]) {
            seen[cur] = 1;
            cur = rot_next(g, cur ^ 1);
        }
    }
    return faces;
}

bool is_connected(const MatchedGraph& g) {
    int n = g.num_vertices();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int t : g.rotations[v]) {
            int e = token_edge(t);
            if (e < 0 || e >= g.num_edges()) continue;
            int w = g.edge_ends[e][1 - token_end(t)];
            if (w >= 0 && w < n && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

ValidationReport validate(const MatchedGraph& g) {
    ValidationReport rep;
    auto add = [&](const std::string& inv, const std::string& el) { rep.violations.push_back({inv, el}); };

    // structural checks first: ill-formed token data makes the invariant
    // checks meaningless, so report and stop
    bool structural_ok = true;
    int ntok = 2 * g.num_edges();
    std::vector<int> tok_count(ntok, 0);
    for (int v = 0; v < g.num_vertices(); ++v) {
        for (int t : g.rotations[v]) {
            if (t < 0 || t >= ntok) {
                add("dangling half-edge token", "vertex " + g.vertex_ids[v]);
                structural_ok = false;
                continue;
            }
            // token k of edge e must sit at ends[k]
            if (g.edge_ends[token_edge(t)][token_end(t)] != v) {
                add("token at wrong vertex", g.token_str(t) + " in rotation of " + g.vertex_ids[v]);
                structural_ok = false;
            }
            tok_count[t]++;
        }
    }
    for (int t = 0; t < ntok; ++t) {
        if (tok_count[t] > 1) {
            add("duplicate token", g.token_str(t));
            structural_ok = false;
        } else if (tok_count[t] == 0) {
            add("dangling half-edge token", g.token_str(t) + " missing from all rotations");
            structural_ok = false;
        }
    }
    for (int e = 0; e < g.num_edges(); ++e) {
        if (g.edge_ends[e][0] == g.edge_ends[e][1]) {
            add("loop edge", g.edge_ids[e]);
            structural_ok = false;
        }
    }
    for (int m : g.matching) {
        if (m < 0 || m >= g.num_edges()) {
            add("unknown matching edge", std::to_string(m));
            structural_ok = false;
        }
    }
    if (!structural_ok) return rep;

    // every vertex has exactly 3 incident half-edges: the rotation array is
    // fixed-size, so this amounts to the token checks above plus degree
    std::vector<int> degree(g.num_vertices(), 0);
    for (int e = 0; e < g.num_edges(); ++e) {
        degree[g.edge_ends[e][0]]++;
        degree[g.edge_ends[e][1]]++;
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (degree[v] != 3) add("vertex not trivalent", g.vertex_ids[v]);

    // perfect matching
    if (g.matching.empty()) add("matching not perfect", "matching is empty");
    std::vector<int> cover(g.num_vertices(), 0);
    std::set<int> mset(g.matching.begin(), g.matching.end());
    if (mset.size() != g.matching.size()) add("matching not perfect", "repeated matching edge");
    for (int m : g.matching) {
        cover[g.edge_ends[m][0]]++;
        cover[g.edge_ends[m][1]]++;
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (cover[v] != 1) add("matching not perfect", g.vertex_ids[v] + " covered " + std::to_string(cover[v]) + " times");

    if (!is_connected(g)) add("graph not connected", g.name);

    if (rep.ok()) {
        int F = face_count(g);
        int euler = g.num_vertices() - g.num_edges() + F;
        if (euler != 2)
            add("embedding not genus 0", "V-E+F = " + std::to_string(euler));
    }
    return rep;
}

void require_valid(const MatchedGraph& g) {
    auto rep = validate(g);
    if (!rep.ok()) throw std::invalid_argument("invalid graph " + g.name + ": " + rep.to_string());
}

std::vector<int> cut_edges(const MatchedGraph& g, const FlipDisk& disk) {
    std::vector<char> inside(g.num_vertices(), 0);
    for (int v : disk.vertices) inside.at(v) = 1;
    std::vector<int> cut;
    for (int e = 0; e < g.num_edges(); ++e)
        if (inside[g.edge_ends[e][0]] != inside[g.edge_ends[e][1]]) cut.push_back(e);
    return cut;
}

MatchedGraph apply_flip(const MatchedGraph& g, const FlipDisk& disk) {
    if (disk.vertices.empty() || (int)disk.vertices.size() >= g.num_vertices())
        throw std::invalid_argument("not a flip disk");
    if (cut_edges(g, disk).size() > 2) throw std::invalid_argument("not a flip disk");
    MatchedGraph out = g;
    for (int v : disk.vertices) std::swap(out.rotations[v][0], out.rotations[v][2]);
    // keep rotations in canonical start position
    for (auto& r : out.rotations) {
        int best = 0;
        for (int i = 1; i < 3; ++i)
            if (out.token_str(r[i]) < out.token_str(r[best])) best = i;
        std::array<int, 3> nr{r[best], r[(best + 1) % 3], r[(best + 2) % 3]};
        r = nr;
    }
    auto rep = validate(out);
    if (!rep.ok()) throw std::logic_error("flip produced invalid graph: " + rep.to_string());
    return out;
}

std::vector<FlipDisk> enumerate_flip_disks(const MatchedGraph& g) {
    int n = g.num_vertices();
    if (n > 20) throw std::invalid_argument("flip disk enumeration capped at 20 vertices");
    std::vector<FlipDisk> out;
    for (uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        FlipDisk d;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) d.vertices.push_back(v);
        if (cut_edges(g, d).size() <= 2) out.push_back(std::move(d));
    }
    return out;
}

long long two_factor_count(const MatchedGraph& g) {
    // a 2-factor containing M is M plus one non-matching edge per vertex,
    // i.e. a perfect matching inside the non-matching edges
    std::vector<int> nonmatching;
    for (int e = 0; e < g.num_edges(); ++e)
        if (!g.is_matching_edge(e)) nonmatching.push_back(e);
    int n = g.num_vertices();
    std::vector<char> used(n, 0);
    long long count = 0;
    std::function<void(int)> rec = [&](int covered) {
        if (covered == n) {
            ++count;
            return;
        }
        int first = 0;
        while (first < n && used[first]) ++first;
        for (int e : nonmatching) {
            int a = g.edge_ends[e][0], b = g.edge_ends[e][1];
            if (a != first && b != first) continue;
            if (used[a] || used[b]) continue;
            used[a] = used[b] = 1;
            rec(covered + 2);
            used[a] = used[b] = 0;
        }
    };
    rec(0);
    return count;
}

namespace {

struct Reader {
    std::istringstream in;
    int lineno = 0;
    explicit Reader(const std::string& text) : in(text) {}
    bool next_line(std::vector<std::string>& fields, int& line) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++lineno;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            std::istringstream ls(raw);
            fields.clear();
            std::string f;
            while (ls >> f) fields.push_back(f);
            if (!fields.empty()) {
                line = lineno;
                return true;
            }
        }
        return false;
    }
};

}  // namespace

MatchedGraph read_graph(const std::string& text) {
    Reader rd(text);
    std::vector<std::string> f;
    int line = 0;

    MatchedGraph g;
    std::map<std::string, int> vindex;
    std::map<std::string, int> eindex;
    struct RawRot { std::string vid; std::array<std::string, 3> toks; int line; };
    std::vector<RawRot> raw_rots;
    std::vector<std::string> raw_matching;
    bool have_name = false, have_matching = false;
    int matching_line = 0;

    while (rd.next_line(f, line)) {
        const std::string& kw = f[0];
        if (kw == "graph") {
            if (f.size() != 2) throw parse_error(line, 1, "expected: graph <name>");
            g.name = f[1];
            have_name = true;
        } else if (kw == "vertex") {
            if (f.size() != 2) throw parse_error(line, 1, "expected: vertex <vid>");
            if (vindex.count(f[1])) throw parse_error(line, 1, "duplicate vertex id " + f[1]);
            vindex[f[1]] = (int)g.vertex_ids.size();
            g.vertex_ids.push_back(f[1]);
        } else if (kw == "edge") {
            if (f.size() != 4) throw parse_error(line, 1, "expected: edge <eid> <vid> <vid>");
            if (eindex.count(f[1])) throw parse_error(line, 1, "duplicate edge id " + f[1]);
            auto va = vindex.find(f[2]);
            auto vb = vindex.find(f[3]);
            if (va == vindex.end()) throw parse_error(line, 1, "unknown vertex id " + f[2]);
            if (vb == vindex.end()) throw parse_error(line, 1, "unknown vertex id " + f[3]);
            eindex[f[1]] = (int)g.edge_ids.size();
            g.edge_ids.push_back(f[1]);
            g.edge_ends.push_back({va->second, vb->second});
        } else if (kw == "rotation") {
            if (f.size() != 5) throw parse_error(line, 1, "rotation length != 3");
            raw_rots.push_back({f[1], {f[2], f[3], f[4]}, line});
        } else if (kw == "matching") {
            if (have_matching) throw parse_error(line, 1, "more than one matching line");
            if (f.size() < 2) throw parse_error(line, 1, "empty matching");
            raw_matching.assign(f.begin() + 1, f.end());
            have_matching = true;
            matching_line = line;
        } else {
            throw parse_error(line, 1, "unknown keyword " + kw);
        }
    }
    if (!have_name) throw parse_error(rd.lineno, 1, "missing graph line");
    if (!have_matching) throw parse_error(rd.lineno, 1, "missing matching line");

    // normalize: sort vertex and edge ids, remap indices
    std::vector<int> vperm(g.vertex_ids.size());
    std::iota(vperm.begin(), vperm.end(), 0);
    std::sort(vperm.begin(), vperm.end(), [&](int a, int b) { return g.vertex_ids[a] < g.vertex_ids[b]; });
    std::vector<int> vnew(g.vertex_ids.size());
    for (size_t i = 0; i < vperm.size(); ++i) vnew[vperm[i]] = (int)i;
    std::vector<int> eperm(g.edge_ids.size());
    std::iota(eperm.begin(), eperm.end(), 0);
    std::sort(eperm.begin(), eperm.end(), [&](int a, int b) { return g.edge_ids[a] < g.edge_ids[b]; });
    std::vector<int> enew(g.edge_ids.size());
    for (size_t i = 0; i < eperm.size(); ++i) enew[eperm[i]] = (int)i;

    MatchedGraph out;
    out.name = g.name;
    for (int i : vperm) out.vertex_ids.push_back(g.vertex_ids[i]);
    for (int i : eperm) {
        out.edge_ids.push_back(g.edge_ids[i]);
        out.edge_ends.push_back({vnew[g.edge_ends[i][0]], vnew[g.edge_ends[i][1]]});
    }
    out.rotations.assign(out.vertex_ids.size(), {-1, -1, -1});

    std::vector<char> have_rot(out.vertex_ids.size(), 0);
    for (const auto& rr : raw_rots) {
        auto vi = vindex.find(rr.vid);
        if (vi == vindex.end()) throw parse_error(rr.line, 1, "unknown vertex id " + rr.vid);
        int v = vnew[vi->second];
        if (have_rot[v]) throw parse_error(rr.line, 1, "duplicate rotation for " + rr.vid);
        have_rot[v] = 1;
        std::array<int, 3> toks{};
        for (int k = 0; k < 3; ++k) {
            const std::string& t = rr.toks[k];
            auto dot = t.rfind('.');
            if (dot == std::string::npos) throw parse_error(rr.line, 1, "bad token " + t);
            std::string eid = t.substr(0, dot), end = t.substr(dot + 1);
            auto ei = eindex.find(eid);
            if (ei == eindex.end()) throw parse_error(rr.line, 1, "unknown edge id " + eid);
            if (end != "0" && end != "1") throw parse_error(rr.line, 1, "bad token end in " + t);
            toks[k] = make_token(enew[ei->second], end == "1" ? 1 : 0);
        }
        out.rotations[v] = toks;
    }
    for (size_t v = 0; v < out.vertex_ids.size(); ++v)
        if (!have_rot[v]) throw parse_error(rd.lineno, 1, "missing rotation for " + out.vertex_ids[v]);

    for (const auto& mid : raw_matching) {
        auto ei = eindex.find(mid);
        if (ei == eindex.end()) throw parse_error(matching_line, 1, "unknown edge id " + mid);
        out.matching.push_back(enew[ei->second]);
    }

    // canonical rotation start: smallest token string first
    for (auto& r : out.rotations) {
        int best = 0;
        for (int i = 1; i < 3; ++i)
            if (out.token_str(r[i]) < out.token_str(r[best])) best = i;
        std::array<int, 3> nr{r[best], r[(best + 1) % 3], r[(best + 2) % 3]};
        r = nr;
    }
    return out;
}

std::string write_graph(const MatchedGraph& g) {
    std::ostringstream os;
    os << "graph " << g.name << "\n";
    for (const auto& v : g.vertex_ids) os << "vertex " << v << "\n";
    for (int e = 0; e < g.num_edges(); ++e)
        os << "edge " << g.edge_ids[e] << " " << g.vertex_ids[g.edge_ends[e][0]] << " "
           << g.vertex_ids[g.edge_ends[e][1]] << "\n";
    for (int v = 0; v < g.num_vertices(); ++v) {
        os << "rotation " << g.vertex_ids[v];
        for (int t : g.rotations[v]) os << " " << g.token_str(t);
        os << "\n";
    }
    os << "matching";
    for (int m : g.matching) os << " " << g.edge_ids[m];
    os << "\n";
    return os.str();
}

}  // namespace tf
