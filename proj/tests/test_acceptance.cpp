// Acceptance suite: one test case per criterion, each printing a single
// ACCEPT line with its runtime so the whole gate is visible in one run.

#include "doctest.h"

#include "tf/census.hpp"
#include "tf/corpus.hpp"
#include "tf/invariants.hpp"
#include "tf/moduli.hpp"
#include "tf/plane_graph.hpp"
#include "tf/resolution.hpp"
#include "tf/webs.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <set>

using namespace tf;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const std::string& name, bool pass, const Timer& t) {
    std::printf("ACCEPT %2d %-28s %s (%.2fs)\n", criterion, name.c_str(), pass ? "PASS" : "FAIL", t.seconds());
    std::fflush(stdout);
}

std::vector<MatchedGraph> web_corpus(const std::string& pd, const std::string& name, int min_matching = 1) {
    auto link = parse_pd(pd, name);
    std::vector<MatchedGraph> out;
    for (uint32_t code = 0; code < (1u << link.n()); ++code) {
        try {
            auto web = flatten(link, State(code, link.n()));
            if (web.matching_size() >= min_matching) out.push_back(std::move(web));
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

std::vector<MatchedGraph> criterion_corpus() {
    auto graphs = corpus::base_graphs();
    for (auto& w : web_corpus(corpus::trefoil_pd(), "trefoil")) graphs.push_back(std::move(w));
    for (auto& w : web_corpus(corpus::hopf_pd(), "hopf")) graphs.push_back(std::move(w));
    for (auto& w : web_corpus(corpus::figure_eight_pd(), "fig8")) graphs.push_back(std::move(w));
    return graphs;
}

// independent brute-force oracle: subsets of non-matching edges completing
// the matching to a spanning 2-regular subgraph
long long two_factor_oracle(const MatchedGraph& g) {
    std::vector<int> nonmatching;
    for (int e = 0; e < g.num_edges(); ++e)
        if (!g.is_matching_edge(e)) nonmatching.push_back(e);
    REQUIRE(nonmatching.size() <= 22);
    long long count = 0;
    for (uint64_t sub = 0; sub < (1ull << nonmatching.size()); ++sub) {
        std::vector<int> deg(g.num_vertices(), 0);
        for (size_t b = 0; b < nonmatching.size(); ++b)
            if (sub & (1ull << b)) {
                deg[g.edge_ends[nonmatching[b]][0]]++;
                deg[g.edge_ends[nonmatching[b]][1]]++;
            }
        bool ok = true;
        for (int v = 0; v < g.num_vertices(); ++v) ok &= (deg[v] == 1);
        if (ok) ++count;
    }
    return count;
}

std::map<std::pair<int, int>, int> z2_dims(const BigradedGroups& h) {
    std::map<std::pair<int, int>, int> out;
    for (auto& [k, e] : h.groups) out[k] = e.dim;
    return out;
}

}  // namespace

TEST_CASE("criterion 1: theta golden table") {
    Timer t;
    auto cx = build_complex(corpus::theta(), Ring::Z2);
    std::multiset<std::pair<int, int>> got, want{{0, 2}, {0, 0}, {0, 0}, {0, -2}, {1, 2}, {1, 0}};
    for (auto& [j, levels] : cx.basis)
        for (int i = 0; i <= cx.n; ++i)
            for (auto& gen : levels[i]) got.insert({gen.gr_h(), gen.gr_q()});
    bool pass = (got == want) && cx.total_generators() == 6;
    report(1, "theta golden table", pass, t);
    CHECK(pass);
    CHECK(t.seconds() < 1.0);
}

TEST_CASE("criterion 2: theta homology") {
    Timer t;
    auto h = homology(build_complex(corpus::theta(), Ring::Z2));
    std::map<std::pair<int, int>, int> want{{{0, 0}, 1}, {{0, -2}, 1}};
    bool pass = (z2_dims(h) == want);
    report(2, "theta homology", pass, t);
    CHECK(pass);
    CHECK(t.seconds() < 1.0);
}

TEST_CASE("criterion 3: two-factor count theorem") {
    Timer t;
    bool pass = true;
    for (const auto& g : criterion_corpus()) {
        long long oracle = two_factor_oracle(g);
        long long counted = two_factor_count(g);
        long long poly1 = two_factor_polynomial(g).eval_at_one();
        bool ok = (counted == oracle) && (poly1 == oracle);
        if (!ok) std::printf("  criterion 3 mismatch on %s: oracle=%lld count=%lld poly(1)=%lld\n", g.name.c_str(),
                             oracle, counted, poly1);
        pass &= ok;
    }
    report(3, "two-factor count theorem", pass, t);
    CHECK(pass);
    CHECK(t.seconds() < 10.0);
}

TEST_CASE("criterion 4: euler consistency") {
    Timer t;
    bool pass = true;
    for (const auto& g : criterion_corpus()) {
        auto poly = two_factor_polynomial(g);
        auto cx = build_complex(g, Ring::Z2);
        auto h = homology(cx);
        LaurentPoly chi_c, chi_h;
        for (auto& [j, levels] : cx.basis)
            for (int i = 0; i <= cx.n; ++i) chi_c.add(j, (i % 2 ? -1ll : 1ll) * (long long)levels[i].size());
        for (auto& [k, e] : h.groups) chi_h.add(k.second, (k.first % 2 ? -1ll : 1ll) * e.dim);
        bool ok = (chi_c == poly) && (chi_h == poly);
        if (in_family_G(g).member) {
            auto hz = homology(build_complex(g, Ring::Z));
            LaurentPoly chi_z;
            for (auto& [k, e] : hz.groups) chi_z.add(k.second, (k.first % 2 ? -1ll : 1ll) * e.rank);
            ok &= (chi_z == poly);
        }
        if (!ok) std::printf("  criterion 4 failure on %s\n", g.name.c_str());
        pass &= ok;
    }
    report(4, "euler consistency", pass, t);
    CHECK(pass);
    CHECK(t.seconds() < 30.0);
}

TEST_CASE("criterion 5: differential squares to zero") {
    Timer t;
    bool pass = true;
    auto graphs = criterion_corpus();
    graphs.push_back(corpus::badface());
    graphs.push_back(corpus::dumbbell());
    graphs.push_back(corpus::l3());
    for (const auto& g : graphs) {
        bool ok = differential_squares_to_zero(build_complex(g, Ring::Z2));
        if (in_family_G(g).member) ok &= differential_squares_to_zero(build_complex(g, Ring::Z));
        if (!ok) std::printf("  criterion 5 failure on %s\n", g.name.c_str());
        pass &= ok;
    }
    report(5, "differential squares to zero", pass, t);
    CHECK(pass);
    CHECK(t.seconds() < 30.0);
}

TEST_CASE("criterion 6: flip invariance") {
    Timer t;
    bool pass = true;
    size_t pairs = 0;
    std::vector<MatchedGraph> graphs{corpus::l2(), corpus::l3(), corpus::dumbbell(), corpus::badface()};
    for (auto& w : web_corpus(corpus::hopf_pd(), "hopf", 2)) graphs.push_back(std::move(w));
    for (auto& w : web_corpus(corpus::trefoil_pd(), "trefoil", 2)) graphs.push_back(std::move(w));
    for (const auto& g : graphs) {
        bool member = in_family_G(g).member;
        auto poly = two_factor_polynomial(g);
        auto hz2 = homology(build_complex(g, Ring::Z2));
        for (const auto& disk : enumerate_flip_disks(g)) {
            if (pairs >= 40) break;
            ++pairs;
            auto f = apply_flip(g, disk);
            bool ok = (two_factor_polynomial(f) == poly);
            ok &= (homology(build_complex(f, Ring::Z2)) == hz2);
            ok &= (in_family_G(f).member == member);
            if (member) ok &= (homology(build_complex(f, Ring::Z)) == homology(build_complex(g, Ring::Z)));
            int n = g.matching_size();
            for (uint32_t code = 0; code < (1u << n) && ok; ++code) {
                State v(code, n);
                for (int i = 0; i < n; ++i)
                    if (!v.bit(i)) ok &= (arc_kind(g, v, i) == arc_kind(f, v, i));
            }
            if (!ok) std::printf("  criterion 6 failure on %s\n", g.name.c_str());
            pass &= ok;
        }
    }
    pass &= (pairs >= 20);
    std::printf("  criterion 6 checked %zu (graph, disk) pairs\n", pairs);
    report(6, "flip invariance", pass, t);
    CHECK(pass);
    CHECK(t.seconds() < 60.0);
}

TEST_CASE("criterion 7: index-2 classification") {
    Timer t;
    bool pass = true;
    size_t faces = 0, butterflies = 0;
    for (const auto& g : criterion_corpus()) {
        for (const auto& f : enumerate_decorated_faces(g, 2)) {
            ++faces;
            auto cls = classify_index2(g, f);
            int k = face_poset(g, f).middle_count();
            bool ok = (k == 2 || k == 4) && ((k == 4) == (cls == Index2Class::Butterfly));
            if (cls == Index2Class::Butterfly) ++butterflies;
            if (!ok) std::printf("  criterion 7 failure on %s\n", g.name.c_str());
            pass &= ok;
        }
    }
    pass &= (faces > 0) && (butterflies > 0);
    std::printf("  criterion 7 classified %zu faces (%zu butterflies)\n", faces, butterflies);
    report(7, "index-2 classification", pass, t);
    CHECK(pass);
    CHECK(t.seconds() < 60.0);
}

TEST_CASE("criterion 8: six-cycle theorem") {
    Timer t;
    bool pass = true;
    size_t faces = 0;
    auto graphs = criterion_corpus();
    for (auto& w : web_corpus(corpus::cinquefoil_pd(), "5_1", 3)) graphs.push_back(std::move(w));
    graphs.push_back(corpus::l3());
    for (const auto& g : graphs) {
        if (g.matching_size() < 3 || !in_family_G(g).member) continue;
        auto rep = verify_six_cycles(g);
        faces += rep.faces_checked;
        if (!rep.pass) std::printf("  criterion 8 failure on %s\n", g.name.c_str());
        pass &= rep.pass;
    }
    // negative control: the opposite butterfly pairing must break the theorem
    auto link = parse_pd(corpus::trefoil_pd(), "trefoil");
    auto web = flatten(link, of_state(link));
    auto wrong = verify_six_cycles(web, true);
    bool control = !wrong.pass;
    pass &= control && (faces > 0);
    std::printf("  criterion 8 checked %zu index-3 faces, wrong-pairing control %s\n", faces,
                control ? "fails as expected" : "UNEXPECTEDLY PASSED");
    report(8, "six-cycle theorem", pass, t);
    CHECK(pass);
    CHECK(t.seconds() < 300.0);
}

TEST_CASE("criterion 9: webs theorem") {
    Timer t;
    bool pass = true;
    for (auto [pd, name] : {std::pair{corpus::trefoil_pd(), "trefoil"}, {corpus::hopf_pd(), "hopf"},
                            {corpus::figure_eight_pd(), "fig8"}}) {
        auto link = parse_pd(pd, name);
        auto rep = web_family_check(link);
        bool ok = rep.ok() && rep.states_checked == (size_t)(1u << link.n());
        // audits must pass on every nondegenerate flattening
        ok &= (rep.audits_passed + rep.degenerate_states == rep.states_checked);
        auto audit = zero_state_audit(link, flatten(link, of_state(link)));
        ok &= audit.all_m && audit.orient.ok && audit.circle_count_matches;
        if (!ok) std::printf("  criterion 9 failure on %s\n", name);
        pass &= ok;
    }
    report(9, "webs theorem", pass, t);
    CHECK(pass);
    CHECK(t.seconds() < 120.0);
}

TEST_CASE("criterion 10: realization cochain equality") {
    Timer t;
    bool pass = true;
    for (const auto& g : criterion_corpus()) {
        if (!in_family_G(g).member) continue;
        bool ok = realization_report(g, Ring::Z2).pass && realization_report(g, Ring::Z).pass;
        if (!ok) std::printf("  criterion 10 failure on %s\n", g.name.c_str());
        pass &= ok;
    }
    report(10, "realization cochain equality", pass, t);
    CHECK(pass);
    CHECK(t.seconds() < 60.0);
}

TEST_CASE("criterion 11: census (stretch, non-blocking)") {
    Timer t;
    auto res = census_exhaustive(3);
    bool in_range = (res.fraction_abstract() >= 0.70 && res.fraction_abstract() <= 0.84) ||
                    (res.fraction_embeddings() >= 0.70 && res.fraction_embeddings() <= 0.84);
    std::printf("%s", res.summary().c_str());
    if (!in_range) {
        std::printf("  census outside [0.70, 0.84]; full breakdown for reconciliation:\n");
        for (const auto& cls : res.classes)
            std::printf("  class embeddings=%zu in_family=%d\n", cls.embeddings, (int)cls.in_family);
    }
    report(11, "census fraction", in_range, t);
    // non-blocking: the criterion only requires the run and the breakdown
    CHECK(res.abstract_total > 0);
    CHECK(t.seconds() < 1800.0);
}
