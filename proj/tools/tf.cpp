// tf: 2-factor homology toolkit for planar trivalent graphs with perfect
// matchings. Exit codes: 0 ok / verification passed, 1 non-membership or
// verification failure, 2 input or usage error.

#include "CLI11.hpp"

#include "tf/census.hpp"
#include "tf/corpus.hpp"
#include "tf/invariants.hpp"
#include "tf/moduli.hpp"
#include "tf/plane_graph.hpp"
#include "tf/resolution.hpp"
#include "tf/webs.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

tf::MatchedGraph load_graph(const std::string& path) {
    auto g = tf::read_graph(slurp(path));
    tf::require_valid(g);
    return g;
}

tf::Ring parse_ring(const std::string& s) {
    if (s == "z2" || s == "Z2") return tf::Ring::Z2;
    if (s == "z" || s == "Z") return tf::Ring::Z;
    throw std::runtime_error("unknown ring " + s + " (use z2 or z)");
}

int cmd_check(const std::string& file) {
    auto g = load_graph(file);
    auto faces = tf::scan_faces(g);
    for (const auto& f : faces) std::cout << f.line() << "\n";
    auto res = tf::in_family_G(g);
    if (res.member) {
        std::cout << "member of G" << (faces.empty() ? " (no 2-faces)" : "") << "\n";
        return 0;
    }
    std::cout << "not in G\nwitness " << res.witness->line() << "\n";
    return 1;
}

int cmd_poly(const std::string& file) {
    std::cout << tf::two_factor_polynomial(load_graph(file)).to_string() << "\n";
    return 0;
}

int cmd_hom(const std::string& file, const std::string& ring) {
    auto g = load_graph(file);
    std::cout << tf::homology(tf::build_complex(g, parse_ring(ring))).to_string();
    return 0;
}

int cmd_flip(const std::string& file, const std::string& disk_arg) {
    auto g = load_graph(file);
    tf::FlipDisk disk;
    std::istringstream ss(disk_arg);
    std::string vid;
    while (std::getline(ss, vid, ',')) {
        auto it = std::find(g.vertex_ids.begin(), g.vertex_ids.end(), vid);
        if (it == g.vertex_ids.end()) throw std::runtime_error("unknown vertex id " + vid);
        disk.vertices.push_back((int)(it - g.vertex_ids.begin()));
    }
    std::cout << tf::write_graph(tf::apply_flip(g, disk));
    return 0;
}

bool verify_faces(const tf::MatchedGraph& g) {
    int n = g.matching_size();
    bool parity = true, basic = true;
    for (uint32_t code = 0; code < (1u << n); ++code) {
        tf::State v(code, n);
        auto d = tf::resolve(g, v);
        int c0 = d.circle_count();
        for (int i = 0; i < n; ++i) {
            if (v.bit(i)) continue;
            parity &= std::abs(tf::resolve(g, v.with_bit(i)).circle_count() - c0) <= 1;
        }
        std::vector<int> zeros;
        for (int i = 0; i < n; ++i)
            if (!v.bit(i)) zeros.push_back(i);
        for (int c : tf::restricted_circles(d, zeros)) basic &= !d.site_passages(c, zeros).empty();
    }
    auto faces = tf::scan_faces(g);
    size_t bad = 0;
    for (const auto& f : faces) bad += f.bad;
    std::cout << "faces reports=" << faces.size() << " bad=" << bad << "\n";
    std::cout << "faces parity pass=" << parity << "\n";
    std::cout << "faces basic_restriction pass=" << basic << "\n";
    return parity && basic;
}

bool verify_euler(const tf::MatchedGraph& g) {
    auto rep = tf::euler_check(g);
    bool member = tf::in_family_G(g).member;
    bool d2_z2 = tf::differential_squares_to_zero(tf::build_complex(g, tf::Ring::Z2));
    std::cout << "euler complex_vs_poly pass=" << rep.complex_matches_polynomial << "\n";
    std::cout << "euler homology_vs_complex pass=" << rep.homology_matches_complex << "\n";
    std::cout << "euler count poly1=" << rep.poly_at_one << " factors=" << rep.factor_count
              << " pass=" << rep.count_matches << "\n";
    std::cout << "euler d2zero ring=z2 pass=" << d2_z2 << "\n";
    bool d2_z = true;
    if (member) {
        d2_z = tf::differential_squares_to_zero(tf::build_complex(g, tf::Ring::Z));
        std::cout << "euler d2zero ring=z pass=" << d2_z << "\n";
    }
    return rep.all() && d2_z2 && d2_z;
}

bool verify_moduli(const tf::MatchedGraph& g) {
    bool index2 = true, dual = true, leafprod = true;
    size_t faces2 = 0;
    for (const auto& f : tf::enumerate_decorated_faces(g, 2)) {
        ++faces2;
        auto cls = tf::classify_index2(g, f);
        int k = tf::face_poset(g, f).middle_count();
        index2 &= (k == 2 || k == 4) && ((k == 4) == (cls == tf::Index2Class::Butterfly));
        dual &= tf::dual_poset_check(g, f);
        leafprod &= tf::leaf_product_check(g, f);
    }
    std::cout << "moduli index2 faces=" << faces2 << " pass=" << index2 << "\n";
    auto six = tf::verify_six_cycles(g);
    for (const auto& row : six.rows)
        if (!row.pass) std::cout << row.line(g) << "\n";
    std::cout << "moduli sixcycles faces=" << six.faces_checked << " pass=" << six.pass << "\n";
    std::cout << "moduli dual faces=" << faces2 << " pass=" << dual << "\n";
    std::cout << "moduli leafproduct pass=" << leafprod << "\n";
    bool cells = tf::realization_report(g, tf::Ring::Z2).pass;
    bool cells_z = true;
    if (tf::in_family_G(g).member) cells_z = tf::realization_report(g, tf::Ring::Z).pass;
    std::cout << "moduli realization pass=" << (cells && cells_z) << "\n";
    return index2 && six.pass && dual && leafprod && cells && cells_z;
}

bool verify_cover(const tf::MatchedGraph& g) {
    auto rep = tf::cover_check(g);
    for (const auto& f : rep.failures) std::cout << "cover failure " << f << "\n";
    std::cout << "cover faces=" << rep.faces_checked << " intervals=" << rep.intervals_checked
              << " empty_hom=" << rep.empty_hom_pairs << " pass=" << rep.pass() << "\n";
    return rep.pass();
}

int cmd_verify(const std::string& file, const std::string& suite) {
    auto g = load_graph(file);
    bool ok = true;
    if (suite == "faces" || suite == "all") ok &= verify_faces(g);
    if (suite == "euler" || suite == "all") ok &= verify_euler(g);
    if (suite == "moduli" || suite == "all") ok &= verify_moduli(g);
    if (suite == "cover" || suite == "all") ok &= verify_cover(g);
    std::cout << "verify pass=" << ok << "\n";
    return ok ? 0 : 1;
}

int cmd_weave(const std::string& file, const std::string& state_arg, const std::string& outdir,
              const std::string& name_arg) {
    std::string name = name_arg;
    if (name.empty()) name = std::filesystem::path(file).stem().string();
    auto link = tf::parse_pd(slurp(file), name);
    std::vector<tf::State> states;
    if (state_arg == "of") {
        states.push_back(tf::of_state(link));
    } else if (state_arg == "dof") {
        states.push_back(tf::dof_state(link));
    } else if (state_arg == "all") {
        for (uint32_t code = 0; code < (1u << link.n()); ++code) states.push_back(tf::State(code, link.n()));
    } else {
        if ((int)state_arg.size() != link.n()) throw std::runtime_error("state length != crossing count");
        uint32_t code = 0;
        for (char c : state_arg) {
            if (c != '0' && c != '1') throw std::runtime_error("state must be over {0,1}");
            code = (code << 1) | (c == '1');
        }
        states.push_back(tf::State(code, link.n()));
    }
    bool single = states.size() == 1;
    for (tf::State f : states) {
        tf::MatchedGraph web;
        try {
            web = tf::flatten(link, f);
        } catch (const std::invalid_argument& e) {
            if (single) throw;
            std::cout << "skip " << name << "-" << f.to_string() << ": " << e.what() << "\n";
            continue;
        }
        auto path = std::filesystem::path(outdir) / (name + "-" + f.to_string() + ".tfg");
        std::ofstream out(path);
        out << tf::write_graph(web);
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

int cmd_cells(const std::string& file, const std::string& ring) {
    auto g = load_graph(file);
    auto rep = tf::realization_report(g, parse_ring(ring));
    std::cout << "cells N=" << rep.shift << " ring=" << (rep.ring == tf::Ring::Z2 ? "z2" : "z") << "\n";
    for (const auto& l : rep.cell_lines) std::cout << l << "\n";
    for (const auto& m : rep.mismatches) std::cout << "mismatch " << m << "\n";
    std::cout << "cells pass=" << rep.pass << "\n";
    return rep.pass ? 0 : 1;
}

int cmd_census(int m, const std::string& mode, uint64_t seed, int count) {
    tf::CensusResult res;
    if (mode == "exhaustive") {
        if (m > 3) throw std::runtime_error("use sample mode");
        res = tf::census_exhaustive(m);
    } else if (mode == "sample") {
        res = tf::census_sample(m, count, seed);
    } else {
        throw std::runtime_error("unknown mode " + mode);
    }
    std::cout << res.summary();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-factor homology of planar trivalent graphs with perfect matchings"};
    app.require_subcommand(1);

    std::string file, ring = "z2", disk, state = "of", outdir = ".", suite = "all", mode = "exhaustive", name;
    int m = 3, count = 100;
    uint64_t seed = 0;

    auto* check = app.add_subcommand("check", "family membership and face reports");
    check->add_option("file", file)->required();
    auto* poly = app.add_subcommand("poly", "2-factor polynomial");
    poly->add_option("file", file)->required();
    auto* hom = app.add_subcommand("hom", "bigraded homology table");
    hom->add_option("file", file)->required();
    hom->add_option("--ring", ring, "z2 or z");
    auto* flip = app.add_subcommand("flip", "apply a flip move");
    flip->add_option("file", file)->required();
    flip->add_option("--disk", disk, "comma separated vertex ids")->required();
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("file", file)->required();
    verify->add_option("--suite", suite, "faces|euler|moduli|cover|all");
    auto* weave = app.add_subcommand("weave", "flatten a PD code into web graph files");
    weave->add_option("file", file)->required();
    weave->add_option("--state", state, "bit string, of, dof or all");
    weave->add_option("--out", outdir, "output directory");
    weave->add_option("--name", name, "link name override");
    auto* cells = app.add_subcommand("cells", "realization cell table and cochain comparison");
    cells->add_option("file", file)->required();
    cells->add_option("--ring", ring, "z2 or z");
    auto* census = app.add_subcommand("census", "survey small matchings for family membership");
    census->add_option("--m", m, "matching size");
    census->add_option("--mode", mode, "exhaustive|sample");
    census->add_option("--seed", seed, "sample seed");
    census->add_option("--count", count, "sample count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return cmd_check(file);
        if (*poly) return cmd_poly(file);
        if (*hom) return cmd_hom(file, ring);
        if (*flip) return cmd_flip(file, disk);
        if (*verify) return cmd_verify(file, suite);
        if (*weave) return cmd_weave(file, state, outdir, name);
        if (*cells) return cmd_cells(file, ring);
        if (*census) return cmd_census(m, mode, seed, count);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
