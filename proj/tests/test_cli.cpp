#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(TF_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string data(const std::string& name) { return std::string(TF_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("check: member, non-member, missing file exit codes") {
    auto member = run("check " + data("theta.tfg"));
    CHECK(member.exit_code == 0);
    CHECK(member.out == "member of G (no 2-faces)\n");

    auto bad = run("check " + data("badface.tfg"));
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("not in G") != std::string::npos);
    CHECK(bad.out.find("witness") != std::string::npos);

    auto missing = run("check " + data("missing.tfg"));
    CHECK(missing.exit_code == 2);
}

TEST_CASE("poly golden outputs") {
    CHECK(run("poly " + data("theta.tfg")).out == "1 + q^-2\n");
    CHECK(run("poly " + data("l2.tfg")).out == "q^4 + q^2 + 1 + q^-2\n");
}

TEST_CASE("hom golden outputs") {
    auto z2 = run("hom " + data("theta.tfg") + " --ring z2");
    CHECK(z2.exit_code == 0);
    CHECK(z2.out == "H[i=0][j=0] dim=1\nH[i=0][j=-2] dim=1\n");
    auto z = run("hom " + data("theta.tfg") + " --ring z");
    CHECK(z.out == "H[i=0][j=0] rank=1\nH[i=0][j=-2] rank=1\n");
    auto zbad = run("hom " + data("badface.tfg") + " --ring z");
    CHECK(zbad.exit_code == 2);
    CHECK(zbad.out.find("Z-lift unavailable") != std::string::npos);
}

TEST_CASE("byte determinism of repeated runs") {
    auto a = run("verify " + data("l3.tfg") + " --suite all");
    auto b = run("verify " + data("l3.tfg") + " --suite all");
    CHECK(a.out == b.out);
    CHECK(a.exit_code == 0);
    auto c = run("census --m 3 --mode sample --seed 0 --count 40");
    auto d = run("census --m 3 --mode sample --seed 0 --count 40");
    CHECK(c.out == d.out);
}

TEST_CASE("verify passes on corpus members") {
    for (auto name : {"theta.tfg", "l2.tfg", "k4m0.tfg", "prism.tfg", "dumbbell.tfg"}) {
        auto r = run("verify " + data(name) + " --suite all");
        CAPTURE(name);
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("verify pass=1") != std::string::npos);
    }
}

TEST_CASE("flip is an involution through the cli") {
    auto once = run("flip " + data("l2.tfg") + " --disk 1,2");
    CHECK(once.exit_code == 0);
    auto tmp = std::filesystem::temp_directory_path() / "tf_flip_once.tfg";
    {
        FILE* f = fopen(tmp.string().c_str(), "w");
        fwrite(once.out.data(), 1, once.out.size(), f);
        fclose(f);
    }
    auto twice = run("flip " + tmp.string() + " --disk 1,2");
    auto orig = run("flip " + data("l2.tfg") + " --disk 1,1");  // unknown disk form
    CHECK(orig.exit_code == 2);
    // round trip equals the normalized original
    auto norm = run("flip " + data("l2.tfg") + " --disk 1,2");
    CHECK(once.out == norm.out);
    auto back = twice.out;
    auto direct = run("poly " + data("l2.tfg"));
    auto flipped_poly = run("poly " + tmp.string());
    CHECK(direct.out == flipped_poly.out);
    CHECK(back.find("graph l2") != std::string::npos);
}

TEST_CASE("weave produces webs that verify") {
    auto outdir = std::filesystem::temp_directory_path() / "tf_weave_cli";
    std::filesystem::create_directories(outdir);
    auto r = run("weave " + data("trefoil.pd") + " --state of --out " + outdir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("trefoil-000.tfg") != std::string::npos);
    auto v = run("verify " + (outdir / "trefoil-000.tfg").string() + " --suite all");
    CHECK(v.exit_code == 0);
    // dof of the all-positive trefoil smooths everything away
    auto dof = run("weave " + data("trefoil.pd") + " --state dof --out " + outdir.string());
    CHECK(dof.exit_code == 2);
}

TEST_CASE("cells reports the theta table") {
    auto r = run("cells " + data("theta.tfg") + " --ring z2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("cell gen=1:- dim=2 attach=0:+-:1,0:-+:1") != std::string::npos);
    CHECK(r.out.find("cells pass=1") != std::string::npos);
}

TEST_CASE("census golden output for m=1") {
    auto r = run("census --m 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "census m=1 mode=exhaustive\n"
          "embeddings total=1 in_family=1 fraction=1.0000\n"
          "abstract total=1 in_family=1 fraction=1.0000\n");
}

TEST_CASE("census m=4 exhaustive is refused") {
    auto r = run("census --m 4 --mode exhaustive");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("use sample mode") != std::string::npos);
}
