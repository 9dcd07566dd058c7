#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>

#include "test_support.hpp"

using namespace nsw;
using namespace nsw_test;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(NSW_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("nsw_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

}  // namespace

TEST_CASE("generate then sphere-check round trip") {
    TempDir dir;
    std::string out = dir.file("s.cplx");
    RunResult gen = run("generate --d 2 --n 4 --all-choice 1 --emit sphere --out " + out);
    CHECK(gen.exit_code == 0);
    RunResult ver = run("verify --complex " + out + " --sphere-check");
    CHECK(ver.exit_code == 0);
    CHECK(ver.out.find("ok=1") == 0);

    ParsedComplex pc = parse_complex_text(read_file(out));
    CHECK(labeled_equal(pc.complex, build_sphere(GridParams(2, 4), uniform_choice(GridParams(2, 4), 1))));
}

TEST_CASE("certify shelling3d then verify") {
    TempDir dir;
    std::string cplx = dir.file("s.cplx"), shl = dir.file("s.shl");
    CHECK(run("generate --d 2 --n 4 --all-choice 1 --out " + cplx).exit_code == 0);
    CHECK(run("certify --d 2 --n 4 --all-choice 1 --kind shelling3d --out " + shl).exit_code == 0);
    RunResult ver = run("verify --complex " + cplx + " --shelling " + shl);
    CHECK(ver.exit_code == 0);
    CHECK(ver.out.find("ok=1") == 0);
}

TEST_CASE("certify constructible then verify, any d") {
    TempDir dir;
    for (std::string dn : {std::string("--d 2 --n 4"), std::string("--d 3 --n 3")}) {
        std::string cplx = dir.file("c.cplx"), crt = dir.file("c.cert");
        CHECK(run("generate " + dn + " --random --seed 11 --out " + cplx).exit_code == 0);
        CHECK(run("certify " + dn + " --random --seed 11 --kind constructible --out " + crt)
                  .exit_code == 0);
        RunResult ver = run("verify --complex " + cplx + " --certificate " + crt);
        CHECK(ver.exit_code == 0);
    }
}

TEST_CASE("tampered shelling fails verification with exit 1") {
    TempDir dir;
    std::string cplx = dir.file("s.cplx"), shl = dir.file("s.shl");
    REQUIRE(run("generate --d 2 --n 4 --all-choice 2 --out " + cplx).exit_code == 0);
    REQUIRE(run("certify --d 2 --n 4 --all-choice 2 --kind shelling3d --out " + shl).exit_code ==
            0);
    // move the last facet to the front; the order stops being a shelling
    std::string text = read_file(shl);
    auto lines = split_lines(text);
    REQUIRE(lines.size() > 4);
    std::string moved = lines.back();
    lines.pop_back();
    lines.insert(lines.begin() + 2, moved);
    std::string tampered;
    for (const auto& l : lines) tampered += l + "\n";
    atomic_write_file(shl, tampered);
    RunResult ver = run("verify --complex " + cplx + " --shelling " + shl);
    CHECK(ver.exit_code == 1);
    CHECK(ver.out.find("ok=0") == 0);

    RunResult js = run("verify --complex " + cplx + " --shelling " + shl + " --report json");
    CHECK(js.exit_code == 1);
    CHECK(js.out.front() == '{');
    CHECK(js.out.find("\"violations\"") != std::string::npos);
}

TEST_CASE("config errors exit with status 2") {
    TempDir dir;
    CHECK(run("generate --d 2 --n 99999 --all-choice 1 --out " + dir.file("x")).exit_code == 2);
    CHECK(run("generate --d 2 --n 4 --out " + dir.file("x")).exit_code == 2);  // no choice source
    CHECK(run("generate --d 2 --n 4 --all-choice 1 --choices 11111 --out " + dir.file("x"))
              .exit_code == 2);
    CHECK(run("generate --d 2 --n 4 --choices 123 --out " + dir.file("x")).exit_code == 2);
    CHECK(run("certify --d 3 --n 3 --all-choice 1 --kind shelling3d --out " + dir.file("x"))
              .exit_code == 2);
    CHECK(run("verify --complex " + dir.file("missing.cplx") + " --sphere-check").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
}

TEST_CASE("count reports bits and distinct spheres") {
    RunResult r = run("count --d 2 --n 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("bits 5") != std::string::npos);
    CHECK(r.out.find("mode exhaustive") != std::string::npos);
    CHECK(r.out.find("distinct 32") != std::string::npos);
    CHECK(r.out.find("all-distinct yes") != std::string::npos);

    RunResult sampled = run("count --d 2 --n 4 --bit-cap 3 --samples 8 --seed 4");
    CHECK(sampled.exit_code == 0);
    CHECK(sampled.out.find("mode sample") != std::string::npos);

    RunResult tiny = run("count --d 2 --n 2");
    CHECK(tiny.exit_code == 0);
    CHECK(tiny.out.find("bits 0") != std::string::npos);
    CHECK(tiny.out.find("distinct 1") != std::string::npos);
}

TEST_CASE("the cap override reaches past the default parameter range") {
    TempDir dir;
    std::string out = dir.file("wide.cplx");
    CHECK(run("generate --d 2 --n 13 --all-choice 1 --out " + out).exit_code == 2);
    CHECK(run("generate --d 2 --n 13 --all-choice 1 --unsafe-caps --out " + out).exit_code == 0);
}

TEST_CASE("grid prints band maps and the divisibility note") {
    RunResult r = run("grid --d 2 --n 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("bands 2") != std::string::npos);
    CHECK(r.out.find("note") == std::string::npos);

    RunResult div = run("grid --d 2 --n 5");
    CHECK(div.out.find("bands 3") != std::string::npos);
    CHECK(div.out.find("note band-width divides") != std::string::npos);
    CHECK(div.out.find("simplex") != std::string::npos);

    RunResult one = run("grid --d 2 --n 8 --band 3");
    CHECK(one.out.find("band 3 ") != std::string::npos);
    CHECK(one.out.find("band 2 ") == std::string::npos);
}

TEST_CASE("band and ball emission") {
    TempDir dir;
    std::string band = dir.file("band.cplx"), ball = dir.file("ball.cplx");
    CHECK(run("generate --d 2 --n 4 --all-choice 1 --emit band=1 --out " + band).exit_code == 0);
    ParsedComplex pb = parse_complex_text(read_file(band));
    CHECK(labeled_equal(pb.complex,
                        build_band_ball(GridParams(2, 4), 1, uniform_choice(GridParams(2, 4), 1))));
    CHECK(run("generate --d 2 --n 4 --all-choice 1 --emit band=7 --out " + band).exit_code == 2);
    CHECK(run("generate --d 2 --n 4 --all-choice 1 --emit ball --out " + ball).exit_code == 0);
}

TEST_CASE("identical flags give byte-identical outputs") {
    TempDir dir;
    auto twice_file = [&](const std::string& args, const std::string& name) {
        std::string a = dir.file(name + ".a"), b = dir.file(name + ".b");
        REQUIRE(run(args + " --out " + a).exit_code == 0);
        REQUIRE(run(args + " --out " + b).exit_code == 0);
        CHECK(read_file(a) == read_file(b));
    };
    twice_file("generate --d 2 --n 5 --random --seed 99", "gen");
    twice_file("certify --d 2 --n 5 --random --seed 99 --kind shelling3d", "shl");
    twice_file("certify --d 2 --n 4 --random --seed 99 --kind constructible", "crt");

    RunResult c1 = run("count --d 2 --n 4");
    RunResult c2 = run("count --d 2 --n 4");
    CHECK(c1.out == c2.out);
    RunResult g1 = run("grid --d 2 --n 5");
    RunResult g2 = run("grid --d 2 --n 5");
    CHECK(g1.out == g2.out);
}
