#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "support/fixtures.hpp"
#include "tomoec/io.hpp"
#include "tomoec/simulate.hpp"

using namespace tomoec;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tomoec_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    const std::string cmd = std::string(TOMOEC_CLI_PATH) + " " + args + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) { return read_file(path); }

void dump(const std::string& path, const Json& j) { write_file(path, canonical_dump(j) + "\n"); }

}  // namespace

TEST_CASE("project computes row sums of the sample grid") {
    TempDir tmp;
    dump(tmp.file("grid.json"), to_json(tomoec::testing::ambiguous_grid()));
    dump(tmp.file("dirs.json"), Json::array({Json::array({1, 0}), Json::array({0, 1}),
                                             Json::array({1, 1}), Json::array({1, -1})}));
    REQUIRE(run("project " + tmp.file("grid.json") + " --dirs " + tmp.file("dirs.json") + " -o " +
                tmp.file("sums.json")) == 0);
    Json j = Json::parse(slurp(tmp.file("sums.json")));
    // Direction (1,0) indexes rows by t = -j, so ascending t lists the row
    // sums 14, 12, 7, 17 (j = 3..0).
    CHECK(j["sums"][0]["t_min"] == -3);
    CHECK(j["sums"][0]["values"] == Json::array({14, 12, 7, 17}));
    LineSumTable parsed = table_from_json(j);
    CHECK(parsed.sum(0, 0) == 17);
    CHECK(parsed.sum(0, -1) == 7);
    CHECK(parsed.sum(0, -2) == 12);
    CHECK(parsed.sum(0, -3) == 14);
}

TEST_CASE("project of the zero grid is all zero and canonical") {
    TempDir tmp;
    auto inst = tomoec::testing::golden_instance();
    dump(tmp.file("grid.json"), to_json(Grid(16, 16)));
    dump(tmp.file("dirs.json"), directions_to_json(inst.directions));
    REQUIRE(run("project " + tmp.file("grid.json") + " --dirs " + tmp.file("dirs.json") + " -o " +
                tmp.file("sums.json")) == 0);
    CHECK(slurp(tmp.file("sums.json")) == canonical_dump(to_json(inst.exact)) + "\n");
}

TEST_CASE("corrupt applies a spec file deterministically") {
    TempDir tmp;
    auto inst = tomoec::testing::golden_instance();
    dump(tmp.file("sums.json"), to_json(inst.exact));
    dump(tmp.file("spec.json"), to_json(inst.errors));

    SUBCASE("golden spec reproduces the corrupted table") {
        REQUIRE(run("corrupt " + tmp.file("sums.json") + " --spec " + tmp.file("spec.json") +
                    " -o " + tmp.file("bad.json")) == 0);
        CHECK(slurp(tmp.file("bad.json")) == canonical_dump(to_json(inst.corrupted)) + "\n");
    }

    SUBCASE("empty spec is byte-identical") {
        dump(tmp.file("empty.json"), Json{{"errors", Json::array()}});
        REQUIRE(run("corrupt " + tmp.file("sums.json") + " --spec " + tmp.file("empty.json") +
                    " -o " + tmp.file("same.json")) == 0);
        CHECK(slurp(tmp.file("same.json")) == slurp(tmp.file("sums.json")));
    }

    SUBCASE("seeded corruption is reproducible") {
        REQUIRE(run("corrupt " + tmp.file("sums.json") + " --seed 9 -o " + tmp.file("a.json")) ==
                0);
        REQUIRE(run("corrupt " + tmp.file("sums.json") + " --seed 9 -o " + tmp.file("b.json")) ==
                0);
        CHECK(slurp(tmp.file("a.json")) == slurp(tmp.file("b.json")));
        CHECK(slurp(tmp.file("a.json")) != canonical_dump(to_json(inst.exact)) + "\n");
    }

    SUBCASE("budget overruns are input errors") {
        CHECK(run("corrupt " + tmp.file("sums.json") + " --spec " + tmp.file("spec.json") +
                  " --max-errors 3 -o " + tmp.file("x.json")) == 2);
    }
}

TEST_CASE("correct repairs the golden instance end to end") {
    TempDir tmp;
    auto inst = tomoec::testing::golden_instance();
    dump(tmp.file("bad.json"), to_json(inst.corrupted));

    REQUIRE(run("correct " + tmp.file("bad.json") + " --max-errors 7 --max-dirs 4 -o " +
                tmp.file("fixed.json") + " --report " + tmp.file("report.json") + " --trace") ==
            0);
    CHECK(slurp(tmp.file("fixed.json")) == canonical_dump(to_json(inst.exact)) + "\n");

    Json report = Json::parse(slurp(tmp.file("report.json")));
    CHECK(report["status"] == "success");
    CHECK(report["total_errors_found"] == 7);
    REQUIRE(report["flagged"].size() == 3);
    CHECK(report["flagged"][0]["dir"] == 5);
    CHECK(report["flagged"][1]["dir"] == 2);
    CHECK(report["flagged"][2]["dir"] == 7);
    REQUIRE(report.contains("trace"));
    CHECK(report["trace"]["screen"]["totals"][5] == -1);

    SUBCASE("clean input reports no_errors") {
        dump(tmp.file("clean.json"), to_json(inst.exact));
        REQUIRE(run("correct " + tmp.file("clean.json") + " -o " + tmp.file("out.json") +
                    " --report " + tmp.file("r2.json")) == 0);
        CHECK(Json::parse(slurp(tmp.file("r2.json")))["status"] == "no_errors");
        CHECK(slurp(tmp.file("out.json")) == slurp(tmp.file("clean.json")));
    }

    SUBCASE("TOMOEC_TRACE=1 enables the trace") {
        dump(tmp.file("clean.json"), to_json(inst.exact));
        const std::string cmd = std::string("TOMOEC_TRACE=1 ") + TOMOEC_CLI_PATH + " correct " +
                                tmp.file("clean.json") + " -o " + tmp.file("o.json") +
                                " --report " + tmp.file("r3.json") + " 2>/dev/null";
        REQUIRE(std::system(cmd.c_str()) == 0);
        CHECK(Json::parse(slurp(tmp.file("r3.json"))).contains("trace"));
    }
}

TEST_CASE("correct reports assumption violations with exit 1") {
    TempDir tmp;
    auto inst = tomoec::testing::golden_instance();
    dump(tmp.file("bad.json"), to_json(inst.corrupted));
    CHECK(run("correct " + tmp.file("bad.json") + " --max-errors 2 --max-dirs 2 -o " +
              tmp.file("out.json") + " --report " + tmp.file("report.json")) == 1);
    Json report = Json::parse(slurp(tmp.file("report.json")));
    CHECK(report["status"] == "assumption_violated");
    CHECK(report.contains("reason"));
    CHECK_FALSE(fs::exists(tmp.file("out.json")));  // no corrected table on failure
}

TEST_CASE("verify distinguishes consistent from inconsistent tables") {
    TempDir tmp;
    auto inst = tomoec::testing::golden_instance();
    dump(tmp.file("clean.json"), to_json(inst.exact));
    dump(tmp.file("bad.json"), to_json(inst.corrupted));
    CHECK(run("verify " + tmp.file("clean.json")) == 0);
    CHECK(run("verify " + tmp.file("bad.json")) == 1);
    CHECK(run("verify " + tmp.file("bad.json") + " --kmax 2") == 1);
    CHECK(run("verify " + tmp.file("clean.json") + " --kmax 99") == 2);
}

TEST_CASE("project-corrupt-correct pipeline restores the original bytes") {
    TempDir tmp;
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        RandomInstance inst = random_instance(seed, 7, 6, 7, 3, 2, -9, 9);
        dump(tmp.file("grid.json"), to_json(inst.grid));
        dump(tmp.file("dirs.json"), directions_to_json(inst.directions));
        REQUIRE(run("project " + tmp.file("grid.json") + " --dirs " + tmp.file("dirs.json") +
                    " -o " + tmp.file("sums.json")) == 0);
        REQUIRE(run("corrupt " + tmp.file("sums.json") + " --seed " + std::to_string(seed) +
                    " --max-errors 3 --max-dirs 2 -o " + tmp.file("bad.json")) == 0);
        REQUIRE(run("correct " + tmp.file("bad.json") + " --max-errors 3 --max-dirs 2 -o " +
                    tmp.file("fixed.json")) == 0);
        CHECK(slurp(tmp.file("fixed.json")) == slurp(tmp.file("sums.json")));
    }
}

TEST_CASE("roundtrip subcommand self-checks") {
    CHECK(run("roundtrip --seed 5 --count 3 --m 6 --n 6 --d 7 --max-errors 2 --max-dirs 2") == 0);
}

TEST_CASE("input errors exit with code 2") {
    TempDir tmp;
    write_file(tmp.file("garbage.json"), "{not json");
    CHECK(run("verify " + tmp.file("garbage.json")) == 2);
    CHECK(run("verify " + tmp.file("missing.json")) == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("project") == 2);

    auto inst = tomoec::testing::golden_instance();
    dump(tmp.file("sums.json"), to_json(inst.exact));
    // F at or beyond d/2 requires --unsafe.
    CHECK(run("correct " + tmp.file("sums.json") + " --max-errors 8 -o " + tmp.file("o.json")) ==
          2);
    CHECK(run("correct " + tmp.file("sums.json") + " --max-errors 8 --unsafe -o " +
              tmp.file("o.json")) == 0);

    Json bad_dirs = to_json(inst.exact);
    bad_dirs["directions"][0] = Json::array({2, 4});
    dump(tmp.file("baddirs.json"), bad_dirs);
    CHECK(run("verify " + tmp.file("baddirs.json")) == 2);
}
