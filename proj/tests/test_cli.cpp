#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pointspec/fixtures.hpp"
#include "pointspec/jsonio.hpp"
#include "pointspec/relideal.hpp"

using namespace pointspec;

namespace {

struct CliResult {
    int code = -1;
    std::string out, err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::filesystem::path& scratch_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("pointspec_cli_" + std::to_string(getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const auto out = scratch_dir() / ("out" + std::to_string(counter));
    const auto err = scratch_dir() / ("err" + std::to_string(counter));
    ++counter;
    const std::string cmd =
        std::string(CLI_BIN_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string write_file(const std::string& name, const std::string& text) {
    const auto p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p.string();
}

const std::string kCollisionLeft =
    R"({"dim":2,"points":[["0","0"],["3","1"],["3","-1"],["4","0"]],"sqrt_base":1})";
const std::string kCollisionRight =
    R"({"dim":2,"points":[["0","0"],["1","-1"],["3","-1"],["4","0"]],"sqrt_base":1})";

}  // namespace

TEST_CASE("cli spectrum: csv, text and json outputs") {
    const std::string file = write_file("collision_left.json", kCollisionLeft);

    CliResult r = run_cli("spectrum --kind distance " + file);
    CHECK(r.code == 0);
    CHECK(r.out == "value,approx\n2,2\n2,2\n4,4\n10,10\n10,10\n16,16\n");

    r = run_cli("spectrum --kind distance --format text " + file);
    CHECK(r.code == 0);
    CHECK(r.out == "{2, 2, 4, 10, 10, 16}\n");

    r = run_cli("spectrum --kind volume --format json " + file);
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "volume");
    CHECK(j["values"] == nlohmann::json({"4", "16", "16", "36"}));
}

TEST_CASE("cli hist: golden histogram") {
    const std::string file = write_file("collision_left.json", kCollisionLeft);
    const CliResult r = run_cli("hist --bin 0.147 --sqrt " + file);
    CHECK(r.code == 0);
    CHECK(r.out == "bin_lower,count\n1.323,2\n1.911,1\n3.087,2\n3.969,1\n");
}

TEST_CASE("cli equiv: verdicts, witnesses and exit codes") {
    const std::string a = write_file("collision_left.json", kCollisionLeft);
    const std::string b = write_file("collision_right.json", kCollisionRight);

    CliResult r = run_cli("equiv --group rigid " + a + " " + b);
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out)["equivalent"] == false);

    // translated relabeled copy: rigidly equivalent, exact witness
    const std::string moved = write_file(
        "collision_moved.json",
        R"({"dim":2,"points":[["4","3"],["1","2"],["5","2"],["4","1"]],"sqrt_base":1})");
    r = run_cli("equiv --group rigid " + a + " " + moved);
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["equivalent"] == true);
    CHECK(j["relabeling"].size() == 4);
    CHECK(j["witness"]["exact"] == true);

    // the combined pair: affinely equivalent but not rigidly
    CliResult show = run_cli("fixtures show combined_collision_4 --index 0");
    REQUIRE(show.code == 0);
    const std::string c0 = write_file("c4a.json", show.out);
    show = run_cli("fixtures show combined_collision_4 --index 1");
    REQUIRE(show.code == 0);
    const std::string c1 = write_file("c4b.json", show.out);

    r = run_cli("equiv --group rigid " + c0 + " " + c1);
    CHECK(r.code == 1);
    r = run_cli("equiv --group affine " + c0 + " " + c1);
    CHECK(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["witness"]["det_sign"] == -1);
    CHECK(j["relabeling"] == nlohmann::json({2, 1, 3, 4}));

    // flat against flat: volumes carry no information
    const std::string flat_a = write_file(
        "flat_a.json", R"({"dim":2,"points":[["0","0"],["1","0"],["2","0"]],"sqrt_base":1})");
    const std::string flat_b = write_file(
        "flat_b.json", R"({"dim":2,"points":[["0","0"],["5","0"],["9","0"]],"sqrt_base":1})");
    r = run_cli("equiv --group affine " + flat_a + " " + flat_b);
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.out)["equivalent"] == "indeterminate");
}

TEST_CASE("cli certify: certified rhombus, inconclusive collision") {
    CliResult show = run_cli("fixtures show rhombus_5_4_16");
    REQUIRE(show.code == 0);
    const std::string rhombus = write_file("rhombus.json", show.out);

    CliResult r = run_cli("certify " + rhombus);
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "certified");
    CHECK(j["double_cosets"]["count"] == 2);
    CHECK(j["double_cosets"]["sizes"] == nlohmann::json({144, 576}));
    REQUIRE(j["certificates"].size() == 1);
    CHECK(j["certificates"][0]["relation_value"] == "0");
    CHECK(j["certificates"][0]["permuted_value"] == "165");

    const std::string left = write_file("collision_left.json", kCollisionLeft);
    r = run_cli("certify " + left);  // a genuine second class exists
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "inconclusive");

    const std::string tri = write_file(
        "triangle.json", R"({"dim":2,"points":[["0","0"],["1","0"],["0","1"]],"sqrt_base":1})");
    r = run_cli("certify " + tri);
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "not_applicable");
}

TEST_CASE("cli reconstruct: distance classes and volume round trip") {
    const std::string file = write_file("collision_left.json", kCollisionLeft);
    CliResult r = run_cli("spectrum --kind distance " + file);
    REQUIRE(r.code == 0);
    const std::string csv = write_file("collision.csv", r.out);

    r = run_cli("reconstruct --kind distance --n 4 --m 2 " + csv);
    CHECK(r.code == 1);  // two classes: not uniquely reconstructible
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["class_count"] == 2);
    CHECK(j["reconstructible"] == false);
    CHECK(j["representatives"].size() == 2);
    CHECK(j["representatives"][0]["gram"].size() == 3);

    // volume spectrum of the combined fixture lives over Q(sqrt(2)); its
    // realization is a single affine class
    CliResult show = run_cli("fixtures show combined_collision_4 --index 0");
    REQUIRE(show.code == 0);
    const std::string c0 = write_file("c4a.json", show.out);
    r = run_cli("spectrum --kind volume " + c0);
    REQUIRE(r.code == 0);
    const std::string vcsv = write_file("c4vol.csv", r.out);
    r = run_cli("reconstruct --kind volume --n 4 --m 2 --sqrt-base 2 " + vcsv);
    CHECK(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["class_count"] == 1);
    CHECK(j["reconstructible"] == true);
    CHECK(j["representatives"][0]["sqrt_base"] == 2);
}

TEST_CASE("cli check-relations") {
    const std::string file = write_file("collision_left.json", kCollisionLeft);
    const CliResult r = run_cli("check-relations " + file);
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["consistent"] == true);
    CHECK(j["relations_checked"] == 1);  // C(4,4)
}

TEST_CASE("cli mine: collisions, empty grids and budget flag") {
    CliResult r = run_cli("mine --grid 4x2 --n 6 --kind volume");
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line, last;
    size_t pair_lines = 0;
    while (std::getline(lines, line)) {
        if (line.find("\"summary\"") == std::string::npos) ++pair_lines;
        last = line;
    }
    const auto summary = nlohmann::json::parse(last)["summary"];
    CHECK(summary["pairs"] == 1);
    CHECK(pair_lines == 1);
    CHECK(summary["budget_exhausted"] == false);
    CHECK(r.err.find("28 subsets") != std::string::npos);  // progress on stderr

    r = run_cli("mine --grid 2x2 --n 3 --kind distance");
    CHECK(r.code == 1);  // clean sweep, no collisions

    r = run_cli("mine --grid 4x2 --n 6 --kind volume --budget 5");
    CHECK(r.code == 2);  // ran out before finding anything
    const auto cut = nlohmann::json::parse(r.out)["summary"];
    CHECK(cut["budget_exhausted"] == true);
    CHECK(cut["subsets_enumerated"] == 5);
}

TEST_CASE("cli fixtures: list and exact show round trip") {
    CliResult r = run_cli("fixtures list");
    CHECK(r.code == 0);
    for (const auto& f : fixtures()) CHECK(r.out.find(f.name) != std::string::npos);

    r = run_cli("fixtures list --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("name,configs,n,dim,sqrt_base\n", 0) == 0);

    r = run_cli("fixtures show area_collision_5 --index 1");
    CHECK(r.code == 0);
    const auto parsed = config_from_json_text(r.out);
    const auto& orig = fixture("area_collision_5").configs[1];
    CHECK(parsed.points() == orig.points());
    CHECK(parsed.d() == orig.d());

    r = run_cli("fixtures show no_such_fixture");
    CHECK(r.code == 5);
    CHECK(r.err.find("unknown fixture") != std::string::npos);
}

TEST_CASE("cli relideal minor matches the library") {
    const CliResult r = run_cli("relideal minor --n 4 --rows 1,2 --cols 1,3");
    CHECK(r.code == 0);
    const auto expect = minor(symbolic_relation_matrix(4), {1, 2}, {1, 3});
    CHECK(r.out == expect.str() + "\n");

    const CliResult j = run_cli("relideal minor --n 4 --rows 1,2,3 --cols 1,2,3 --format json");
    CHECK(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["degree"] == 3);
    CHECK(parsed["polynomial"] == minor(symbolic_relation_matrix(4), {1, 2, 3}, {1, 2, 3}).str());
}

TEST_CASE("cli error paths map to documented exit codes") {
    CliResult r = run_cli("no-such-command");
    CHECK(r.code == 3);
    r = run_cli("spectrum");  // missing required file
    CHECK(r.code == 3);
    r = run_cli("spectrum --kind nonsense somefile");
    CHECK(r.code == 3);
    const std::string a = write_file("collision_left.json", kCollisionLeft);
    const std::string b = write_file("collision_right.json", kCollisionRight);
    r = run_cli("equiv --group rigid --format csv " + a + " " + b);
    CHECK(r.code == 3);  // csv makes no sense for a verdict

    r = run_cli("spectrum --kind distance /no/such/file.json");
    CHECK(r.code == 4);
    CHECK(r.err.find("cannot open") != std::string::npos);

    const std::string bad = write_file("bad.json", "{\n  \"dim\": 2,\n  oops\n}");
    r = run_cli("spectrum --kind distance " + bad);
    CHECK(r.code == 4);
    CHECK(r.err.find("line 3") != std::string::npos);

    const std::string small = write_file(
        "two_points.json", R"({"dim":2,"points":[["0","0"],["1","0"]],"sqrt_base":1})");
    r = run_cli("equiv --group rigid " + a + " " + small);
    CHECK(r.code == 5);  // sizes differ: domain error
    CHECK(!r.err.empty());
}
