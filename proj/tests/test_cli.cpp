#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "discordant/cli.hpp"
#include "discordant/state_json.hpp"

using namespace discordant;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "discordant");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "discordant_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == kExitInput);
    CHECK(run({"frobnicate"}).code == kExitInput);
    CHECK(run({"analyze"}).code == kExitInput);
    CHECK(run({"analyze", "--family", "werner", "--d", "3"}).code == kExitInput);
    CHECK(run({"analyze", "--family", "nope", "--d", "3", "--lambda", "0"}).code == kExitInput);
    CHECK(run({"analyze", "/nonexistent/state.json"}).code == kExitInput);
    CHECK(run({"build", "--family", "werner", "--d", "2", "--lambda", "1"}).code == kExitInput);
    CHECK(run({"build", "--family", "zero-discord", "--d", "3"}).code == kExitInput);
    CHECK(run({"simplex", "--d", "3"}).code == kExitInput);
    CHECK(run({"verify", "--d", "4"}).code == kExitInput);
    CHECK(run({"verify"}).code == kExitInput);
    CHECK_FALSE(run({"verify", "--d", "4"}).err.empty());
}

TEST_CASE("analyze a family") {
    const Run r = run({"analyze", "--family", "isotropic", "--d", "3", "--lambda", "0.4", "--seed", "3"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["agreement"] == true);
    CHECK(j["sides"].size() == 2);
    for (const auto& s : j["sides"]) {
        CHECK(s["structural"]["zero_discord"] == false);
        CHECK(s["numeric"]["D"].get<double>() > 0.1);
    }

    const Run z = run({"analyze", "--family", "werner", "--d", "3", "--lambda", "0", "--side", "B", "--no-numeric"});
    REQUIRE(z.code == kExitOk);
    const Json jz = Json::parse(z.out);
    CHECK(jz["sides"].size() == 1);
    CHECK(jz["sides"][0]["side"] == "B");
    CHECK(jz["sides"][0]["structural"]["zero_discord"] == true);
    CHECK(jz["sides"][0]["numeric"].is_null());
}

TEST_CASE("build then analyze round-trips through a file") {
    const auto path = scratch("zero_a.json");
    const Run b = run({"build", "--family", "zero-discord", "--d", "3", "--side", "A", "--seed", "11", "-o", path.string()});
    REQUIRE(b.code == kExitOk);
    const Run a = run({"analyze", path.string(), "--side", "A", "--seed", "11"});
    CHECK(a.code == kExitOk);
    const Json j = Json::parse(a.out);
    CHECK(j["kind"] == "circulant");
    CHECK(j["sides"][0]["structural"]["zero_discord"] == true);
    CHECK(j["sides"][0]["closed_form"]["zero_discord"] == true);
    CHECK(j["sides"][0]["agreement"] == "agree");

    CHECK(run({"analyze", path.string(), "--d", "5"}).code == kExitInput);
    CHECK(run({"analyze", path.string(), "--family", "werner"}).code == kExitInput);

    std::ofstream(scratch("bad.json")) << R"({"kind":"werner","d":3,"lambda":0.1,"colour":"red"})";
    CHECK(run({"analyze", scratch("bad.json").string()}).code == kExitInput);
}

TEST_CASE("build emits the requested form") {
    const Run bell = run({"build", "--family", "bell", "--d", "3", "--alpha", "1", "--pi", "3,2,1"});
    REQUIRE(bell.code == kExitOk);
    CHECK(Json::parse(bell.out)["kind"] == "circulant");
    const Run native = run({"build", "--family", "bell", "--d", "3", "--alpha", "1", "--pi", "3,2,1", "--emit", "native"});
    const Json jn = Json::parse(native.out);
    CHECK(jn["kind"] == "bell");
    // pi is rescaled to sum to 1/d: p(0, 0) = 3 / (6 * 3).
    CHECK(jn["p"][0][0].get<double>() == doctest::Approx(1.0 / 6.0));

    const Run w = run({"build", "--family", "werner", "--d", "3", "--lambda", "0.1"});
    CHECK(Json::parse(w.out)["kind"] == "dense");
    CHECK(run({"build", "--family", "werner", "--d", "3", "--lambda", "0.1", "--emit", "circulant"}).code == kExitInput);

    const Run me = run({"build", "--family", "maximally-entangled", "--d", "2", "--emit", "dense"});
    const StateDocument doc = parse_state_text(me.out);
    CHECK(doc.kind == "dense");
    CHECK(doc.circulant);
}

TEST_CASE("verify") {
    const Run t = run({"verify", "--d", "3", "--count", "5", "--numeric-count", "1", "--seed", "2"});
    CHECK(t.code == kExitOk);
    CHECK(t.out.find("all suites passed") != std::string::npos);

    const Run j = run({"verify", "--d", "5", "--count", "4", "--format", "json", "--seed", "2"});
    CHECK(j.code == kExitOk);
    const Json doc = Json::parse(j.out);
    CHECK(doc["ok"] == true);
    CHECK(doc["d"] == 5);
    bool numeric_skipped = false;
    for (const auto& s : doc["suites"])
        if (s["suite"] == "numeric") numeric_skipped = s["skipped"].get<int>() > 0;
    CHECK(numeric_skipped);
}

TEST_CASE("simplex CSV") {
    const Run r = run({"simplex", "--points", "11", "--every", "5"});
    REQUIRE(r.code == kExitOk);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 1 + 66);
    CHECK(rows[0] == "b,c,separable,zero_discord,numeric_discord");
    int with_numeric = 0;
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i].back() != ',') ++with_numeric;
    CHECK(with_numeric == 14);
    // b = c = 0: P0 / 2 is an equal mix of two Bell states with correlation
    // vector (0, 1, 0), hence classical.
    CHECK(rows[1] == "0,0,1,1,0");
    CHECK(rows.back() == "1,0,0,0,1");  // singlet, index 65

    const Run off = run({"simplex", "--points", "5", "--no-numeric"});
    for (size_t i = 1; i < lines(off.out).size(); ++i) CHECK(lines(off.out)[i].back() == ',');
}

TEST_CASE("seed handling is deterministic") {
    const std::vector<std::string> args{"analyze", "--family", "isotropic", "--d", "3", "--lambda", "0.2", "--seed", "9"};
    CHECK(run(args).out == run(args).out);

    const std::vector<std::string> build{"build", "--family", "zero-discord", "--d", "3", "--side", "B", "--seed", "1"};
    const std::string plain = run(build).out;
    setenv("DISCORDANT_SEED", "1", 1);
    std::vector<std::string> other = build;
    other.back() = "2";
    CHECK(run(other).out == plain);
    setenv("DISCORDANT_SEED", "abc", 1);
    CHECK(run(build).code == kExitInput);
    unsetenv("DISCORDANT_SEED");
    CHECK(run(other).out != plain);
}
