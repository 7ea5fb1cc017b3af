#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "wilf/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "wilfc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = wilf::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string spec_path(const std::string& name, const std::string& content) {
    fs::path dir = fs::temp_directory_path() / "wilfc-cli-tests";
    fs::create_directories(dir);
    fs::path file = dir / name;
    std::ofstream(file) << content;
    return file.string();
}

std::string layered_spec() {
    return spec_path("layered2.json", R"({"kind":"alphabet","letters":["1","21"]})");
}

std::string poly_spec() {
    return spec_path("poly.json",
                     R"({"kind":"basis","basis":["231","312","321","2143"],"indec_cap":12})");
}

std::string abstract_spec() {
    return spec_path("abstract.json", R"({"kind":"abstract","letters":[
        {"name":"a","weight":1},{"name":"b","weight":1},
        {"name":"c","weight":1},{"name":"d","weight":1}],
        "forbidden":["a.b.c","d.b.d.b.c"]})");
}

}  // namespace

TEST_CASE("wilf partition output matches the documented shape") {
    auto result = invoke({"wilf", "--class", layered_spec(), "--size", "3", "--max", "14"});
    REQUIRE(result.code == 0);
    auto doc = json::parse(result.out);
    CHECK(doc["k"] == 3);
    CHECK(doc["c"] == 3);
    CHECK(doc["w"] == 2);
    REQUIRE(doc["blocks"].size() == 2);
    CHECK(doc["blocks"][0] == json::array({"123"}));
    CHECK(doc["blocks"][1] == json::array({"132", "213"}));
}

TEST_CASE("count emits the class counts as csv with a header") {
    auto result = invoke({"count", "--class", layered_spec(), "--max", "6"});
    REQUIRE(result.code == 0);
    CHECK(result.out == "n,count\n0,1\n1,1\n2,2\n3,3\n4,5\n5,8\n6,13\n");
}

TEST_CASE("growth reports the polynomial fixture") {
    auto result = invoke({"growth", "--class", poly_spec()});
    REQUIRE(result.code == 0);
    auto doc = json::parse(result.out);
    CHECK(doc["gamma"] == 1.0);
    CHECK(doc["D"] == 2);
    CHECK(doc["counts"][5] == 5);  // c_n = n
    CHECK(doc["prefix_states"].size() == 2);
}

TEST_CASE("automaton dump carries states, loops and transitions") {
    auto result = invoke({"automaton", "--class", abstract_spec()});
    REQUIRE(result.code == 0);
    auto doc = json::parse(result.out);
    CHECK(doc["mode"] == "subword");
    CHECK(doc["forbidden"] == json::array({"a.b.c", "d.b.d.b.c"}));
    CHECK(doc["prefix_states"][0]["tuple"] == json::array({0, 0}));
    CHECK(doc["prefix_states"][0].contains("loop_alphabet"));
    CHECK(doc["prefix_states"][0].contains("transitions"));
    CHECK(doc["prefix_states"][0].contains("gamma"));
    CHECK(doc["prefix_states"][0].contains("dominant"));
    CHECK(invoke({"automaton", "--class", abstract_spec(), "--format", "csv"}).code == 1);
}

TEST_CASE("avoid emits the signature with exactness data") {
    auto result =
        invoke({"avoid", "--class", layered_spec(), "--pattern", "132", "--max", "4"});
    REQUIRE(result.code == 0);
    CHECK(result.out.rfind("n,avoiders\n3,2\n4,2\n", 0) == 0);
    CHECK(result.out.find("exact=false") != std::string::npos);

    auto dotted =
        invoke({"avoid", "--class", layered_spec(), "--pattern", "1.21", "--max", "4"});
    CHECK(dotted.out == result.out);

    auto exact = invoke({"avoid", "--class", layered_spec(), "--pattern", "132"});
    CHECK(exact.out.find("exact=true") != std::string::npos);
}

TEST_CASE("identical configuration gives byte-identical output") {
    std::vector<std::string> args{"sample", "--class",   poly_spec(), "--max",
                                  "12",     "--samples", "20",        "--seed",
                                  "5"};
    auto first = invoke(args);
    auto second = invoke(args);
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.rfind("# seed=5\nindex,word\n", 0) == 0);

    args.back() = "6";
    CHECK(invoke(args).out != first.out);
}

TEST_CASE("stats prints the seed header and csv rows") {
    auto result = invoke({"stats", "--class", layered_spec(), "--max", "30", "--samples", "50",
                          "--seed", "3"});
    REQUIRE(result.code == 0);
    CHECK(result.out.rfind("# seed=3\nstatistic,n,samples,value\n", 0) == 0);
    CHECK(result.out.find("boltzmann_acceptance_rate") != std::string::npos);
    CHECK(result.out.find("# histogram: nondominant_weight") != std::string::npos);
}

TEST_CASE("orbits succeed on the fixtures") {
    auto result = invoke({"orbits", "--class", poly_spec(), "--size", "3"});
    REQUIRE(result.code == 0);
    auto doc = json::parse(result.out);
    CHECK(doc["hard_violations"] == 0);
    CHECK(doc["w"] == 2);
}

TEST_CASE("validate cross-checks the embedding order") {
    auto result = invoke({"validate", "--class", layered_spec(), "--max", "5"});
    REQUIRE(result.code == 0);
    CHECK(result.out.rfind("check,ok,detail\n", 0) == 0);
    CHECK(result.out.find("embedding_order,true") != std::string::npos);
    CHECK(result.out.find("greedy_vs_containment,true") != std::string::npos);
}

TEST_CASE("series reports the quotient identity") {
    auto result = invoke({"series", "--class", layered_spec(), "--pattern", "1", "--max", "8"});
    REQUIRE(result.code == 0);
    CHECK(result.out.rfind("series,degree,coefficient\n", 0) == 0);
    CHECK(result.out.find("# quotient_identity=true") != std::string::npos);
}

TEST_CASE("output lands in the requested file") {
    fs::path target = fs::temp_directory_path() / "wilfc-cli-tests" / "out.csv";
    fs::remove(target);
    auto result = invoke({"count", "--class", layered_spec(), "--max", "3", "--out",
                          target.string()});
    REQUIRE(result.code == 0);
    CHECK(result.out.empty());
    std::ifstream in(target);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == "n,count\n0,1\n1,1\n2,2\n3,3\n");
}

TEST_CASE("input errors exit with code 1") {
    CHECK(invoke({"nonsense", "--class", layered_spec()}).code == 1);
    CHECK(invoke({"count"}).code == 1);
    CHECK(invoke({"count", "--class", "/nonexistent.json"}).code == 1);
    CHECK(invoke({"avoid", "--class", layered_spec()}).code == 1);
    CHECK(invoke({"avoid", "--class", layered_spec(), "--pattern", "231"}).code == 1);
    CHECK(invoke({"wilf", "--class", layered_spec()}).code == 1);
    auto bad = spec_path("bad.json", "{nope");
    CHECK(invoke({"count", "--class", bad}).code == 1);
    auto badkind = spec_path("badkind.json", R"({"kind":"mystery"})");
    CHECK(invoke({"count", "--class", badkind}).code == 1);
}

TEST_CASE("help is an ordinary success") {
    auto result = invoke({"--help"});
    CHECK(result.code == 0);
    CHECK(result.out.find("wilf") != std::string::npos);
}
