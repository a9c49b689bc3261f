// End-to-end checks of the CLI surface: exit codes, file formats, and
// determinism of generated artifacts. Drives the real binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

const std::string kCli = DISTLAB_CLI_PATH;
const std::string kDir = "cli_tmp";

int run(const std::string& args) {
    const int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Setup {
    Setup() {
        if (std::system(("mkdir -p " + kDir).c_str()) != 0) std::abort();
    }
} setup;

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run("field-check 7") == 0);
    CHECK(run("field-check 4") == 2);        // even characteristic
    CHECK(run("field-check 9") == 2);        // not prime; needs 3^2
    CHECK(run("field-check") == 2);          // usage
    CHECK(run("no-such-command") == 2);
    CHECK(run("spectral --field 3 --dim 9") == 2);  // graph guard
    CHECK(run("gen --field 5 --dim 2 --gen random --size 26 --seed 1 --out " + kDir +
              "/x.csv") == 2);  // n > q^d
}

TEST_CASE("gen is deterministic and round-trips through energy") {
    const std::string a = kDir + "/a.csv", b = kDir + "/b.csv";
    REQUIRE(run("gen --field 7 --dim 2 --gen random --size 10 --seed 42 --out " + a) == 0);
    REQUIRE(run("gen --field 7 --dim 2 --gen random --size 10 --seed 42 --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).rfind("# q=7 p=7 m=1 d=2\n", 0) == 0);

    REQUIRE(run("energy --in " + a + " --k 2 --out " + kDir + "/e.json") == 0);
    auto j = nlohmann::json::parse(slurp(kDir + "/e.json"));
    CHECK(j["field"] == "7");
    CHECK(j["size_E"] == 10);
    CHECK(j["nu"].size() == 7);
    CHECK(j["N"].size() == 7);
    CHECK(j["energy"].is_string());
    CHECK(j["sumset"]["size"].get<int>() <= 7);
    CHECK(j["cs_bound"].is_string());
}

TEST_CASE("sphere generation matches the known tiny case") {
    const std::string path = kDir + "/sphere.csv";
    REQUIRE(run("gen --field 3 --dim 2 --gen sphere --radius 0 --out " + path) == 0);
    CHECK(slurp(path) == "# q=3 p=3 m=1 d=2\n0,0\n");
}

TEST_CASE("extension fields flow through the pipeline") {
    const std::string path = kDir + "/ext.csv";
    REQUIRE(run("gen --field 3^2 --dim 1 --gen full --out " + path) == 0);
    CHECK(slurp(path).rfind("# q=9 p=3 m=2 d=1\n", 0) == 0);
    REQUIRE(run("energy --in " + path + " --k 1 --out " + kDir + "/ext.json") == 0);
    auto j = nlohmann::json::parse(slurp(kDir + "/ext.json"));
    CHECK(j["field"] == "3^2");
    CHECK(j["modulus"] == nlohmann::json({1, 0, 1}));
    CHECK(j["nu"].size() == 9);
}

TEST_CASE("spectral report is certified on a small graph") {
    REQUIRE(run("spectral --field 5 --dim 1 --out " + kDir + "/spec.json") == 0);
    auto j = nlohmann::json::parse(slurp(kDir + "/spec.json"));
    CHECK(j["n"] == 25);
    CHECK(j["degree"] == 5);
    CHECK(j["certified"].get<bool>());
}

TEST_CASE("verify handles configs and bad input") {
    const std::string cfg = kDir + "/cfg.json";
    {
        std::ofstream out(cfg);
        out << R"({"fields":["7"],"dims":[2],"ks":[2],"seeds":[1],
                   "generators":[{"type":"random","sizes":["6"]}],
                   "checks":["sumset","recursion"]})";
    }
    CHECK(run("verify --config " + cfg + " --out " + kDir + "/r.jsonl") == 0);
    std::istringstream lines(slurp(kDir + "/r.jsonl"));
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j.contains("verdict"));
        ++count;
    }
    CHECK(count == 2);

    CHECK(run("verify --config " + kDir + "/missing.json") == 2);
    {
        std::ofstream out(cfg);
        out << "{ not json";
    }
    CHECK(run("verify --config " + cfg) == 2);
    {
        std::ofstream out(cfg);
        out << R"({"fields":["7"],"dims":[2],"checks":["bogus"],"generators":[]})";
    }
    CHECK(run("verify --config " + cfg) == 2);
}
