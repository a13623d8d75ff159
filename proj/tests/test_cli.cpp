#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

const char* cli_path() {
  const char* path = std::getenv("INTERLACE_CLI");
  REQUIRE_MESSAGE(path != nullptr, "INTERLACE_CLI must point at the built binary");
  return path;
}

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.output.append(buf.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class Fixture {
 public:
  Fixture() {
    dir_ = fs::temp_directory_path() /
           ("interlace_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~Fixture() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("forward command") {
  Fixture fx;
  SUBCASE("rank-one diagonal case") {
    const auto f = fx.write("a.json", R"({"mode":"rank_one","lambda":[0,1],"v":[0,2]})");
    const auto r = run_cli("forward " + f);
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["mu"] == json::parse("[0, 5]"));
    CHECK(doc["face_profile"]["k"] == 1);
  }
  SUBCASE("bordered with zero border") {
    const auto f = fx.write("b.json", R"({"mode":"bordered","lambda":[0],"v":[0],"c":-3})");
    const auto r = run_cli("forward " + f);
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.output)["mu"] == json::parse("[-3, 0]"));
  }
  SUBCASE("zero vector is the identity") {
    const auto f = fx.write("c.json", R"({"mode":"rank_one","lambda":[0,2],"v":[0,0]})");
    const auto r = run_cli("forward " + f);
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.output)["mu"] == json::parse("[0, 2]"));
  }
  SUBCASE("schema violations exit 2") {
    const auto f = fx.write("d.json", R"({"mode":"rank_one","lambda":[0,2],"mu":[1,3]})");
    CHECK(run_cli("forward " + f).exit_code == 2);  // v missing
    const auto g = fx.write("e.json", R"({"mode":"rank_one","lambda":[0,2]})");
    CHECK(run_cli("forward " + g).exit_code == 2);
    const auto h = fx.write("f.json", "not json at all");
    CHECK(run_cli("forward " + h).exit_code == 2);
  }
}

TEST_CASE("invert command") {
  Fixture fx;
  SUBCASE("closed-form rank-one") {
    const auto f = fx.write("a.json", R"({"mode":"rank_one","lambda":[0,2],"mu":[1,3]})");
    const auto r = run_cli("invert " + f);
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["closed_form"]["v"][0].get<double>() == doctest::Approx(1.224744871391589));
    CHECK(doc["closed_form"]["v"][1].get<double>() == doctest::Approx(0.7071067811865476));
    CHECK(doc["closed_form"]["certificate"]["accepting"] == true);
  }
  SUBCASE("closed-form bordered") {
    const auto f = fx.write("b.json", R"({"mode":"bordered","lambda":[0],"mu":[-1,2]})");
    const auto r = run_cli("invert " + f);
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["closed_form"]["c"].get<double>() == doctest::Approx(1.0));
    CHECK(doc["closed_form"]["v"][0].get<double>() == doctest::Approx(1.414213562373095));
  }
  SUBCASE("both methods agree") {
    const auto f = fx.write("c.json", R"({"mode":"rank_one","lambda":[0,2],"mu":[1,3]})");
    const auto r = run_cli("invert " + f + " --method both");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["max_disagreement"].get<double>() < 1e-10);
    CHECK(doc["continuation"]["certificate"]["accepting"] == true);
  }
  SUBCASE("non-interlacing target exits 5 naming the inequality") {
    const auto f = fx.write("d.json", R"({"mode":"rank_one","lambda":[0,1],"mu":[1.5,2]})");
    const auto r = run_cli("invert " + f);
    CHECK(r.exit_code == 5);
    CHECK(r.output.find("mu[0] > lambda[1]") != std::string::npos);
  }
}

TEST_CASE("preimages command") {
  Fixture fx;
  SUBCASE("real enumeration") {
    const auto f = fx.write("a.json", R"({"mode":"rank_one","lambda":[0,2],"mu":[1,3]})");
    const auto r = run_cli("preimages " + f);
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["count"] == 4);
    CHECK(doc["preimages"].size() == 4);
    CHECK(doc["preimages"][0]["signs"] == json::parse("[1, 1]"));
    CHECK(doc["truncated"] == false);
    CHECK(doc["r_squared"].get<double>() == doctest::Approx(2.0));
  }
  SUBCASE("identity target collapses to the zero vector") {
    const auto f = fx.write("b.json", R"({"mode":"rank_one","lambda":[0,2],"mu":[0,2]})");
    const auto r = run_cli("preimages " + f);
    const json doc = json::parse(r.output);
    CHECK(doc["count"] == 1);
    CHECK(doc["preimages"][0]["v"] == json::parse("[0, 0]"));
  }
  SUBCASE("complex torus with frozen middle coordinate") {
    const auto f = fx.write("c.json",
        R"({"mode":"rank_one","field":"complex","lambda":[0,1,2],"mu":[1,1.5,7]})");
    const auto r = run_cli("preimages " + f + " --limit 3 --seed 11");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["torus_dimension"] == 2);
    CHECK(doc["representative"][1] == json::parse("[0, 0]"));
    CHECK(doc["phase_samples"].size() == 3);
    for (const auto& sample : doc["phase_samples"])
      CHECK(sample["residual_spectrum"].get<double>() < 1e-11);
  }
  SUBCASE("limit truncates") {
    const auto f = fx.write("d.json", R"({"mode":"rank_one","lambda":[0,2],"mu":[1,3]})");
    const json doc = json::parse(run_cli("preimages " + f + " --limit 2").output);
    CHECK(doc["count"] == 4);
    CHECK(doc["preimages"].size() == 2);
    CHECK(doc["truncated"] == true);
  }
}

TEST_CASE("crease-demo command") {
  Fixture fx;
  const auto f = fx.write("a.json", R"({"mode":"rank_one","lambda":[0,1],"v":[1,1]})");
  SUBCASE("emits the crease polylines with the exact corner") {
    const auto r = run_cli("crease-demo " + f + " --samples 9");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("branch,x,y\n", 0) == 0);
    CHECK(r.output.find("E2,1,1\n") != std::string::npos);   // corner at c = 1
    CHECK(r.output.find("E2,1,4\n") != std::string::npos);   // vertical branch at c = 2
    CHECK(r.output.find("E1,0,1\n") != std::string::npos);   // base of the vertical ray
  }
  SUBCASE("rejects n != 2") {
    const auto g = fx.write("b.json", R"({"mode":"rank_one","lambda":[0,1,2],"v":[1,1,1]})");
    CHECK(run_cli("crease-demo " + g).exit_code == 2);
  }
}

TEST_CASE("verify command") {
  Fixture fx;
  SUBCASE("healthy spectrum passes") {
    const auto f = fx.write("a.json", R"({"mode":"rank_one","lambda":[0,1,2],"v":[1,1,1]})");
    const auto r = run_cli("verify " + f + " --trials 200 --seed 5");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["all_passed"] == true);
    for (const auto& [name, entry] : doc["hypotheses"].items())
      CHECK(entry["failures"] == 0);
  }
  SUBCASE("degenerate spectrum exits 2") {
    const auto f = fx.write("b.json", R"({"mode":"rank_one","lambda":[0,0,1],"v":[1,1,1]})");
    const auto r = run_cli("verify " + f);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("DegenerateSpectrum") != std::string::npos);
  }
}

TEST_CASE("output documents are byte-stable") {
  Fixture fx;
  const auto f = fx.write("a.json", R"({"mode":"rank_one","lambda":[0,2],"mu":[1,3]})");
  const auto r1 = run_cli("invert " + f + " --method both");
  const auto r2 = run_cli("invert " + f + " --method both");
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);

  const auto g = fx.write("b.json",
      R"({"mode":"rank_one","field":"complex","lambda":[0,1,2],"mu":[1,1.5,7]})");
  const auto p1 = run_cli("preimages " + g + " --limit 4 --seed 42");
  const auto p2 = run_cli("preimages " + g + " --limit 4 --seed 42");
  CHECK(p1.output == p2.output);
}

TEST_CASE("basis-aware problems") {
  Fixture fx;
  // 2x2 rotation basis; ambient v = Q p with p = (1, 2).
  const char* doc = R"({
    "mode": "rank_one",
    "lambda": [0, 2],
    "v": [-1.1426396637476532, 1.9220755965441761],
    "basis": [[0.54030230586813977, -0.84147098480789650],
              [0.84147098480789650, 0.54030230586813977]]
  })";
  const auto f = fx.write("a.json", doc);
  const auto r = run_cli("forward " + f);
  CHECK(r.exit_code == 0);
  const json out = json::parse(r.output);
  // Same image as the diagonal-frame problem with p = (1, 2).
  const auto g = fx.write("b.json", R"({"mode":"rank_one","lambda":[0,2],"v":[1,2]})");
  const json ref = json::parse(run_cli("forward " + g).output);
  CHECK(out["mu"][0].get<double>() ==
        doctest::Approx(ref["mu"][0].get<double>()).epsilon(1e-12));
  CHECK(out["mu"][1].get<double>() ==
        doctest::Approx(ref["mu"][1].get<double>()).epsilon(1e-12));
}
