#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "mriu/catalog.hpp"
#include "mriu/state_io.hpp"

namespace {

struct Run {
  int rc = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MRIU_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "mriu_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("riu on GHZ") {
  const auto r = run("riu --state GHZ --q 2 --seed 7 --restarts 4");
  REQUIRE(r.rc == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(j["seed"] == 7);
  CHECK(j["optimizer"].size() == 3);
  const auto s = run("riu --state 'D(4,2)' --q 2 --symmetric");
  REQUIRE(s.rc == 0);
  CHECK(nlohmann::json::parse(s.out)["method"] == "symmetric");
}

TEST_CASE("moments") {
  const auto r = run("moments --k 1 --exact");
  REQUIRE(r.rc == 0);
  CHECK(r.out.rfind("8/55\n", 0) == 0);
  CHECK(run("moments --k 5").rc == 2);
  CHECK(run("moments --k 5 --allow-large --exact").out.rfind("262144/56497545", 0) == 0);
}

TEST_CASE("invariants and rank") {
  auto t = run("tangle --state GHZ");
  REQUIRE(t.rc == 0);
  CHECK(nlohmann::json::parse(t.out)["value"].get<double>() == doctest::Approx(1.0));
  auto h = run("hyperdet --state HD");
  REQUIRE(h.rc == 0);
  CHECK(nlohmann::json::parse(h.out)["value"].get<double>() == doctest::Approx(1.0));
  auto k = run("rank --state W --seed 3");
  REQUIRE(k.rc == 0);
  CHECK(nlohmann::json::parse(k.out)["rank"] == 3);
}

TEST_CASE("catalog export and reload") {
  const auto path = scratch("w.json");
  REQUIRE(run("catalog --export W --out " + path.string()).rc == 0);
  const auto c = mriu::read_state_file(path.string());
  CHECK(c == mriu::named_state("W"));
  const auto e = run("entropy --state-file " + path.string() + " --q 1");
  REQUIRE(e.rc == 0);
  CHECK(nlohmann::json::parse(e.out)["value"].get<double>() == doctest::Approx(std::log(3.0)));
  CHECK(run("catalog").out.find("GHZ") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("riu --state NOPE --q 1").rc == 2);
  CHECK(run("riu --state GHZ --q -1").rc == 2);
  CHECK(run("frobnicate").rc == 2);
  CHECK(run("tangle --state GHZ4").rc == 2);
  CHECK(run("entropy --state GHZ --state-file x.json").rc == 2);
  const auto bad = scratch("bad.json");
  {
    std::ofstream f(bad);
    f << R"({"dims":[2],"coeffs":[[1,0],[1,0]]})";
  }
  CHECK(run("entropy --state-file " + bad.string()).rc == 2);
}

TEST_CASE("same seed gives identical ensemble output") {
  const auto a = scratch("a.csv"), b = scratch("b.csv"), c = scratch("c.csv");
  REQUIRE(run("ensemble --stat tangle --samples 300 --seed 11 --out " + a.string()).rc == 0);
  REQUIRE(run("ensemble --stat tangle --samples 300 --seed 11 --threads 1 --out " + b.string()).rc == 0);
  REQUIRE(run("ensemble --stat tangle --samples 300 --seed 12 --out " + c.string()).rc == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
  CHECK(slurp(a).rfind("bin_left,bin_right,count,density", 0) == 0);
}

}  // TEST_SUITE
