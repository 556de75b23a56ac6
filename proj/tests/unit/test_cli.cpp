#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result cli(const std::string& args) {
  std::string cmd = std::string(FAIRX_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("keygen enforces the minimum size") {
  Result r = cli("keygen --bits 8 --out /dev/null");
  CHECK(r.status != 0);
  CHECK(has(r.out, "16"));
}

TEST_CASE("keygen writes both halves") {
  auto dir = std::filesystem::temp_directory_path() / "fairx-cli-keygen";
  std::filesystem::create_directories(dir);
  Result r = cli("keygen --bits 64 --seed 3 --out " + (dir / "k").string());
  CHECK(r.status == 0);
  CHECK(std::filesystem::exists(dir / "k"));
  CHECK(std::filesystem::exists(dir / "k.pub"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("honest run prints three messages") {
  Result r = cli("run --scenario honest --key-bits 512 --seed 7");
  CHECK(r.status == 0);
  CHECK(has(r.out, "messages: 3"));
}

TEST_CASE("fairness matrix exits cleanly") {
  Result r = cli("run --matrix --key-bits 64 --seed 7");
  CHECK(r.status == 0);
  CHECK(has(r.out, "unfair 0"));
}

TEST_CASE("unknown scenario is an error") {
  Result r = cli("run --scenario B:teleport --key-bits 64");
  CHECK(r.status != 0);
}

TEST_CASE("metrics report includes the comparison") {
  Result r = cli("report --metrics --key-bits 512 --seed 7");
  CHECK(r.status == 0);
  CHECK(has(r.out, "Zhang"));
  CHECK(has(r.out, "13"));
}
