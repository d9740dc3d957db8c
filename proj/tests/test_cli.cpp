#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RADIOSYNC_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, got);
  const int status = pclose(pipe);
  REQUIRE(status != -1);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Fresh scratch directory per test binary run.
const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "radiosync_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string q(const fs::path& path) { return path.string(); }

}  // namespace

TEST_CASE("gen + verify selective family: exit 0 and deterministic bytes") {
  const fs::path a = scratch() / "sel_a.fam";
  const fs::path b = scratch() / "sel_b.fam";
  const std::string opts = "gen selective --n 8 --k 2 --c 3 --seed 42 -o ";
  CHECK(run_cli(opts + q(a)).code == 0);
  CHECK(run_cli(opts + q(b)).code == 0);
  CHECK(slurp(a) == slurp(b));

  const RunResult verify = run_cli("verify " + q(a));
  CHECK(verify.code == 0);
  CHECK(verify.output.find("status=verified-exhaustive") != std::string::npos);
}

TEST_CASE("gen block family and verify it") {
  const fs::path fam = scratch() / "blk.fam";
  CHECK(run_cli("gen block --n 8 --D 4 --delta 4 --c 2 --seed 3 -o " + q(fam)).code == 0);
  const RunResult verify = run_cli("verify " + q(fam));
  CHECK(verify.code == 0);
  CHECK(verify.output.find("status=verified-exhaustive") != std::string::npos);
}

TEST_CASE("over-budget exhaustive work is refused with exit 2") {
  const fs::path fam = scratch() / "big.fam";
  const RunResult gen = run_cli("gen selective --n 21 --k 2 --c 3 --seed 1 -o " + q(fam));
  CHECK(gen.code == 2);
  CHECK(gen.output.find("refused") != std::string::npos);

  // sampled generation of the same family is allowed...
  CHECK(run_cli("gen selective --n 21 --k 2 --c 3 --seed 1 --sampled --trials 2000 -o " +
                q(fam)).code == 0);
  // ...but exhaustive verification of the file still refuses
  const RunResult verify = run_cli("verify " + q(fam));
  CHECK(verify.code == 2);
  CHECK(run_cli("verify --sampled --trials 2000 " + q(fam)).code == 0);
}

TEST_CASE("corrupted family fixtures falsify with exit 1") {
  const fs::path dir(RADIOSYNC_FIXTURE_DIR);
  for (const char* name : {"corrupt_selective.fam", "corrupt_urs.fam", "corrupt_block.fam"}) {
    const RunResult verify = run_cli("verify " + q(dir / name));
    CHECK(verify.code == 1);
    CHECK(verify.output.find("status=falsified") != std::string::npos);
    CHECK(verify.output.find("nodes=") != std::string::npos);
  }
}

TEST_CASE("missing and malformed files exit 3") {
  CHECK(run_cli("verify " + q(scratch() / "nope.fam")).code == 3);
  const fs::path junk = scratch() / "junk.fam";
  std::ofstream(junk) << "not a family\n";
  const RunResult bad = run_cli("verify " + q(junk));
  CHECK(bad.code == 3);
  CHECK(bad.output.find("parse error") != std::string::npos);
}

TEST_CASE("sim broadcast produces a completed CSV trace") {
  const fs::path graph = scratch() / "path4.g";
  const fs::path fam = scratch() / "b4.fam";
  const fs::path csv1 = scratch() / "trace1.csv";
  const fs::path csv2 = scratch() / "trace2.csv";
  REQUIRE(run_cli("gen-graph path --n 4 -o " + q(graph)).code == 0);
  REQUIRE(run_cli("gen block --n 4 --D 3 --delta 2 --c 2 --seed 1 -o " + q(fam)).code == 0);

  const std::string opts =
      "sim broadcast --graph " + q(graph) + " --family " + q(fam) + " -o ";
  CHECK(run_cli(opts + q(csv1)).code == 0);
  CHECK(run_cli(opts + q(csv2)).code == 0);
  const std::string text = slurp(csv1);
  CHECK(text == slurp(csv2));
  CHECK(text.find("# n=4 D=3 delta=1") != std::string::npos);
  CHECK(text.find("# completion=") != std::string::npos);
  CHECK(text.find("# completion=none") == std::string::npos);
}

TEST_CASE("sim wakeup rejects an empty wake schedule with exit 3") {
  const fs::path graph = scratch() / "path4w.g";
  const fs::path fam = scratch() / "u4.fam";
  const fs::path wake = scratch() / "empty.wake";
  const fs::path csv = scratch() / "w.csv";
  REQUIRE(run_cli("gen-graph path --n 4 -o " + q(graph)).code == 0);
  REQUIRE(run_cli("gen urs --n 4 --c 8 --seed 7 -o " + q(fam)).code == 0);
  std::ofstream(wake).flush();

  const RunResult res = run_cli("sim wakeup --graph " + q(graph) + " --family " + q(fam) +
                                " --wake " + q(wake) + " -o " + q(csv));
  CHECK(res.code == 3);

  // a populated wake file completes
  std::ofstream(wake) << "1 0\n";
  const RunResult ok = run_cli("sim wakeup --graph " + q(graph) + " --family " + q(fam) +
                               " --wake " + q(wake) + " -o " + q(csv));
  CHECK(ok.code == 0);
  CHECK(slurp(csv).find("# completion=none") == std::string::npos);
}

TEST_CASE("sim baseline runs without a family file") {
  const fs::path graph = scratch() / "star.g";
  const fs::path csv1 = scratch() / "base1.csv";
  const fs::path csv2 = scratch() / "base2.csv";
  REQUIRE(run_cli("gen-graph star --leaves 4 -o " + q(graph)).code == 0);
  const std::string opts =
      "sim baseline --graph " + q(graph) + " --c 3 --seed 5 -o ";
  CHECK(run_cli(opts + q(csv1)).code == 0);
  CHECK(run_cli(opts + q(csv2)).code == 0);
  const std::string text = slurp(csv1);
  CHECK(text == slurp(csv2));
  CHECK(text.find("# seed=5") != std::string::npos);
  CHECK(text.find("# completion=none") == std::string::npos);
}

TEST_CASE("gen-graph is deterministic per seed") {
  const fs::path a = scratch() / "lay_a.g";
  const fs::path b = scratch() / "lay_b.g";
  const fs::path c = scratch() / "lay_c.g";
  CHECK(run_cli("gen-graph layered --layers 3 --width 2 --seed 9 -o " + q(a)).code == 0);
  CHECK(run_cli("gen-graph layered --layers 3 --width 2 --seed 9 -o " + q(b)).code == 0);
  CHECK(run_cli("gen-graph layered --layers 3 --width 2 --seed 10 -o " + q(c)).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("usage errors do not exit 0") {
  CHECK(run_cli("gen selective --n 8").code != 0);  // missing -o
  CHECK(run_cli("frobnicate").code != 0);
  CHECK(run_cli("").code != 0);  // a subcommand is required
  CHECK(run_cli("gen telepathy --n 4 -o /dev/null").code != 0);
}

TEST_CASE("generation failure reports the last counterexample with exit 1") {
  const fs::path fam = scratch() / "fail.fam";
  const RunResult res = run_cli(
      "gen urs --n 4 --c 2 --seed 7 --max-attempts 3 -o " + q(fam));
  CHECK(res.code == 1);
  CHECK(res.output.find("generation failed after 3 attempts") != std::string::npos);
  CHECK(res.output.find("status=falsified") != std::string::npos);
  CHECK_FALSE(fs::exists(fam));
}
