#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <vcmin/io.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(VCMIN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vcmin_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    vcmin::io::write_file(path(name), text);
    return path(name);
  }

  fs::path dir_;
};

const char* kComplete =
    R"({"version":1,"ground_size":3,"balls":[[0,1,2]],"left_size":2,"adjacency":[[0,1,2],[0,1,2]]})";
const char* kEmpty = R"({"version":1,"ground_size":3,"balls":[],"left_size":2,"adjacency":[[],[]]})";

}  // namespace

TEST_F(Cli, GenForestValidatesAndIsDeterministic) {
  ASSERT_EQ(run("gen --kind forest --left 10 --right 20 --seed 7 --out " + path("a.json")).code, 0);
  ASSERT_EQ(run("gen --kind forest --left 10 --right 20 --seed 7 --out " + path("b.json")).code, 0);
  EXPECT_EQ(vcmin::io::read_file(path("a.json")), vcmin::io::read_file(path("b.json")));
  auto c = run("complexity -i " + path("a.json"));
  ASSERT_EQ(c.code, 0);
  auto last = c.out.substr(c.out.rfind('{'));
  auto j = nlohmann::json::parse(last);
  EXPECT_LE(j["max_complexity"].get<int>(), 2);
}

TEST_F(Cli, GenZeroFlipsGivesEmptyAdjacency) {
  ASSERT_EQ(run("gen --kind laminar-flip --left 5 --right 9 --max-flips 0 --seed 3 --out " + path("z.json")).code, 0);
  auto f = vcmin::io::load_instance(path("z.json"));
  for (const auto& a : f.instance.adjacency) EXPECT_TRUE(a.empty());
  EXPECT_EQ(f.instance.bound, 1u);
}

TEST_F(Cli, GenCount) {
  ASSERT_EQ(run("gen --kind padic --left 8 --right 8 --seed 1 --count 3 --out " + path("p.json")).code, 0);
  EXPECT_TRUE(fs::exists(path("p_0000.json")));
  EXPECT_TRUE(fs::exists(path("p_0002.json")));
  EXPECT_NE(vcmin::io::read_file(path("p_0000.json")), vcmin::io::read_file(path("p_0001.json")));
}

TEST_F(Cli, ComplexityExamples) {
  auto e = run("complexity -i " + write("e.json", kEmpty));
  ASSERT_EQ(e.code, 0);
  EXPECT_NE(e.out.find(R"({"max_complexity":0,"least_bound":1})"), std::string::npos);
  auto c = run("complexity -i " + write("c.json", kComplete));
  ASSERT_EQ(c.code, 0);
  EXPECT_NE(c.out.find(R"({"max_complexity":1,"least_bound":2})"), std::string::npos);
}

TEST_F(Cli, ComplexityInexpressibleExitsTwo) {
  auto bad = write("bad.json", R"({"version":1,"ground_size":2,"balls":[[0,1]],"left_size":1,"adjacency":[[0]]})");
  EXPECT_EQ(run("complexity -i " + bad).code, 2);
}

TEST_F(Cli, ExtractAndVerify) {
  auto in = write("c.json", kComplete);
  auto r = run("extract --no-timing -i " + in + " -o " + path("r.json"));
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["kind"], "complete");
  EXPECT_EQ(j["out_left"], 2);
  EXPECT_EQ(j["out_right"], 3);
  EXPECT_EQ(j["guarantee_ok"], true);
  auto v = run("verify -i " + in + " -r " + path("r.json"));
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "valid\n");

  write("wrong.json", R"({"version":1,"left":[0,1],"right":[0,1,2],"kind":"empty"})");
  auto w = run("verify -i " + in + " -r " + path("wrong.json"));
  EXPECT_EQ(w.code, 1);
  EXPECT_EQ(w.out, "counterexample 0 0\n");

  auto e = run("extract --no-timing -i " + write("e.json", kEmpty));
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(nlohmann::json::parse(e.out)["kind"], "empty");
}

TEST_F(Cli, TamperedRectangleFails) {
  ASSERT_EQ(run("gen --kind padic --left 32 --right 32 --seed 4 --out " + path("g.json")).code, 0);
  ASSERT_EQ(run("extract --no-timing -i " + path("g.json") + " -o " + path("r.json")).code, 0);
  auto inst = vcmin::io::load_instance(path("g.json")).instance;
  auto rect = vcmin::io::parse_rectangle(vcmin::io::read_file(path("r.json")), inst.right_size);
  // Add a right vertex that breaks homogeneity for some chosen left vertex.
  bool tampered = false;
  for (std::size_t y = 0; y < inst.right_size && !tampered; ++y) {
    if (rect.right.contains(y)) continue;
    for (auto a : rect.left) {
      const bool edge = inst.adjacency[a].contains(y);
      if (edge != (rect.kind == vcmin::RectKind::complete)) {
        rect.right.insert(y);
        tampered = true;
        break;
      }
    }
  }
  ASSERT_TRUE(tampered);
  write("t.json", vcmin::io::serialize_rectangle(rect));
  EXPECT_EQ(run("verify -i " + path("g.json") + " -r " + path("t.json")).code, 1);
}

TEST_F(Cli, ExtractTraceLines) {
  ASSERT_EQ(run("gen --kind laminar-flip --left 48 --right 48 --p 2 --depth 4 --max-flips 2 --seed 109 --out " +
                path("g.json"))
                .code,
            0);
  auto r = run("extract --no-timing --trace --check-claims -i " + path("g.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST_F(Cli, BenchRowsAndDeterminism) {
  const std::string flags = "bench --trials 3 --sizes 12 --kinds forest,padic --seed 5 --no-timing --out ";
  ASSERT_EQ(run(flags + path("a.csv")).code, 0);
  ASSERT_EQ(run(flags + path("b.csv") + " --jobs 3").code, 0);
  const auto a = vcmin::io::read_file(path("a.csv"));
  EXPECT_EQ(a, vcmin::io::read_file(path("b.csv")));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 7);
  EXPECT_EQ(a.find("false"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("gen --kind nope --left 1 --right 1 --seed 1 --out " + path("x.json")).code, 2);
  EXPECT_EQ(run("extract").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("extract -i " + path("missing.json")).code, 2);
}
