#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <string>

#include "json.hpp"

namespace {

struct Invocation {
  int status = -1;
  std::string out;
};

Invocation run(const std::string& args) {
  const std::string cmd = std::string(QMINK_BIN) + " " + args + " 2>/dev/null";
  Invocation r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    return r;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
    r.out.append(buf, n);
  }
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const std::string& file) {
  return std::string(QMINK_DATA_DIR) + "/" + file;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST(Normalize, BuiltinName) {
  Invocation r = run("normalize lorentz 'd a'");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "1 + b c\n");
}

TEST(Normalize, FilePathAndStrategies) {
  for (const char* s : {"leftmost", "rightmost", "random"}) {
    Invocation r = run("normalize " + data("minkowski.qalg") + " 'w x' --strategy " + s);
    EXPECT_EQ(r.status, 0) << s;
    EXPECT_EQ(r.out, "q^-4 x w\n") << s;
  }
  Invocation l = run("normalize " + data("lorentz.qalg") + " \"c' a\"");
  EXPECT_EQ(l.out, "q^-4 a c'\n");
}

TEST(Normalize, JsonOutput) {
  Invocation r = run("normalize minkowski 'w x' --format json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "normalize");
  EXPECT_EQ(j["reports"][0]["suite"], "normalize");
  EXPECT_EQ(j["reports"][0]["checks"][0]["rendered"], "q^-4 x w");
}

TEST(Normalize, MalformedInputExitsTwo) {
  EXPECT_EQ(run("normalize lorentz 'a b)'").status, 2);
  EXPECT_EQ(run("normalize lorentz 'zz'").status, 2);
  EXPECT_EQ(run("normalize lorentz").status, 2);
  EXPECT_EQ(run("normalize lorentz 'a' --strategy sideways").status, 2);
}

TEST(Normalize, MissingFileIsAnError) {
  Invocation r = run("normalize /nonexistent/file.qalg 'a'");
  EXPECT_NE(r.status, 0);
}

TEST(Check, HopfAndCoactionPass) {
  Invocation h = run("check hopf");
  EXPECT_EQ(h.status, 0);
  EXPECT_TRUE(contains(h.out, "hopf: pass"));
  Invocation c = run("check coaction");
  EXPECT_EQ(c.status, 0);
  EXPECT_FALSE(contains(c.out, "FAIL"));
}

TEST(Check, PresentationFromFile) {
  Invocation r = run("check presentation " + data("lorentz.qalg"));
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "presentation: pass"));
}

TEST(Check, CocycleReportsStatedShiftIdentity) {
  Invocation r = run("check cocycle --samples 500 --seed 3");
  EXPECT_EQ(r.status, 1);
  EXPECT_TRUE(contains(r.out, "PASS 2-cocycle identity"));
  EXPECT_TRUE(contains(r.out, "PASS Omega identity"));
  EXPECT_TRUE(contains(r.out, "FAIL Psi* shift identity as stated"));
  EXPECT_TRUE(contains(r.out, "PASS Psi* shift identity with factor Psi(u,v)"));
}

TEST(Check, CocycleAtSingleS) {
  Invocation r = run("check cocycle --s 0.5 --samples 100 --format json");
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["reports"][0]["checks"].size(), 4u);
}

TEST(Check, PqUnitPairPasses) {
  Invocation r = run("check pq --p 1 --q 1 --samples 100");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "(exact)"));
}

TEST(Check, PqConventionsAgree) {
  Invocation plain = run("check pq --p 2 --q 3 --samples 50 --format json");
  Invocation squared =
      run("check pq --p 4 --q 9 --pq-convention squared --samples 50 --format json");
  auto a = nlohmann::json::parse(plain.out)["reports"][0]["checks"];
  auto b = nlohmann::json::parse(squared.out)["reports"][0]["checks"];
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k]["status"], b[k]["status"]) << a[k]["name"];
  }
}

TEST(Check, InvalidOptionsExitTwo) {
  EXPECT_EQ(run("check pq --p 2").status, 2);
  EXPECT_EQ(run("check pq --p -1 --q 2").status, 2);
  EXPECT_EQ(run("check pq --samples 0").status, 2);
  EXPECT_EQ(run("check nothing").status, 2);
  EXPECT_EQ(run("check hopf --format xml").status, 2);
  EXPECT_EQ(run("").status, 2);
}

TEST(ReportAll, DeterministicAndConsistentWithSchema) {
  Invocation a = run("report-all --format json --seed 5");
  Invocation b = run("report-all --format json --seed 5");
  EXPECT_EQ(a.status, 1);
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  std::ifstream in(QMINK_SCHEMA);
  auto schema = nlohmann::json::parse(in);
  const auto& suite_enum =
      schema["$defs"]["suite"]["properties"]["suite"]["enum"];
  std::set<std::string> allowed(suite_enum.begin(), suite_enum.end());
  std::set<std::string> seen;
  for (const auto& r : j["reports"]) {
    seen.insert(r["suite"].get<std::string>());
    EXPECT_TRUE(allowed.count(r["suite"].get<std::string>()));
  }
  EXPECT_EQ(seen, (std::set<std::string>{"presentation", "hopf", "coaction",
                                         "cocycle", "pq"}));
  EXPECT_EQ(j["status"], "fail");
}

TEST(ReportAll, OnlyStatedFormsFail) {
  Invocation r = run("report-all --samples 200");
  std::size_t failures = 0;
  std::size_t pos = 0;
  while ((pos = r.out.find("\nFAIL ", pos)) != std::string::npos) {
    const std::string line = r.out.substr(pos + 1, r.out.find('\n', pos + 1) - pos - 1);
    EXPECT_TRUE(contains(line, "as stated") || contains(line, "(QQ*)_11 = (1+|R|^2") ||
                contains(line, "(QQ*)_22 = (1+|R|^2"))
        << line;
    ++failures;
    ++pos;
  }
  EXPECT_EQ(failures, 7u);
}
