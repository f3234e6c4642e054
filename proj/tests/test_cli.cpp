#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "siftcat/io.hpp"

using namespace siftcat;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = SIFTCAT_CORPUS_DIR;

struct CliRun {
  int code;
  std::string out;
};

// Runs the command-line tool, capturing stdout and the exit status.
CliRun cli(const std::string& args) {
  const std::string cmd = std::string(SIFTCAT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "siftcat_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<fs::path> files(const char* sub) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(kCorpus / sub)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Corpus, SerializeParseIsIdentity) {
  std::size_t n = 0;
  for (const char* sub : {"shapes", "bases", "diagrams", "presheaves"})
    for (const auto& p : files(sub)) {
      const std::string text = read(p);
      Json doc = parse_json(text);
      Json again;
      const std::string kind = document_kind(doc);
      if (kind == "category") again = category_to_json(category_from_json(doc));
      else if (kind == "diagram") again = diagram_to_json(diagram_from_json(doc));
      else if (kind == "presheaf") again = presheaf_to_json(presheaf_from_json(doc));
      EXPECT_EQ(canonical_dump(again), text) << p;
      ++n;
    }
  EXPECT_GT(n, 250u);
}

TEST(Cli, ClassifyWalkingArrow) {
  CliRun r = cli("classify " + (kCorpus / "shapes/chain-2.json").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sifted: true"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("filtered: true"), std::string::npos);
  EXPECT_NE(r.out.find("has_pullbacks: true"), std::string::npos);
  CliRun z = cli("classify " + (kCorpus / "bases/cyclic-2.json").string());
  EXPECT_EQ(z.code, 0);
  EXPECT_NE(z.out.find("sifted: false"), std::string::npos) << z.out;
}

TEST(Cli, DecomposeThenCheckOnLattices) {
  std::size_t n = 0;
  for (const auto& p : files("diagrams")) {
    const std::string name = p.stem().string();
    if (name.rfind("lattice-", 0) != 0 && name.rfind("diamond", 0) != 0 && name.rfind("pentagon", 0) != 0) continue;
    const fs::path cert = scratch(name + ".cert.json");
    ASSERT_EQ(cli("decompose " + p.string() + " --out " + cert.string()).code, 0) << p;
    CliRun check = cli("check " + cert.string());
    EXPECT_EQ(check.code, 0) << check.out;
    EXPECT_NE(check.out.find("verified"), std::string::npos);
    CliRun v = cli("validate " + cert.string());
    EXPECT_NE(v.out.find("canonical: true"), std::string::npos) << v.out;
    ++n;
  }
  EXPECT_GE(n, 50u);
}

TEST(Cli, CorruptedConnectionIsNamed) {
  const fs::path cert = scratch("chain.cert.json");
  Json doc;
  bool corrupted = false;
  for (const auto& p : files("diagrams")) {
    if (corrupted || p.stem().string().rfind("chain-3", 0) != 0) continue;
    ASSERT_EQ(cli("decompose " + p.string() + " --out " + cert.string()).code, 0);
    doc = load_json(cert);
    for (auto& k : doc["connections"]) {
      const std::size_t to = k["to"];
      if (!corrupted && k["from"] != k["to"] && doc["stages"][to]["value"].size() > 1) {
        k["function"][0] = 1 - k["function"][0].get<std::size_t>();
        corrupted = true;
      }
    }
  }
  ASSERT_TRUE(corrupted);
  save_text(cert, canonical_dump(doc));
  CliRun r = cli("check " + cert.string());
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("connection"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("stage U"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes) {
  const fs::path bad = scratch("bad.json");
  save_text(bad, "{\"kind\": ");
  EXPECT_EQ(cli("validate " + bad.string()).code, 5);
  const fs::path unknown = scratch("unknown.json");
  save_text(unknown, "{\"kind\": \"nothing\"}\n");
  EXPECT_EQ(cli("validate " + unknown.string()).code, 2);
  // Not sifted: the discrete category on two objects.
  const fs::path two = scratch("two.json");
  save_text(two, canonical_dump(Json{{"kind", "diagram"},
                                     {"shape", {{"kind", "category"},
                                                {"objects", {"a", "b"}},
                                                {"morphisms", Json::array()},
                                                {"compose", Json::array()}}},
                                     {"sets", {{"a", {"x"}}, {"b", {"y"}}}},
                                     {"maps", Json::object()}}));
  EXPECT_EQ(cli("validate " + two.string()).code, 0);
  EXPECT_EQ(cli("decompose " + two.string()).code, 2);
  EXPECT_EQ(cli("decompose " + (kCorpus / "diagrams/diamond-3.json").string() + " --max-stages 1").code, 3);
  EXPECT_EQ(cli("exactness").code, 2);  // seed is required
  EXPECT_EQ(cli("rec " + (kCorpus / "bases/arrow.json").string() + " --depth 2").code, 0);
}

TEST(Cli, ExactnessIsDeterministic) {
  const fs::path a = scratch("ex-a.json"), b = scratch("ex-b.json");
  CliRun r = cli("exactness --seed 9 --samples 200 --out " + a.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(cli("exactness --seed 9 --samples 200 --out " + b.string()).code, 0);
  EXPECT_EQ(read(a), read(b));
  EXPECT_TRUE(load_json(a)["ok"].get<bool>());
}
