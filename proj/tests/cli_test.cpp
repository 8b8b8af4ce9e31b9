// Copyright 2026 The FCD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fcd/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include "fcd/corpus.hpp"
#include "fcd/errors.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

namespace fcd {
namespace {

using testing::slurp;
using testing::TempDir;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fcd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kHamlet = "To be, or not to be, that is the question. To be or not.";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_.write("texts/a.txt", kHamlet);
    dir_.write("texts/b.txt", kHamlet);
    dir_.write("texts/c.txt", "Completely different words appear here, nothing shared.");
    manifest_ = dir_.write("corpus.tsv",
                           "# test corpus\n"
                           "rule=english\n"
                           "dictionaries=dicts\n"
                           "texts/a.txt\ta\tshakespeare\ten\n"
                           "texts/b.txt\tb\tshakespeare\ten\n"
                           "texts/c.txt\tc\tanon\ten\n");
  }

  std::string path(const std::string& name) const { return (dir_.path() / name).string(); }

  TempDir dir_;
  std::filesystem::path manifest_;
};

TEST_F(CliTest, BuildWritesDictionariesAndWarnsOnShortTexts) {
  const auto r = run_cli({"build", manifest_.string(), "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("built a: tokens=14"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("warning: a: only 14 tokens"), std::string::npos);
  const auto d = load_dictionary(dir_.path() / "dicts" / "a.fcd");
  EXPECT_EQ(d.rule(), LanguageRule::kEnglish);
  EXPECT_EQ(d.source_id(), "a");
  EXPECT_TRUE(d.contains("is"));  // too short for the suffix rule
}

TEST_F(CliTest, RebuildSkipsUpToDateUnlessForced) {
  ASSERT_EQ(run_cli({"build", manifest_.string()}).code, 0);
  const auto bytes = slurp(dir_.path() / "dicts" / "a.fcd");
  auto r = run_cli({"build", manifest_.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("skipped a (up to date)"), std::string::npos) << r.err;
  r = run_cli({"build", manifest_.string(), "--force"});
  EXPECT_NE(r.err.find("built a"), std::string::npos);
  EXPECT_EQ(slurp(dir_.path() / "dicts" / "a.fcd"), bytes);
  // A different rule invalidates the stored dictionaries.
  r = run_cli({"build", manifest_.string(), "--rule", "none"});
  EXPECT_NE(r.err.find("built a"), std::string::npos);
}

TEST_F(CliTest, BuildFailsOnUnreadableDocumentUnlessKeepGoing) {
  const auto bad = dir_.write("bad.tsv", "texts/a.txt\ta\tx\ten\nmissing.txt\tm\tx\ten\n");
  auto r = run_cli({"build", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'m'"), std::string::npos) << r.err;
  r = run_cli({"build", bad.string(), "--keep-going", "--force"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("built a"), std::string::npos);
  EXPECT_NE(r.err.find("failed m"), std::string::npos);
}

TEST_F(CliTest, BuildRejectsInvalidUtf8WithFormatCode) {
  dir_.write("texts/bin.txt", "abc\xff");
  const auto m = dir_.write("bin.tsv", "texts/bin.txt\tbin\t-\t-\n");
  EXPECT_EQ(run_cli({"build", m.string()}).code, 3);
}

TEST_F(CliTest, MatrixOfIdenticalDocuments) {
  ASSERT_EQ(run_cli({"build", manifest_.string()}).code, 0);
  const auto r = run_cli({"matrix", manifest_.string(), "--measure", "fcd", "--timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row_a;
  std::getline(in, header);
  std::getline(in, row_a);
  EXPECT_EQ(header, "id,a,b,c");
  EXPECT_EQ(row_a, "a,0.000000,0.000000,1.000000");
  EXPECT_NE(r.err.find("timing: load dictionaries"), std::string::npos);
  EXPECT_NE(r.err.find("timing: distance matrix"), std::string::npos);
}

TEST_F(CliTest, MatrixIsByteIdenticalAcrossThreadCounts) {
  ASSERT_EQ(run_cli({"build", manifest_.string()}).code, 0);
  for (const char* measure : {"fcd", "ncd"}) {
    std::string first;
    for (const char* threads : {"1", "2", "5"}) {
      const auto out = path(std::string("m_") + measure + threads + ".csv");
      ASSERT_EQ(run_cli({"matrix", manifest_.string(), "--measure", measure,
                         "--threads", threads, "--output", out})
                    .code,
                0);
      const auto bytes = slurp(out);
      if (first.empty()) first = bytes;
      EXPECT_EQ(bytes, first);
    }
  }
}

TEST_F(CliTest, MatrixWithoutDictionariesPointsAtBuild) {
  const auto r = run_cli({"matrix", manifest_.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("fcd build"), std::string::npos) << r.err;
}

TEST_F(CliTest, AttributeQueries) {
  ASSERT_EQ(run_cli({"build", manifest_.string()}).code, 0);
  const auto q = dir_.write("q.txt", kHamlet);
  auto r = run_cli({"attribute", manifest_.string(), q.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "query\tpredicted_author\tnearest_doc\tdistance\n" + q.string() +
                       "\tshakespeare\ta\t0.000000\n");

  r = run_cli({"attribute", manifest_.string(), (dir_.path() / "dicts" / "c.fcd").string(),
               "--ranking"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\t1\tc\tanon\t0.000000\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\t3\tb\tshakespeare\t1.000000\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, AttributeNeedsAuthorLabels) {
  const auto m = dir_.write("unlabeled.tsv", "texts/a.txt\ta\t-\ten\n");
  ASSERT_EQ(run_cli({"build", m.string()}).code, 0);
  const auto r = run_cli({"attribute", m.string(), path("texts/c.txt")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("no author label"), std::string::npos);
}

TEST_F(CliTest, VerifyWithTruth) {
  ASSERT_EQ(run_cli({"build", manifest_.string()}).code, 0);
  const auto problems = dir_.write("problems.tsv",
                                   "# id lang unknown known\n"
                                   "p1\ten\ta\tb\n"
                                   "p2\ten\tc\ta,b\n");
  const auto truth = dir_.write("truth.tsv", "p1\tY\np2\tN\n");
  auto r = run_cli({"verify", manifest_.string(), problems.string(), "--truth",
                    truth.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "problem\tanswer\tknown_mean\tpool_mean\n"
            "p1\tY\t0.000000\t0.500000\n"
            "p2\tN\t1.000000\t1.000000\n"
            "accuracy\t1.000000\t2/2\n");
  r = run_cli({"verify", manifest_.string(), problems.string()});
  EXPECT_EQ(r.out.find("accuracy"), std::string::npos);
}

TEST_F(CliTest, VerifyReportsProblemIdOnBadSpec) {
  ASSERT_EQ(run_cli({"build", manifest_.string()}).code, 0);
  auto problems = dir_.write("bad.tsv", "p9\ten\ta\n");
  auto r = run_cli({"verify", manifest_.string(), problems.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("p9"), std::string::npos);
  problems = dir_.write("bad2.tsv", "p7\tgr\ta\tb\n");
  r = run_cli({"verify", manifest_.string(), problems.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("p7"), std::string::npos) << r.err;
}

TEST_F(CliTest, ClusterFromCsv) {
  const auto csv = dir_.write("m.csv",
                              "id,a,b,c,d\n"
                              "a,0,0.1,0.9,0.9\n"
                              "b,0.05,0,0.9,0.9\n"
                              "c,0.9,0.9,0,0.1\n"
                              "d,0.9,0.9,0.1,0\n");
  auto r = run_cli({"cluster", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "[matrix symmetrized as max(d(i,j), d(j,i)); average-linkage (UPGMA) tree]\n"
            "((a:0.1,b:0.1):0.8,(c:0.1,d:0.1):0.8);\n");
  const auto out = path("tree.dot");
  r = run_cli({"cluster", csv.string(), "--format", "dot", "--output", out});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(slurp(out).rfind("// matrix symmetrized", 0), 0u);
}

TEST_F(CliTest, ClusterRejectsNonSquare) {
  const auto csv = dir_.write("bad.csv", "id,a,b\na,0,1\n");
  const auto r = run_cli({"cluster", csv.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("1 rows, 2 columns"), std::string::npos) << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"matrix", manifest_.string(), "--measure", "gzip"}).code, 1);
  EXPECT_EQ(run_cli({"build", manifest_.string(), "--rule", "greek"}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({"build", path("nope.tsv")}).code, 2);
}

TEST(ManifestTest, ParsesHeaderAndDocuments) {
  std::istringstream in(
      "rule=italian\n"
      "# comment\n"
      "\n"
      "t/1.txt\tone\tdante\tit\n"
      "t/2.txt\ttwo\t-\t\n"
      "t/3.txt\tthree\n");
  const auto c = parse_manifest(in, "/base");
  EXPECT_EQ(c.rule, LanguageRule::kItalian);
  ASSERT_EQ(c.documents.size(), 3u);
  EXPECT_EQ(c.documents[0].author, "dante");
  EXPECT_EQ(c.documents[0].language, "it");
  EXPECT_FALSE(c.documents[1].author.has_value());
  EXPECT_FALSE(c.documents[1].language.has_value());
  EXPECT_EQ(c.documents[0].text_path, std::filesystem::path("/base/t/1.txt"));
  EXPECT_EQ(c.documents[2].dictionary_path,
            std::filesystem::path("/base/dictionaries/three.fcd"));
  EXPECT_EQ(c.find("two"), &c.documents[1]);
  EXPECT_EQ(c.find("zzz"), nullptr);
}

TEST(ManifestTest, RejectsBadInput) {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_manifest(in, "/b");
  };
  EXPECT_THROW(parse("rule=klingon\n"), ConfigError);
  EXPECT_THROW(parse("colour=red\n"), ConfigError);
  EXPECT_THROW(parse("a.txt\tx\na.txt\tx\n"), ConfigError);
  EXPECT_THROW(parse("a.txt\t../x\n"), ConfigError);
  EXPECT_THROW(parse("a.txt\t\n"), ConfigError);
  EXPECT_THROW(parse("a.txt\tx\ty\tz\tw\n"), ConfigError);
  try {
    parse("a.txt\tx\nb.txt\tx\n");
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
  }
}

}  // namespace
}  // namespace fcd
