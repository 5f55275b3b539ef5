#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include "dahp/analysis.hpp"
#include "dahp/cli.hpp"
#include "dahp/io.hpp"
#include "dahp/profile.hpp"
#include "fixtures.hpp"

namespace dahp {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("dahp_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return runCli(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, VerifyDiamond) {
  io::writeFile(path("h2.dhg"), io::writeDirectedHypergraph(fixtures::diamond()));
  io::writeFile(path("good.part"), "0\n0\n1\n1\n");
  io::writeFile(path("cyclic.part"), "0\n1\n1\n0\n");
  io::writeFile(path("skewed.part"), "0\n1\n1\n1\n");

  EXPECT_EQ(run({"verify", path("h2.dhg"), path("good.part"), "-k", "2"}), 0);
  EXPECT_NE(out_.str().find("km1=2"), std::string::npos);
  EXPECT_EQ(run({"verify", path("h2.dhg"), path("cyclic.part"), "-k", "2"}), 1);
  EXPECT_NE(out_.str().find("acyclic=no"), std::string::npos);
  EXPECT_EQ(run({"verify", path("h2.dhg"), path("skewed.part"), "-k", "2"}), 1);
  EXPECT_EQ(run({"verify", path("h2.dhg"), path("good.part"), "-k", "1"}), 2);
}

TEST_F(CliTest, PartitionArguments) {
  io::writeFile(path("h2.dhg"), io::writeDirectedHypergraph(fixtures::diamond()));
  EXPECT_EQ(run({"partition", path("h2.dhg"), "-k", "0"}), 2);
  EXPECT_NE(err_.str().find("-k"), std::string::npos);
  EXPECT_EQ(run({"partition", path("h2.dhg"), "-k", "2", "--mode", "bogus"}), 2);
  EXPECT_EQ(run({"partition", path("missing.dhg"), "-k", "2"}), 2);
  EXPECT_EQ(run({"partition", path("h2.dhg"), "-k", "5"}), 2);
  EXPECT_EQ(run({}), 2);

  for (const char* mode : {"multilevel", "memetic", "toporb", "topokway"}) {
    EXPECT_EQ(run({"partition", path("h2.dhg"), "-k", "2", "--mode", mode, "--max-generations", "3", "-o",
                   path("out.part")}),
              0)
        << mode << ": " << err_.str();
    const auto a = io::readPartitionFile(io::readFile(path("out.part")), 4, 2);
    EXPECT_TRUE(verifyPartition(fixtures::diamond(), a, 2, 0.03).acyclic);
  }
}

TEST_F(CliTest, MalformedInputExitsTwo) {
  io::writeFile(path("bad.dhg"), "1 3\n0 2 3\n");
  EXPECT_EQ(run({"partition", path("bad.dhg"), "-k", "2"}), 2);
  EXPECT_NE(err_.str().find("line 2"), std::string::npos);
}

TEST_F(CliTest, ConvertBreaksCycle) {
  io::writeFile(path("ring.dag"), "3 3\n1 2\n2 3\n3 1\n");
  EXPECT_EQ(run({"convert", "--row-net", path("ring.dag"), "-o", path("ring.dhg")}), 0);
  EXPECT_NE(err_.str().find("1 edge skipped"), std::string::npos);
  const auto hg = io::parseDirectedHypergraph(io::readFile(path("ring.dhg")));
  EXPECT_EQ(hg.numVertices(), 3u);
  EXPECT_EQ(hg.numNets(), 2u);
  EXPECT_TRUE(isAcyclic(hg));
}

TEST_F(CliTest, BenchAndProfile) {
  io::writeFile(path("h2.dhg"), io::writeDirectedHypergraph(fixtures::diamond()));
  io::writeFile(path("chain.dhg"), io::writeDirectedHypergraph(fixtures::path(10)));
  io::writeFile(path("manifest.csv"),
                "instance,mode,k,seed,epsilon,max_generations\n"
                "h2.dhg,multilevel,2,1,,\n"
                "chain.dhg,topokway,2,1,,\n"
                "h2.dhg,topokway,2,1,,\n"
                "chain.dhg,multilevel,2,1,0.1,\n"
                "chain.dhg,memetic,2,1,,3\n"
                "h2.dhg,memetic,2,1,,3\n");
  ASSERT_EQ(run({"bench", path("manifest.csv"), "-o", path("results.csv")}), 0) << err_.str();
  const auto records = parseResultsCsv(io::readFile(path("results.csv")));
  ASSERT_EQ(records.size(), 6u);
  EXPECT_TRUE(std::is_sorted(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.instance, a.algorithm) < std::tie(b.instance, b.algorithm);
  }));
  for (const auto& r : records) {
    EXPECT_TRUE(r.acyclic);
    EXPECT_GE(r.km1, r.cut);
  }

  // Multilevel bench rows are reproducible.
  const std::string first = io::readFile(path("results.csv"));
  ASSERT_EQ(run({"bench", path("manifest.csv"), "-o", path("again.csv")}), 0);
  const auto again = parseResultsCsv(io::readFile(path("again.csv")));
  for (std::size_t i = 0; i < records.size(); ++i) EXPECT_DOUBLE_EQ(again[i].km1, records[i].km1);

  ASSERT_EQ(run({"profile", path("results.csv"), "-o", path("profile.csv")}), 0) << err_.str();
  const std::string profile = io::readFile(path("profile.csv"));
  EXPECT_EQ(profile.substr(0, profile.find('\n')), "tau,algorithm,fraction");
  EXPECT_NE(profile.find("1.00,multilevel,"), std::string::npos);

  io::writeFile(path("bad_manifest.csv"), "instance,mode\nh2.dhg,multilevel\n");
  EXPECT_EQ(run({"bench", path("bad_manifest.csv"), "-o", path("x.csv")}), 2);
  (void)first;
}

TEST_F(CliTest, ProfileMissingCell) {
  io::writeFile(path("results.csv"),
                "instance,algorithm,k,seed,km1,cut,seconds,acyclic,balanced\n"
                "a,A,2,0,10,10,0.1,1,1\n"
                "b,A,2,0,20,20,0.1,1,1\n"
                "a,B,2,0,10,10,0.1,1,1\n");
  EXPECT_EQ(run({"profile", path("results.csv"), "-o", path("profile.csv")}), 2);
  EXPECT_NE(err_.str().find("MissingCell"), std::string::npos);
}

TEST(CliBinary, ExitCodes) {
  const std::string bin = DAHP_CLI_PATH;
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " --help > /dev/null").c_str())), 0);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " partition /nonexistent.dhg -k 2 2> /dev/null").c_str())), 2);
}

ResultRecord record(std::string instance, std::string algorithm, Weight km1, std::uint64_t seed = 0) {
  ResultRecord r;
  r.instance = std::move(instance);
  r.algorithm = std::move(algorithm);
  r.k = 2;
  r.seed = seed;
  r.km1 = km1;
  r.cut = km1;
  r.acyclic = r.balanced = true;
  return r;
}

double fractionAt(const std::vector<ProfilePoint>& points, const std::string& algorithm, double tau) {
  for (const auto& p : points) {
    if (p.algorithm == algorithm && std::abs(p.tau - tau) < 1e-12) return p.fraction;
  }
  ADD_FAILURE() << "no point " << algorithm << " " << tau;
  return -1;
}

TEST(Profile, ABFixture) {
  const std::vector<ResultRecord> records = {record("i1", "A", 10), record("i2", "A", 20), record("i1", "B", 10),
                                             record("i2", "B", 30)};
  const auto points = performanceProfile(records, {1.0, 1.5});
  EXPECT_DOUBLE_EQ(fractionAt(points, "A", 1.0), 1.0);
  EXPECT_DOUBLE_EQ(fractionAt(points, "B", 1.0), 0.5);
  EXPECT_DOUBLE_EQ(fractionAt(points, "A", 1.5), 1.0);
  EXPECT_DOUBLE_EQ(fractionAt(points, "B", 1.5), 1.0);
}

TEST(Profile, SingleAlgorithmAndZeros) {
  const auto single = performanceProfile({record("i1", "A", 5), record("i2", "A", 7)});
  for (const auto& p : single) EXPECT_DOUBLE_EQ(p.fraction, 1.0);

  const auto zeros = performanceProfile({record("i1", "A", 0), record("i1", "B", 1)}, {1.0, 10.0});
  EXPECT_DOUBLE_EQ(fractionAt(zeros, "A", 10.0), 1.0);
  EXPECT_DOUBLE_EQ(fractionAt(zeros, "B", 10.0), 0.0);
}

TEST(Profile, MinOverSeedsAndMissingCell) {
  const auto points =
      performanceProfile({record("i1", "A", 30, 0), record("i1", "A", 10, 1), record("i1", "B", 20)}, {1.0});
  EXPECT_DOUBLE_EQ(fractionAt(points, "A", 1.0), 1.0);
  EXPECT_DOUBLE_EQ(fractionAt(points, "B", 1.0), 0.0);
  EXPECT_THROW(performanceProfile({record("i1", "A", 1), record("i2", "B", 1)}), Error);
}

TEST(Profile, MonotoneOnRandomRecords) {
  std::mt19937_64 rng(71);
  const auto taus = defaultTauGrid();
  ASSERT_EQ(taus.size(), 181u);
  EXPECT_DOUBLE_EQ(taus.front(), 1.0);
  EXPECT_DOUBLE_EQ(taus.back(), 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ResultRecord> records;
    const int instances = std::uniform_int_distribution<int>(1, 8)(rng);
    for (const char* algorithm : {"A", "B", "C"}) {
      for (int i = 0; i < instances; ++i) {
        records.push_back(record("i" + std::to_string(i), algorithm,
                                 std::uniform_int_distribution<int>(1, 10)(rng)));
      }
    }
    const auto points = performanceProfile(records, taus);
    ASSERT_EQ(points.size(), 3 * taus.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      EXPECT_GE(points[i].fraction, 0.0);
      EXPECT_LE(points[i].fraction, 1.0);
      if (i % taus.size() != 0) {
        EXPECT_GE(points[i].fraction, points[i - 1].fraction);
      }
    }
    for (const char* algorithm : {"A", "B", "C"}) EXPECT_DOUBLE_EQ(fractionAt(points, algorithm, 10.0), 1.0);
  }
}

TEST(Profile, CsvRoundTrip) {
  const std::vector<ResultRecord> records = {record("x", "multilevel", 12.5), record("y", "toporb", 3)};
  const auto back = parseResultsCsv(writeResultsCsv(records));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].instance, "x");
  EXPECT_DOUBLE_EQ(back[0].km1, 12.5);
  EXPECT_EQ(back[1].algorithm, "toporb");
  EXPECT_THROW(parseResultsCsv("wrong,header\n"), MalformedInput);
  EXPECT_EQ(writeProfileCsv({{1.0, "A", 0.5}}), "tau,algorithm,fraction\n1.00,A,0.500000\n");
}

}  // namespace
}  // namespace dahp
