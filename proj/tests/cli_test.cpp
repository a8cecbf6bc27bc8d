#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>

#include "gtwed/cli.hpp"
#include "gtwed/io.hpp"
#include "support.hpp"

namespace gtwed {
namespace {

using cli::Mode;
using cli::RunConfig;
using testing::TempDir;

constexpr const char* kPairData =
    R"({"id":"s1","label":"x","t":[1,2],"values":[[0],[2]]})" "\n"
    R"({"id":"s2","label":"y","t":[1],"values":[[0]]})" "\n";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_inprocess(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = cli::dispatch(cfg, out, err);
  return {code, out.str(), err.str()};
}

Run run_binary(const TempDir& dir, const std::string& args) {
  const auto out = dir.path("stdout.txt");
  const auto err = dir.path("stderr.txt");
  const std::string cmd = std::string(GTWED_CLI_PATH) + " " + args + " > " + out + " 2> " + err;
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), testing::slurp(out), testing::slurp(err)};
}

TEST(CmdPair, IdentityPrintsZero) {
  TempDir dir;
  RunConfig cfg;
  cfg.input = dir.file("d.jsonl", kPairData);
  cfg.ids = {"s1", "s1"};
  const auto r = run_inprocess(cfg);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.000000000000\n");
}

TEST(CmdPair, OracleCertifiedInstance) {
  TempDir dir;
  const auto input = dir.file("d.jsonl", kPairData);
  const auto plain = run_binary(dir, "--mode pair --input " + input + " --ids s1,s2 --lambda 1 --gamma 1");
  EXPECT_EQ(plain.code, 0) << plain.err;
  EXPECT_EQ(plain.out, "4.000000000000\n");
  const auto rolled = run_binary(dir, "--mode pair --input " + input + " --ids s1 --ids s2 --rolling");
  EXPECT_EQ(rolled.out, plain.out);
}

TEST(CmdPair, UnknownIdIsADataError) {
  TempDir dir;
  const auto input = dir.file("d.jsonl", kPairData);
  const auto r = run_binary(dir, "--mode pair --input " + input + " --ids s1,zzz");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unknown sequence id 'zzz'"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(CmdPair, ValidationFailureIsADataError) {
  TempDir dir;
  const auto input = dir.file("d.jsonl", R"({"id":"a","t":[2,1],"values":[[0],[1]]})" "\n");
  const auto r = run_binary(dir, "--mode pair --input " + input + " --ids a,a");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("non-increasing"), std::string::npos);
}

TEST(CmdPair, BadFlagsAreUsageErrors) {
  TempDir dir;
  const auto input = dir.file("d.jsonl", kPairData);
  EXPECT_EQ(run_binary(dir, "--mode pair --input " + input + " --ids s1,s2 --bogus").code, 1);
  EXPECT_EQ(run_binary(dir, "--mode nope").code, 1);
  EXPECT_EQ(run_binary(dir, "--input " + input).code, 1);
  EXPECT_EQ(run_binary(dir, "--mode pair --input " + input + " --ids s1").code, 1);
  EXPECT_EQ(run_binary(dir, "--mode pair --input " + input + " --ids s1,s2 --lambda -1").code, 1);
  EXPECT_EQ(run_binary(dir, "--mode pair --input " + input + " --ids s1,s2 --gamma 0").code, 1);
  EXPECT_EQ(run_binary(dir, "--mode pair --input " + input + " --ids s1,s2 --metric cosine").code, 1);
  EXPECT_EQ(run_binary(dir, "--mode pair --input " + input + " --ids s1,s2 --lambda abc").code, 1);
}

TEST(CmdPair, MissingInputFileIsADataError) {
  TempDir dir;
  EXPECT_EQ(run_binary(dir, "--mode pair --input " + dir.path("nope.jsonl") + " --ids a,b").code, 2);
}

TEST(CmdMatrix, SingleSequence) {
  TempDir dir;
  RunConfig cfg;
  cfg.mode = Mode::matrix;
  cfg.input = dir.file("d.csv", "only,a,1,2,3\n");
  const auto r = run_inprocess(cfg);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "id,only\nonly,0.000000000000\n");
}

TEST(CmdMatrix, DerivedInstanceWrittenToFile) {
  TempDir dir;
  const auto input = dir.file("d.jsonl", kPairData);
  const auto output = dir.path("m.csv");
  const auto r = run_binary(dir, "--mode matrix --input " + input + " --output " + output);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(testing::slurp(output),
            "id,s1,s2\n"
            "s1,0.000000000000,4.000000000000\n"
            "s2,4.000000000000,0.000000000000\n");
}

TEST(CmdMatrix, SymmetricZeroDiagonalAndReproducible) {
  TempDir dir;
  random::Rng rng(5);
  std::vector<TimedSequence> data;
  for (int k = 0; k < 12; ++k) data.push_back(random::random_sequence(rng, random::SequenceShape{}, "r" + std::to_string(k)));
  std::ostringstream text;
  io::write_dataset(text, data, io::Format::jsonl);
  const auto input = dir.file("r.jsonl", text.str());

  RunConfig cfg;
  cfg.mode = Mode::matrix;
  cfg.input = input;
  cfg.transform = "satexp:1:2";
  const auto parsed = io::load_dataset(input);
  const auto m = cli::distance_matrix(parsed, cfg);
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_EQ(m[i][i], 0.0);
    for (std::size_t j = 0; j < m.size(); ++j) EXPECT_EQ(m[i][j], m[j][i]);
  }

  const auto once = run_binary(dir, "--mode matrix --input " + input + " --transform satexp:1:2 --threads 4");
  const auto twice = run_binary(dir, "--mode matrix --input " + input + " --transform satexp:1:2 --threads 1");
  const auto rolled = run_binary(dir, "--mode matrix --input " + input + " --transform satexp:1:2 --rolling");
  EXPECT_EQ(once.code, 0);
  EXPECT_EQ(once.out, twice.out);
  EXPECT_EQ(once.out, rolled.out);
  std::ostringstream expected;
  cli::write_matrix(expected, parsed, m);
  EXPECT_EQ(once.out, expected.str());
}

TEST(CmdMatrix, UnwritableOutput) {
  TempDir dir;
  RunConfig cfg;
  cfg.mode = Mode::matrix;
  cfg.input = dir.file("d.jsonl", kPairData);
  cfg.output = dir.path("no/such/dir/m.csv");
  EXPECT_EQ(run_inprocess(cfg).code, 2);
}

// Sine-like and ramp-like clusters with small seeded jitter.
std::string clusters(std::uint64_t seed, const std::string& prefix) {
  random::Rng rng(seed);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::ostringstream csv;
  for (int k = 0; k < 5; ++k) {
    csv << prefix << "sine" << k << ",sine";
    for (int t = 0; t < 30; ++t) csv << ',' << std::sin(t * 0.4) + noise(rng);
    csv << '\n';
    csv << prefix << "ramp" << k << ",ramp";
    for (int t = 0; t < 30; ++t) csv << ',' << t / 15.0 - 1.0 + noise(rng);
    csv << '\n';
  }
  return csv.str();
}

TEST(CmdKnn, SeparatedClustersAreClassifiedPerfectly) {
  TempDir dir;
  const auto train = dir.file("train.csv", clusters(1, "tr-"));
  const auto test = dir.file("test.csv", clusters(2, "te-"));

  // Check the separation itself on the joint matrix before trusting 1-NN.
  auto joint = io::load_dataset(train);
  for (auto& s : io::load_dataset(test)) joint.push_back(std::move(s));
  RunConfig cfg;
  const auto m = cli::distance_matrix(joint, cfg);
  double max_intra = 0.0, min_inter = INFINITY;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    for (std::size_t j = i + 1; j < joint.size(); ++j) {
      if (joint[i].label() == joint[j].label()) {
        max_intra = std::max(max_intra, m[i][j]);
      } else {
        min_inter = std::min(min_inter, m[i][j]);
      }
    }
  }
  ASSERT_LT(max_intra, min_inter);

  const auto r = run_binary(dir, "--mode knn --train " + train + " --test " + test);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("te-sine0,sine,sine\n"), std::string::npos);
  EXPECT_NE(r.out.find("te-ramp4,ramp,ramp\n"), std::string::npos);
  EXPECT_NE(r.out.find("accuracy,1.000000000000\n"), std::string::npos) << r.out;
}

TEST(CmdKnn, TrainAsTestGivesPerfectAccuracy) {
  TempDir dir;
  const auto data = dir.file("d.csv", clusters(3, "") + "odd,ramp,5,-5,5\n");
  RunConfig cfg;
  cfg.mode = Mode::knn;
  cfg.train = cfg.test = data;
  const auto r = run_inprocess(cfg);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("accuracy,1.000000000000"), std::string::npos);
}

TEST(CmdKnn, SingleTrainItemDecidesEverything) {
  TempDir dir;
  RunConfig cfg;
  cfg.mode = Mode::knn;
  cfg.train = dir.file("train.csv", "t,only,0,0,0\n");
  cfg.test = dir.file("test.csv", "a,x,1,2\nb,only,9\n");
  const auto r = run_inprocess(cfg);
  EXPECT_EQ(r.out, "a,only,x\nb,only,only\naccuracy,0.500000000000\n");
}

TEST(CmdKnn, TiesGoToSmallestId) {
  TempDir dir;
  RunConfig cfg;
  cfg.mode = Mode::knn;
  // Both training sequences sit at the same distance from the query.
  cfg.train = dir.file("train.csv", "zeta,z,1\nalpha,a,-1\n");
  cfg.test = dir.file("test.csv", "q,a,0\n");
  EXPECT_EQ(run_inprocess(cfg).out, "q,a,a\naccuracy,1.000000000000\n");
}

TEST(CmdKnn, MajorityVoteWithLargerK) {
  TempDir dir;
  RunConfig cfg;
  cfg.mode = Mode::knn;
  cfg.k = 3;
  cfg.train = dir.file("train.csv", "n1,near,0\nf1,far,5\nf2,far,5.5\n");
  cfg.test = dir.file("test.csv", "q,far,0.1\n");
  EXPECT_EQ(run_inprocess(cfg).out, "q,far,far\naccuracy,1.000000000000\n");
  cfg.k = 1;
  EXPECT_EQ(run_inprocess(cfg).out, "q,near,far\naccuracy,0.000000000000\n");
}

TEST(CmdKnn, Errors) {
  TempDir dir;
  RunConfig cfg;
  cfg.mode = Mode::knn;
  cfg.train = dir.file("train.csv", "t,,0\n");
  cfg.test = dir.file("test.csv", "a,x,1\n");
  EXPECT_EQ(run_inprocess(cfg).code, 2);
  cfg.train = dir.file("empty.csv", "");
  EXPECT_EQ(run_inprocess(cfg).code, 2);
  cfg.k = 0;
  EXPECT_EQ(run_inprocess(cfg).code, 1);
}

TEST(CmdAudit, CleanRunPasses) {
  TempDir dir;
  const auto r = run_binary(dir, "--mode audit --lambda 1 --gamma 1 --transform identity --triples 1000 --seed 7");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("sequence distance: checks=10000 violations=0"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("result: PASS"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST(CmdAudit, SymbolMetricsPass) {
  RunConfig cfg;
  cfg.mode = Mode::audit;
  cfg.triples = 200;
  for (const char* metric : {"hamming", "discrete"}) {
    cfg.metric = metric;
    cfg.transform = "capped:1:0.5";
    EXPECT_EQ(run_inprocess(cfg).code, 0) << metric;
  }
}

TEST(CmdAudit, ZeroLambdaWarns) {
  RunConfig cfg;
  cfg.mode = Mode::audit;
  cfg.lambda = 0.0;
  cfg.triples = 50;
  const auto r = run_inprocess(cfg);
  EXPECT_NE(r.err.find("warning: lambda = 0"), std::string::npos);
}

TEST(CmdAudit, BrokenTransformReportsWitnesses) {
  RunConfig cfg;
  cfg.mode = Mode::audit;
  cfg.triples = 1000;
  cfg.seed = 3;
  const LocalCostModel broken(ObservationMetric::euclidean(), TimeMetric::absolute_difference(), 1.0,
                              Transform::custom([](double x) { return x * x; }, "square"));
  std::ostringstream out, err;
  const int code = cli::run_audit(cfg, broken, out, err);
  EXPECT_EQ(code, 2);
  const auto text = out.str();
  EXPECT_NE(text.find("transform square: checks="), std::string::npos);
  EXPECT_NE(text.find("not subadditive"), std::string::npos);
  EXPECT_NE(text.find("witness: triangle:"), std::string::npos) << text;
  EXPECT_NE(text.find("result: FAIL"), std::string::npos);
}

}  // namespace
}  // namespace gtwed
