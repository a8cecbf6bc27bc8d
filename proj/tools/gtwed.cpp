#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "gtwed/cli.hpp"

int main(int argc, char** argv) {
  using gtwed::cli::Mode;
  gtwed::cli::RunConfig cfg;

  CLI::App app{"Generalized time warp edit distance"};
  const std::map<std::string, Mode> modes{
      {"pair", Mode::pair}, {"matrix", Mode::matrix}, {"knn", Mode::knn}, {"audit", Mode::audit}};
  app.add_option("--mode", cfg.mode, "pair | matrix | knn | audit")
      ->required()
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--input", cfg.input, "dataset (.jsonl or .csv)");
  app.add_option("--train", cfg.train, "training dataset for knn");
  app.add_option("--test", cfg.test, "test dataset for knn");
  app.add_option("--output", cfg.output, "output file (default: stdout)");
  app.add_option("--ids", cfg.ids, "two sequence ids for pair mode")->delimiter(',');
  app.add_option("--metric", cfg.metric, "euclidean | manhattan | minkowski:<p> | hamming | discrete");
  app.add_option("--time-metric", cfg.time_metric, "absolute-difference");
  app.add_option("--transform", cfg.transform, "identity | capped:<alpha>:<tau> | satexp:<alpha>:<tau>");
  app.add_option("--lambda", cfg.lambda, "gap penalty (>= 0)");
  app.add_option("--gamma", cfg.gamma, "stiffness (> 0)");
  app.add_flag("--rolling", cfg.rolling, "use the two-row evaluation");
  app.add_option("--seed", cfg.seed, "audit RNG seed");
  app.add_option("--triples", cfg.triples, "audit sample count");
  app.add_option("--k", cfg.k, "neighbours for knn");
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gtwed::cli::kExitUsage;
  }
  return gtwed::cli::dispatch(cfg, std::cout, std::cerr);
}
