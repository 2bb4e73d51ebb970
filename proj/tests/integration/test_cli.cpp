#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "hcdeval/csv.hpp"
#include "pipeline.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using testsupport::data_path;
using testsupport::run_command;
using testsupport::shell_quote;
using testsupport::slurp;

namespace {

const std::string kCli = HCDEVAL_CLI;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(HCDEVAL_SCRATCH) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Runs the tool with stdout and stderr captured into `log`.
int cli(const std::string& args, const fs::path& log) {
  return run_command(shell_quote(kCli) + " " + args + " > " + shell_quote(log.string()) + " 2>&1");
}

std::string coreutils_sha256(const fs::path& file) {
  const std::string cmd = "sha256sum " + shell_quote(file.string());
  FILE* p = ::popen(cmd.c_str(), "r");
  if (p == nullptr) return {};
  std::array<char, 65> buf{};
  const std::size_t got = std::fread(buf.data(), 1, 64, p);
  ::pclose(p);
  return std::string(buf.data(), got);
}

}  // namespace

TEST(Cli, HelpExitsZero) {
  const auto dir = scratch("help");
  EXPECT_EQ(cli("hcd --help", dir / "log"), 0);
  EXPECT_NE(slurp((dir / "log").string()).find("--corpus"), std::string::npos);
}

TEST(Cli, MissingRequiredFlagIsUsageError) {
  const auto dir = scratch("usage");
  EXPECT_EQ(cli("hcd --embeddings x.emb1", dir / "log"), 2);
  EXPECT_NE(slurp((dir / "log").string()).find("--corpus"), std::string::npos);
  EXPECT_EQ(cli("no-such-command", dir / "log"), 2);
}

TEST(Cli, ValidationErrorExitsOne) {
  const auto dir = scratch("validation");
  const fs::path bad = dir / "bad.jsonl";
  {
    std::ofstream out(bad);
    out << "{\"record_id\": \"r1\"}\n";
  }
  EXPECT_EQ(cli("--out-dir " + shell_quote(dir.string()) + " hcd --corpus " + shell_quote(bad.string()) +
                    " --embeddings " + shell_quote(data_path("fixture/mini8.emb1")),
                dir / "log"),
            1);
  EXPECT_NE(slurp((dir / "log").string()).find("error:"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "hcd.csv"));
}

TEST(Cli, PipelineMatchesGoldenOutputs) {
  const auto out = scratch("golden");
  ASSERT_EQ(testsupport::run_pipeline(kCli, HCDEVAL_TEST_DATA, out.string(), 1), 0)
      << slurp((out / "log.txt").string());
  const fs::path golden = data_path("golden");
  const bool update = std::getenv("HCDEVAL_UPDATE_GOLDEN") != nullptr;
  for (const auto& f : testsupport::pipeline_outputs()) {
    if (update) {
      fs::create_directories(golden);
      fs::copy_file(out / f, golden / f, fs::copy_options::overwrite_existing);
    }
    EXPECT_EQ(slurp((out / f).string()), slurp((golden / f).string())) << f;
  }
}

TEST(Cli, GoldenHcdAgreesWithReferenceValues) {
  const auto golden = hcdeval::io::load_csv(data_path("golden/hcd.csv"));
  const auto reference = hcdeval::io::load_csv(data_path("fixture/hcd_reference.csv"));
  auto col = [](const hcdeval::io::CsvTable& t, const std::string& name) {
    const auto c = t.column(name);
    if (!c) ADD_FAILURE() << "no column " << name;
    return c.value_or(0);
  };
  const std::vector<std::string> keys = {"image_id", "task", "embedder_id", "model_name", "prompt_type"};
  std::map<std::string, double> want;
  for (const auto& row : reference.rows) {
    std::string k;
    for (const auto& c : keys) k += row[col(reference, c)] + "|";
    want[k] = std::stod(row[col(reference, "hcd")]);
  }
  std::size_t matched = 0;
  for (const auto& row : golden.rows) {
    std::string k;
    for (const auto& c : keys) k += row[col(golden, c)] + "|";
    const auto it = want.find(k);
    if (it == want.end()) continue;
    // Tables carry nine significant digits.
    EXPECT_NEAR(std::stod(row[col(golden, "hcd")]), it->second, 1e-8 * std::max(1.0, std::abs(it->second))) << k;
    ++matched;
  }
  EXPECT_EQ(matched, want.size());
}

TEST(Cli, OutputsDoNotDependOnThreadCount) {
  const auto one = scratch("threads1");
  const auto eight = scratch("threads8");
  ASSERT_EQ(testsupport::run_pipeline(kCli, HCDEVAL_TEST_DATA, one.string(), 1), 0);
  ASSERT_EQ(testsupport::run_pipeline(kCli, HCDEVAL_TEST_DATA, eight.string(), 8), 0);
  for (const auto& f : testsupport::pipeline_outputs())
    EXPECT_EQ(slurp((one / f).string()), slurp((eight / f).string())) << f;
}

TEST(Cli, ManifestDigestsMatchFiles) {
  const auto out = scratch("manifests");
  ASSERT_EQ(testsupport::run_pipeline(kCli, HCDEVAL_TEST_DATA, out.string(), 2, true), 0)
      << slurp((out / "log.txt").string());
  for (const auto& f : testsupport::pipeline_outputs()) {
    const fs::path m = out / (f + ".manifest.json");
    ASSERT_TRUE(fs::exists(m)) << m;
    const auto j = nlohmann::json::parse(slurp(m.string()));
    EXPECT_EQ(j["toolkit"], "hcdeval");
    EXPECT_EQ(j["output"]["sha256"].get<std::string>(), coreutils_sha256(out / f)) << f;
    for (const auto& in : j["inputs"]) {
      fs::path p = in["path"].get<std::string>();
      if (p.is_relative()) p = out / p;
      EXPECT_EQ(in["sha256"].get<std::string>(), coreutils_sha256(p)) << p;
    }
  }
}
