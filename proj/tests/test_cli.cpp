#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(BLOWUP_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, sep);) out.push_back(cell);
  return out;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) rows.push_back(split(line, ','));
  return rows;
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("scan --n 25..70").code, 0);
  EXPECT_EQ(run("scan --n 5").code, 2);
  EXPECT_EQ(run("scan --bogus").code, 2);
  EXPECT_EQ(run("scan --tc 0.5").code, 2);
  EXPECT_EQ(run("nosuch").code, 2);
  EXPECT_EQ(run("moments --m 3").code, 2);
  // Tightening a tolerance past what the quadrature resolves reports a failed check.
  EXPECT_EQ(run("energy-profile --eps 1 --rel-tol 1e-30").code, 1);
}

TEST(Cli, ScanFindsCriticalDimension) {
  const CliRun r = run("scan --n 60..70 --tc -1");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 12u);
  const auto& head = rows[0];
  const auto col = std::find(head.begin(), head.end(), "certified") - head.begin();
  ASSERT_LT(col, static_cast<long>(head.size()));
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_EQ(rows[i][col], std::stoi(rows[i][0]) >= 62 ? "true" : "false") << rows[i][0];
}

TEST(Cli, JsonMirrorsCsvColumns) {
  for (const char* cmd : {"scan --n 62..63", "cq", "hessian", "moments", "energy-profile --eps 1",
                          "bubble-check --n 13"}) {
    const CliRun c = run(std::string(cmd));
    const CliRun j = run(std::string(cmd) + " --format json");
    ASSERT_EQ(c.code, 0) << cmd;
    ASSERT_EQ(j.code, 0) << cmd;
    const auto header = csv(c.out).at(0);
    const auto doc = nlohmann::json::parse(j.out);
    ASSERT_TRUE(doc.contains("rows")) << cmd;
    ASSERT_FALSE(doc["rows"].empty()) << cmd;
    for (const auto& name : header) EXPECT_TRUE(doc["rows"][0].contains(name)) << cmd << " " << name;
    EXPECT_TRUE(doc["passed"].get<bool>());
  }
}

TEST(Cli, NonuniqJsonReport) {
  const CliRun r = run("nonuniq --format json");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  for (const char* key : {"spec", "threshold_k", "I1_at_threshold", "Sck_at_threshold", "Sc_infinity"})
    EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_GT(doc["I1_at_threshold"].get<double>() - doc["Sck_at_threshold"].get<double>(), 1.0);
}

TEST(Cli, ByteIdenticalReruns) {
  for (const char* cmd : {"scan", "moments --seed 7", "bubble-check --n 13 --seed 3", "hessian --format json"}) {
    const CliRun a = run(std::string(cmd) + " --threads 1");
    const CliRun b = run(std::string(cmd) + " --threads 4");
    EXPECT_EQ(a.out, b.out) << cmd;
    EXPECT_FALSE(a.out.empty());
  }
  EXPECT_NE(run("moments --seed 7").out, run("moments --seed 8").out);
}

TEST(Cli, WritesOutFile) {
  const auto path = std::filesystem::temp_directory_path() / "blowup_cli_out.csv";
  std::filesystem::remove(path);
  const CliRun r = run("cq --out " + path.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  const std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(body, run("cq").out);
  EXPECT_EQ(body.find('\r'), std::string::npos);
  std::filesystem::remove(path);
}
