#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../tools/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "pdp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = pdp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("pmf rows") {
  const auto r = run({"pmf", "--a", "0.5", "--b", "1", "--n", "3"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "M,probability");
  const double want[] = {0.125, 0.375, 0.5};
  for (int m = 1; m <= 3; ++m) {
    const auto row = l[static_cast<std::size_t>(m)];
    CHECK(row.substr(0, 2) == std::to_string(m) + ",");
    CHECK(std::stod(row.substr(2)) == doctest::Approx(want[m - 1]).epsilon(1e-12));
  }
  const auto j = run({"--format", "json", "pmf", "--a", "0.5", "--b", "1", "--n", "3"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc.size() == 3);
  CHECK(doc[2]["M"] == 3);
}

TEST_CASE("seeded sampling is byte-identical") {
  const std::vector<std::string> args{"--seed", "7", "--replicates", "3", "sample", "crp", "--a", "0.5", "--b", "1",
                                      "--n", "50"};
  const auto first = run(args);
  const auto second = run(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(lines(first.out).size() == 1 + 3 * 50);
  auto other = args;
  other[1] = "8";
  CHECK(run(other).out != first.out);
}

TEST_CASE("CSV numbers round-trip exactly") {
  const auto r = run({"--seed", "3", "sample", "gem", "--a", "0.3", "--b", "2"});
  REQUIRE(r.code == 0);
  const auto j = run({"--seed", "3", "--format", "json", "sample", "gem", "--a", "0.3", "--b", "2"});
  const auto doc = nlohmann::json::parse(j.out);
  const auto l = lines(r.out);
  const auto& weights = doc[0]["weights"];
  REQUIRE(l.size() == weights.size() + 2);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const auto row = l[k + 1];
    CHECK(std::stod(row.substr(row.rfind(',') + 1)) == weights[k].get<double>());
  }
}

TEST_CASE("exit codes") {
  const auto bad = run({"pmf", "--a", "1.5", "--b", "1", "--n", "3"});
  CHECK(bad.code == pdp::cli::kInvalidConfig);
  CHECK(bad.err.rfind("error: ", 0) == 0);
  CHECK(lines(bad.err).size() == 1);
  CHECK(run({"sample", "nope", "--a", "0.5"}).code == pdp::cli::kInvalidConfig);
  CHECK(run({"pmf", "--a", "0.5"}).code == pdp::cli::kInvalidConfig);
  const auto cap = run({"table", "stirling", "--a", "0.5", "--n", "100000", "--memory-cap", "1000000"});
  CHECK(cap.code == pdp::cli::kResourceLimit);
  CHECK(cap.err.rfind("error: resource", 0) == 0);
}

TEST_CASE("evidence from a counts file") {
  const auto path = temp_file("pdp_counts_test.csv", "# count,multiplicity,log_base_mass\n2,1," +
                                                          std::to_string(std::log(0.2)) + "\n");
  const auto r = run({"evidence", "--a", "0.5", "--b", "1", "--counts", path.string()});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "mode,log_evidence");
  CHECK(std::exp(std::stod(l[2].substr(l[2].find(',') + 1))) == doctest::Approx(0.05).epsilon(1e-6));
  // One indicator pattern out of C(2, 1).
  CHECK(std::exp(std::stod(l[3].substr(l[3].find(',') + 1))) == doctest::Approx(0.025).epsilon(1e-6));

  const auto bad = temp_file("pdp_counts_bad.csv", "2,x\n");
  CHECK(run({"evidence", "--a", "0.5", "--b", "1", "--counts", bad.string()}).code == pdp::cli::kInvalidConfig);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}

TEST_CASE("tree JSON") {
  const auto r = run({"--format", "json", "sample", "tree", "--a", "0.2", "--b", "1", "--n", "12", "--schedule",
                      "0.2,0.6", "--maxdepth", "2"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["nodes"][0]["members"].size() == 12);
  CHECK(doc[0]["edges"].size() == doc[0]["nodes"].size() - 1);
  CHECK(run({"sample", "tree", "--a", "0.2", "--b", "1", "--n", "12", "--schedule", "0.6,0.2", "--maxdepth", "2"})
            .code == pdp::cli::kInvalidConfig);
}

TEST_CASE("output file under PDP_OUTPUT_DIR") {
  const auto dir = std::filesystem::temp_directory_path() / "pdp_cli_out";
  std::filesystem::create_directories(dir);
  setenv("PDP_OUTPUT_DIR", dir.c_str(), 1);
  const auto r = run({"-o", "moments.csv", "moments", "--a", "0.5", "--b", "1", "--n", "3"});
  unsetenv("PDP_OUTPUT_DIR");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(dir / "moments.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "quantity,value");
  std::filesystem::remove_all(dir);
}
