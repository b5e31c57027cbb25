#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_cases.hpp"
#include "twoperiodic/cli.hpp"
#include "twoperiodic/core.hpp"
#include "twoperiodic/scalar.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "twoperiodic");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = twoperiodic::cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<std::string> kSample{"--a0", "2", "--b0", "1", "--c0", "4", "--d0", "3",
                                       "--a1", "1", "--b1", "2", "--c1", "3", "--d1", "1"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("documented command lines match their goldens") {
  for (const auto& c : cli_cases::kDocumented) {
    CAPTURE(c.golden);
    const auto r = run(c.args);
    CHECK(r.code == 0);
    CHECK(r.out == slurp(std::filesystem::path(GOLDEN_DIR) / c.golden));
  }
}

TEST_CASE("simulate csv round-trips") {
  const auto r = run(with({"simulate", "--format", "csv", "-n", "30", "--x0", "0.3", "--y0", "2.5"}, kSample));
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,x,y");
  const twoperiodic::Coefficients p(2, 1, 1, 2, 4, 3, 3, 1);
  const auto orbit = twoperiodic::simulate(p, twoperiodic::State<double>{0.3, 2.5}, 30);
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(','), c2 = line.rfind(',');
    CHECK(std::stoul(line.substr(0, c1)) == n);
    CHECK(twoperiodic::parse_double(line.substr(c1 + 1, c2 - c1 - 1)) == orbit[n].x);
    CHECK(twoperiodic::parse_double(line.substr(c2 + 1)) == orbit[n].y);
    ++n;
  }
  CHECK(n == 31);
}

TEST_CASE("exact mode prints fractions") {
  const auto r = run(with({"simulate", "--mode", "exact", "-n", "2", "--format", "csv"}, kSample));
  CHECK(r.out == "n,x,y\n0,1,1\n1,3,7\n2,13/21,8/7\n");
  const auto j = run(with({"closed", "--mode", "exact", "-n", "2", "--format", "json"},
                          {"--a0", "1", "--a1", "1/2", "--b0", "1", "--b1", "3/2", "--c0", "1",
                           "--c1", "7/10", "--d0", "1", "--d1", "13/10", "--y0", "2"}));
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["orbit"][2]["x"] == "4/3");
  CHECK(doc["rank"] == 1);
}

TEST_CASE("classify output formats") {
  const auto csv = run(with({"classify", "--format", "csv"}, kSample));
  CHECK(csv.out.rfind("rank,K_or_Q,rho_or_delta,kind\n2,", 0) == 0);
  CHECK(csv.out.find("VanishEvenBlowOdd") != std::string::npos);
  const auto js = run(with({"classify", "--format", "json"}, kSample));
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["kind"] == "VanishEvenBlowOdd");
  CHECK(doc["witness"]["delta"].get<double>() < 0);
  const auto ex = run({"classify", "--all-ones", "--mode", "exact", "--format", "csv"});
  CHECK(ex.out == "rank,K_or_Q,rho_or_delta,kind\n1,1,1,ExactTwoPeriodic\n");
}

TEST_CASE("sweep output") {
  const std::vector<std::string> fam{"--a0", "1", "--b0", "1", "--c0", "1", "--d0", "1",
                                     "--a1", "0.5", "--b1", "1.5", "--c1", "0.7"};
  const auto a = run(with({"sweep", "--axis1", "d1:0.1:4:40", "--format", "csv"}, fam));
  REQUIRE(a.code == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 41);
  CHECK(a.out.rfind("d1,rank,K_or_Q,rho_or_delta,kind\n", 0) == 0);
  CHECK(a.out.find("\n1.3,1,1,1,ExactTwoPeriodic\n") != std::string::npos);
  const auto b = run(with({"sweep", "--axis1", "d1:0.1:4:40", "--format", "csv", "--serial"}, fam));
  CHECK(a.out == b.out);
  const auto two = run(with({"sweep", "--axis1", "d1:0.1:4:5", "--axis2", "a1:0.2:1:4", "--format", "csv"}, fam));
  CHECK(std::count(two.out.begin(), two.out.end(), '\n') == 21);
  CHECK(run(with({"sweep", "--axis1", "d1:0.1:4:40", "--mode", "exact"}, fam)).code == 2);
  CHECK(run(with({"sweep", "--axis1", "d1:4:0.1:40"}, fam)).code == 2);
  CHECK(run(with({"sweep", "--axis1", "e1:0.1:4:40"}, fam)).code == 2);
}

TEST_CASE("exit codes") {
  CHECK(run({"classify", "--all-ones"}).code == 0);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  const auto missing = run({"classify", "--a0", "1"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--a1") != std::string::npos);
  CHECK(run({"classify", "--all-ones", "--a1", "x"}).code == 2);
  CHECK(run({"classify", "--all-ones", "--format", "xml"}).code == 2);
  CHECK(run({"classify", "--all-ones", "--d1", "0"}).code == 3);
  CHECK(run({"simulate", "--all-ones", "--y0", "-1"}).code == 3);
  CHECK(run({"closed", "--mode", "exact", "-n", "3", "--a0", "2", "--b0", "1", "--c0", "4", "--d0",
             "3", "--a1", "1", "--b1", "2", "--c1", "3", "--d1", "1"})
            .code == 3);  // irrational eigenvalues
  const auto trunc = run({"simulate", "--all-ones", "--a1", "1e-300", "--b1", "1e-300", "--c1",
                          "1e-300", "--d1", "1e-300", "-n", "20", "--format", "csv"});
  CHECK(trunc.code == 4);
  CHECK(trunc.out.rfind("n,x,y\n0,1,1\n", 0) == 0);
}

TEST_CASE("config file and output path") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto cfg = dir / "twoperiodic_cli_cfg.json";
  const auto out = dir / "twoperiodic_cli_out.csv";
  {
    std::ofstream f(cfg);
    f << R"({"a0": 2, "b0": 1, "c0": 4, "d0": 3, "a1": 1, "b1": 2, "c1": 3, "d1": "1", "x0": 1})";
  }
  const auto r = run({"simulate", "--config", cfg.string(), "-n", "1", "--format", "csv", "-o", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(out) == "n,x,y\n0,1,1\n1,3,7\n");
  // flags win over the file
  const auto o = run({"simulate", "--config", cfg.string(), "--a0", "5", "-n", "1", "--format", "csv"});
  CHECK(o.out == "n,x,y\n0,1,1\n1,6,7\n");
  CHECK(run({"simulate", "--config", (dir / "no_such_file.json").string()}).code == 2);
  std::filesystem::remove(cfg);
  std::filesystem::remove(out);
}
