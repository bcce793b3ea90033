#include <catch_amalgamated.hpp>

#include "cli_app.hpp"

#include <cstdio>
#include <filesystem>

using namespace susyrpm;

namespace {
struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "susyrpm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}
}  // namespace

TEST_CASE("moments prints M(2) as 0.5") {
  auto r = invoke({"moments", "--nmax", "5"});
  CHECK(r.code == 0);
  auto l = lines(r.out);
  REQUIRE(l.size() == 7);
  CHECK(l[0] == "n,M(n)");
  CHECK(l[3] == "2,0.5");
}

TEST_CASE("variational in the layout of the first table") {
  auto r = invoke({"variational", "--potential", "susy-minus", "--nmax", "7", "--format", "md"});
  CHECK(r.code == 0);
  CHECK(r.out.find("| 7 | 0 | 1.969507539 | 5.507178381 | 9.394287127 |") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"variational", "--nmax", "seven"}).code == 2);
  CHECK(invoke({"variational", "--potential", "cubic"}).code == 2);
  CHECK(invoke({"moments", "--digits", "12"}).code == 2);
  CHECK(invoke({"rpm", "--s", "2"}).code == 2);
  CHECK(invoke({"rpm", "--emin", "5", "--emax", "1"}).code == 2);
  CHECK(invoke({"reproduce", "9"}).code == 2);
  auto r = invoke({"variational", "--nmax", "seven"});
  CHECK(r.err.find("nmax") != std::string::npos);
}

TEST_CASE("flag beats config file beats default") {
  const auto config = temp_file("susyrpm_cli_test.json", R"({"nmax": 4, "digits": "40"})");
  auto from_file = invoke({"moments", "--config", config});
  CHECK(from_file.code == 0);
  CHECK(lines(from_file.out).size() == 6);
  auto flag = invoke({"moments", "--config", config, "--nmax", "2"});
  CHECK(lines(flag.out).size() == 4);
  auto plain = invoke({"moments"});
  CHECK(lines(plain.out).size() == 12);
  // digits from the file apply when no flag overrides them
  CHECK(lines(from_file.out)[1].size() < lines(plain.out)[1].size());
}

TEST_CASE("unknown config keys are rejected") {
  const auto config = temp_file("susyrpm_cli_bad.json", R"({"nmax": 4, "colour": "red"})");
  auto r = invoke({"moments", "--config", config});
  CHECK(r.code == 2);
  CHECK(r.err.find("colour") != std::string::npos);
  CHECK(invoke({"moments", "--config", "/nonexistent/config.json"}).code == 2);
}

TEST_CASE("output is byte-identical across runs") {
  auto a = invoke({"variational", "--potential", "quartic", "--format", "json"});
  auto b = invoke({"variational", "--potential", "quartic", "--format", "json"});
  CHECK(a.out == b.out);
  auto c = invoke({"rpm", "--dmax", "8", "--digits", "40", "--emin", "-1", "--emax", "3"});
  auto d = invoke({"rpm", "--dmax", "8", "--digits", "40", "--emin", "-1", "--emax", "3"});
  CHECK(c.code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("JSON round trip") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"variational", "--format", "json"},
           {"rpm", "--dmax", "8", "--digits", "40", "--emax", "3", "--format", "json"}}) {
    auto r = invoke(args);
    REQUIRE(r.code == 0);
    CHECK(cli::json::parse(r.out).dump(2) + "\n" == r.out);
  }
}

TEST_CASE("rpm CSV layout") {
  auto r = invoke({"rpm", "--dmax", "10", "--digits", "40", "--emin", "-1", "--emax", "3"});
  REQUIRE(r.code == 0);
  auto l = lines(r.out);
  CHECK(l[0] == "sequence_id,D,root,error_estimate");
  CHECK(r.out.find("\nsequence_id,converged,error_estimate,converged_ok\n") != std::string::npos);
  // the exact ground state starts at D = 3 with value 0
  CHECK(l[1].rfind("0,3,0.", 0) == 0);
}

TEST_CASE("series dump") {
  auto r = invoke({"rpm", "--dump-series", "0", "--dmax", "3", "--digits", "40"});
  REQUIRE(r.code == 0);
  auto l = lines(r.out);
  CHECK(l[0] == "j,f_j");
  CHECK(l[3] == "2,1");
  CHECK(l[4] == "3,0");
}

TEST_CASE("writing to a file") {
  const auto path = (std::filesystem::temp_directory_path() / "susyrpm_cli_out.csv").string();
  std::filesystem::remove(path);
  auto r = invoke({"moments", "--nmax", "3", "-o", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == "n,M(n)");
}
