#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  nlohmann::json report;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qgc::cli::run(args, out, err);
  nlohmann::json j;
  if (code != 2 && !out.str().empty()) j = nlohmann::json::parse(out.str());
  return {code, j, err.str()};
}

}  // namespace

TEST_CASE("argument parsing") {
  const Result c = invoke({"central", "--n", "2", "--lambda-alpha", "1,1", "--method", "trace", "--verify"});
  CHECK(c.code == 0);
  CHECK(c.report["status"] == "pass");
  CHECK(c.report["payload"]["method"] == "trace");
  CHECK(c.report["payload"]["lambda"] == nlohmann::json::array({2, 0}));

  const Result p = invoke({"parity-kernel", "--n", "3", "--bound", "3", "--mode", "lambda"});
  CHECK(p.code == 0);
  CHECK(p.report["payload"]["rank"] == 3);
  CHECK(p.report["payload"]["count"].get<int>() > 0);

  CHECK(invoke({"central", "--n", "2", "--lambda-alpha", "1"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"central", "--n", "2"}).code == 2);
  CHECK(invoke({"parity-kernel", "--n", "2", "--mode", "both"}).code == 2);
}

TEST_CASE("reports") {
  const Result r = invoke({"rosso-check", "--n", "2", "--height", "2", "--trials", "10", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.report["status"] == "pass");
  CHECK(r.report["payload"]["failures"] == 0);

  const Result h = invoke({"hc-image", "--n", "2", "--lambda-alpha", "1,1"});
  CHECK(h.report["payload"]["image"].size() == 5);
  CHECK(h.report["payload"]["triangular"] == true);

  const Result d = invoke({"graded-dim", "--n", "2", "--sign", "+", "--nu", "2,1"});
  CHECK(d.report["payload"]["dim"] == 2);

  const Result bad = invoke({"central", "--n", "2", "--lambda-fund", "0,1"});
  CHECK(bad.code == 1);
  CHECK(bad.report["status"] == "fail");
  CHECK(bad.report["payload"]["error"] == "NotInRootLattice");
}

TEST_CASE("output does not depend on the job count") {
  std::ostringstream a, b, err;
  qgc::cli::run({"rosso-check", "--n", "2", "--height", "2", "--trials", "5", "--seed", "3"}, a, err);
  qgc::cli::run({"--jobs", "4", "rosso-check", "--n", "2", "--height", "2", "--trials", "5", "--seed", "3"}, b, err);
  CHECK(a.str() == b.str());
}
