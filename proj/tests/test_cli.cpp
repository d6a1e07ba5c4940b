#include <doctest.h>

#include <sstream>

#include "omt/cli.hpp"

using namespace omt;

namespace {

struct Run {
  int rc;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int rc = run_command(args, o, e);
  return {rc, o.str(), e.str()};
}

}  // namespace

TEST_CASE("cli example and fuzz output is byte stable") {
  Run a = run({"example", "alex(3)"}), b = run({"example", "alex(3)"});
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("name = alex(3)") != std::string::npos);
  Run f = run({"fuzz", "--seed", "9", "--count", "4"}), g = run({"fuzz", "--seed", "9", "--count", "4"});
  CHECK(f.rc == 0);
  CHECK(f.out == g.out);
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).rc == 2);
  CHECK(run({"example", "nsplit(0)"}).rc == 2);
  CHECK(run({"check", "/nonexistent.space"}).rc == 2);
  CHECK(run({"fuzz", "--count", "-1"}).rc == 2);
  CHECK(run({"--help"}).rc == 0);
}

TEST_CASE("color only when asked") {
  std::ostringstream o, e;
  run_command({"example", "euclidean"}, o, e, true);
  CHECK(o.str().find('\033') == std::string::npos);
}
