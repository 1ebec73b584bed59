#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "homotope/errors.hpp"

using namespace homotope;
using namespace homotope::cli;

namespace {
const std::string data_dir = HOMOTOPE_TEST_DATA;

std::string path(const char* name) { return data_dir + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "homotope-cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json structured(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("structured");
  Run r = run_cli(args);
  REQUIRE_MESSAGE(r.code != 2, r.err);
  return Json::parse(r.out);
}

const Json& check_named(const Json& report, const std::string& name) {
  for (const auto& c : report.at("checks"))
    if (c.at("name") == name) return c;
  FAIL("no check " << name);
  throw 0;
}
}  // namespace

TEST_CASE("algebra files") {
  Algebra m2 = parse_algebra(Json::parse(read_file(path("m2.json"))));
  CHECK(m2.dim() == 4);
  CHECK(m2.unit());
  CHECK(m2.lift());
  Algebra t2 = parse_algebra(Json::parse(read_file(path("t2.json"))));
  CHECK(t2.is_associative());
  CHECK(parse_algebra(algebra_json(t2)).dim() == 3);
  CHECK(same_algebra(parse_algebra(algebra_json(t2)), t2));
  Algebra f7 = parse_algebra(Json::parse(read_file(path("dual_f7.json"))));
  CHECK(f7.field() == FieldSpec::prime(7));

  try {
    parse_algebra(Json::parse(read_file(path("bad_index.json"))));
    FAIL("accepted an out-of-range index");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("structure_constants[1][2]") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_algebra(Json::parse(read_file(path("bad_scalar.json")))), ParseError);
  CHECK_THROWS_AS(parse_algebra(Json::parse(read_file(path("bad_unit.json")))), ParseError);
  CHECK_THROWS_AS(parse_algebra(Json::parse(R"({"field": "rationals", "dim": 1})")), ParseError);
  // a lift whose units do not multiply as matrix units
  Json bad = Json::parse(read_file(path("m2.json")));
  bad["wedderburn_lift"]["units"][0][1] = Json::array({"0", "0", "1", "0"});
  CHECK_THROWS_AS(parse_algebra(bad), ParseError);
}

TEST_CASE("module files") {
  ModuleRep p1 = parse_module(Json::parse(read_file(path("t2_p1.json"))), data_dir, nullptr);
  CHECK(p1.dim() == 1);
  CHECK(is_projective(p1));
  CHECK_THROWS_AS(parse_module(Json::parse(read_file(path("m2_column.json"))), data_dir, nullptr), ParseError);
  Json wrong = Json::parse(read_file(path("t2_p1.json")));
  wrong["action"][2] = Json::array({Json::array({"1"})});
  CHECK_THROWS_AS(parse_module(wrong, data_dir, nullptr), ParseError);
}

TEST_CASE("reports") {
  Report empty;
  empty.command = "check";
  empty.input_digest = sha256_hex("");
  CHECK(empty.input_digest == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(emit(empty, Format::Human) == "homotope 0.1.0  check\ninput sha256:" + empty.input_digest + "\n");
  CHECK_FALSE(empty.failed());
  Report one = empty;
  one.seed = 3;
  one.add("x", false, {{"k", 1}});
  one.add("y", Status::Inconclusive);
  CHECK(one.failed());
  Report back = report_from_json(Json::parse(emit(one, Format::Structured)));
  CHECK(to_json(back) == to_json(one));
  CHECK(emit(back, Format::Structured) == emit(one, Format::Structured));
}

TEST_CASE("well-tempered examples through the command line") {
  Json good = structured({"well-tempered", path("m2.json"), "--delta", "e11"});
  CHECK(check_named(good, "well_tempered").at("status") == "pass");
  CHECK(check_named(good, "well_tempered").at("data").at("well_tempered") == true);
  Json bad = structured({"well-tempered", path("t2.json"), "--delta", "e12"});
  CHECK(check_named(bad, "well_tempered").at("status") == "pass");
  CHECK(check_named(bad, "well_tempered").at("data").at("well_tempered") == false);
  CHECK(run_cli({"well-tempered", path("t2.json"), "--delta", "0,1,0"}).code == 0);
}

TEST_CASE("oracle agrees on 50 trials") {
  Run r = run_cli({"oracle", "--seed", "7", "--trials", "50", "--format", "structured"});
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("checks").size() == 51);
  CHECK(check_named(j, "agreement").at("data").at("agree") == 50);
  CHECK(j.at("seed") == 7);
}

TEST_CASE("exit codes") {
  // recollement identities fail when Delta is not well-tempered
  CHECK(run_cli({"recollement", path("t2.json"), "--delta", "e12"}).code == 1);
  CHECK(run_cli({"recollement", path("m2.json"), "--delta", "e11", "--modules", path("m2_column.json")}).code == 0);
  CHECK(run_cli({"oracle", "--trials", "3"}).code == 2);
  CHECK(run_cli({"check", path("bad_index.json")}).code == 2);
  CHECK(run_cli({"check", path("m2.json"), "--field", "fp:7"}).code == 2);
  CHECK(run_cli({"check", path("m2.json"), "--delta", "e11"}).code == 2);
  CHECK(run_cli({"well-tempered", path("m2.json"), "--delta", "e33"}).code == 2);
  CHECK(run_cli({}).code == 2);
}

TEST_CASE("structured reports are deterministic") {
  std::vector<std::vector<std::string>> cmds = {
      {"nonassoc", "density", "--d", "2", "--p", "101", "--seed", "4", "--samples", "30"},
      {"nonassoc", "preimages", "--d", "2", "--seed", "9"},
      {"nonassoc", "classify", "--d", "3", "--seed", "9"},
      {"fiber", "glue", path("cubic.json"), "--ideal", "x2", "--rank", "2", "--seed", "5"},
      {"blocks", path("t2.json")},
  };
  for (auto c : cmds) {
    c.push_back("--format");
    c.push_back("structured");
    Run a = run_cli(c), b = run_cli(c);
    CAPTURE(c[0]);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Report r = report_from_json(Json::parse(a.out));
    CHECK(emit(r, Format::Structured) == a.out);
  }
  Json x = structured({"nonassoc", "density", "--d", "2", "--seed", "4", "--samples", "30"});
  Json y = structured({"nonassoc", "density", "--d", "2", "--seed", "5", "--samples", "30"});
  CHECK(x.at("input_digest") != y.at("input_digest"));
}

TEST_CASE("nonassoc and fiber subcommands") {
  Json pre = structured({"nonassoc", "preimages", "--d", "3", "--seed", "2"});
  CHECK(check_named(pre, "count").at("data").at("count") == 8);
  CHECK(check_named(pre, "contains source").at("status") == "pass");
  Json cls = structured({"nonassoc", "classify", "--d", "2", "--seed", "1"});
  CHECK(check_named(cls, "bruck_class").at("data").at("class") == 1);
  CHECK(check_named(cls, "kaplansky").at("status") == "pass");
  // A = k[x]/(x^4), I = (x^2), u = x^2: (Iu : u) = I and dim A/I = 2
  Json uk = structured({"fiber", "unit-kernel", path("quartic.json"), "--ideal", "x2", "--u", "x2"});
  CHECK(check_named(uk, "unit kernel").at("status") == "pass");
  CHECK(check_named(uk, "unit kernel").at("data").at("dim_kernel") == 1);
  CHECK(check_named(uk, "unit surjective").at("status") == "pass");
  // I = (x^2 - 1) is idempotent in k[x]/(x^3 - x), so the hypothesis fails
  Json idem = structured({"fiber", "unit-kernel", path("cubic.json"), "--ideal", "-1,0,1", "--u", "-1,0,1"});
  CHECK(check_named(idem, "unit kernel").at("status") == "inconclusive");
  Json ug = structured({"fiber", "unglue", path("cubic.json"), "--ideal", "x"});
  CHECK(check_named(ug, "triple").at("data").at("n") == 1);
}

TEST_CASE("report written to --out") {
  auto file = std::filesystem::temp_directory_path() / "homotope_cli_out.json";
  std::filesystem::remove(file);
  Run r = run_cli({"check", path("t2.json"), "--format", "structured", "--out", file.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  Json j = Json::parse(read_file(file));
  CHECK(j.at("command") == "check");
  Run again = run_cli({"check", path("t2.json"), "--format", "structured"});
  CHECK(again.out == read_file(file));
  std::filesystem::remove(file);
}
