#include "doctest.h"
#include "cli_reporter.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace toric_plt;
using namespace toric_plt::cli;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "toric_plt_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path;
}

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "toric-plt");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void parse_fails_at(const std::function<void()>& f, std::size_t line, std::size_t col) {
  try {
    f();
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == col);
    return;
  }
  FAIL("expected ParseError");
}

}  // namespace

TEST_CASE("germ mini-language") {
  auto t = classify_germ(parse_germ("cyclic r=7 q=3"));
  CHECK(t.to_string() == "CyclicQuotient(7,3)");
  t = classify_germ(parse_germ("# comment\ncone (1,0,0) (0,1,0) (1, 3, 7)\n"));
  CHECK(t.to_string() == "CyclicQuotient(7,3)");
  t = classify_germ(parse_germ("odp"));
  CHECK(t.kind == TerminalKind::OrdinaryDoublePoint);
  t = classify_germ(parse_germ("cone (1,0,0) (0,1,1) (0,1,0) (1,0,1)"));
  CHECK(t.kind == TerminalKind::OrdinaryDoublePoint);

  parse_fails_at([] { parse_germ("sphere"); }, 1, 1);
  parse_fails_at([] { parse_germ("cyclic r=7"); }, 1, 1);
  parse_fails_at([] { parse_germ("cyclic r=7 s=2"); }, 1, 12);
  parse_fails_at([] { parse_germ("cone (1,0,0)\n(0,1 0)"); }, 2, 6);
  parse_fails_at([] { parse_germ("cone (1,0,0) (0,1,0)"); }, 1, 1);
  parse_fails_at([] { parse_germ("odp odp"); }, 1, 5);
  parse_fails_at([] { parse_germ("  \n# nothing\n"); }, 3, 1);
}

TEST_CASE("family description format") {
  auto s = parse_family("E8 alpha=1,1");
  CHECK(s.kind == FamilyKind::E8);
  s = parse_family("A k=1 a2=1 a3=2 d1=1\nalpha=1,1");
  CHECK(s.kind == FamilyKind::A);
  CHECK(s.a3 == 2);
  s = parse_family("D k=1 alpha=2,1");
  CHECK(s.kind == FamilyKind::DEven);
  CHECK(s.n() == 4);
  s = parse_family("D n=7 alpha=1,1");
  CHECK(s.kind == FamilyKind::DOdd);
  CHECK(s.n() == 7);
  s = parse_family("ODP a1=1 k=1 d13=2 d14=1 a3=1 a4=1 alpha=1,1");
  CHECK(s.weights() == std::vector<Integer>{1, 2, 1, 2});
  s = parse_family("A k=1 a2=1 a3=2 d1=1 alpha=1,1 r=5");
  CHECK(s.ambient.kind == TerminalKind::CyclicQuotient);

  parse_fails_at([] { parse_family("F4 alpha=1,1"); }, 1, 1);
  parse_fails_at([] { parse_family("E8 alpha=1"); }, 1, 4);
  parse_fails_at([] { parse_family("E8 alpha=1,1 alpha=1,1"); }, 1, 14);
  parse_fails_at([] { parse_family("E8\n  beta=1"); }, 2, 3);
  parse_fails_at([] { parse_family("A k=1 a2=1 a3=2 alpha=1,1"); }, 1, 1);
  parse_fails_at([] { parse_family("E8 alpha=x"); }, 1, 10);
  parse_fails_at([] { parse_family("D k=1 n=4 alpha=1,1"); }, 1, 1);
  CHECK_THROWS_AS(parse_family("E8 alpha=2,4"), DomainError);
  CHECK_THROWS_AS(parse_family("D n=3 alpha=1,1"), DomainError);
}

TEST_CASE("classify report") {
  auto r = classify_report("g", "cone (1,0,0) (0,1,0) (1,3,7)");
  CHECK(r.exit_code == kOk);
  CHECK(r.doc["result"]["type"] == "CyclicQuotient(7,3)");
  CHECK(r.doc["result"]["r"] == 7);
  CHECK(r.doc["result"]["witness"].dump() == "[[1,0,0],[0,1,0],[0,0,1]]");
  CHECK(r.doc["checks"][0]["passed"] == true);

  r = classify_report("g", "cone (1,0,0) (0,1,0) (2,2,3)");
  CHECK(r.exit_code == kDomainError);
  CHECK(r.doc["result"]["terminal"] == false);
  CHECK(r.doc["result"]["quotient"]["order"] == 3);
  CHECK(r.doc["result"].contains("group_element"));
}

TEST_CASE("family report") {
  auto r = family_report("f", "E8 alpha=1,1");
  CHECK(r.exit_code == kOk);
  const auto& fibers = r.doc["result"]["description"]["fibers"];
  REQUIRE(fibers.size() == 3);
  CHECK(fibers[0]["other"]["order"] == 5);
  CHECK(fibers[1]["other"]["order"] == 2);
  CHECK(fibers[2]["other"]["order"] == 3);
  for (const auto& c : r.doc["result"]["diff_e"]) CHECK(c["coefficient"] == "0/1");
  CHECK(r.doc["result"]["description"]["section_self_intersection"] == "-31/30");
  CHECK(r.doc["result"]["duval"]["type"] == "E8");

  r = family_report("f", "A k=1 a2=1 a3=2 d1=1 alpha=1,1");
  const auto& diff = r.doc["result"]["diff_e"];
  CHECK(diff[0]["coefficient"] == "0/1");
  CHECK(diff[1]["curve"] == "f2");
  CHECK(diff[1]["coefficient"] == "1/2");
  CHECK(diff[2]["coefficient"] == "0/1");
  CHECK(summary(r.doc).find("Diff_E(0) = 1/2 f2") != std::string::npos);

  r = family_report("f", "D k=1 alpha=2,1");
  CHECK(r.exit_code == kOk);
  CHECK(r.doc["result"]["diff_e"].back()["curve"] == "E0");
  CHECK(r.doc["result"]["diff_e"].back()["coefficient"] == "1/2");

  r = family_report("f", "A k=1 a2=1 a3=2 d1=1 alpha=1,1 r=5");
  CHECK(r.exit_code == kOk);
  CHECK(r.doc["checks"][0]["vertex_basis_dets"].dump() == "[-1,1]");
}

TEST_CASE("reports are deterministic and round-trip") {
  const std::vector<Report> reports = {
      classify_report("g", "cyclic r=7 q=3"), family_report("f", "E7 alpha=3,2"),
      family_report("f", "ODP a1=1 k=1 d13=2 d14=1 a3=1 a4=1 alpha=1,1"),
      verify_report(VerifyScope::All, {3, 3, 3, 0})};
  for (const auto& r : reports) {
    const std::string text = serialize(r.doc);
    const Json back = Json::parse(text);
    CHECK(back == r.doc);
    CHECK(serialize(back) == text);
    const std::vector<std::string> keys{"input", "result", "checks", "version"};
    std::vector<std::string> got;
    for (const auto& [k, v] : r.doc.items()) got.push_back(k);
    CHECK(got == keys);
  }
  CHECK(serialize(family_report("f", "E7 alpha=3,2").doc) == serialize(reports[1].doc));
  CHECK(serialize(verify_report(VerifyScope::All, {3, 3, 3, 0}).doc) == serialize(reports[3].doc));
}

TEST_CASE("rationals render as p/q") {
  CHECK(to_json(make_rational(6, -4)) == "-3/2");
  CHECK(to_json(Rational(0)) == "0/1");
  CHECK(to_json(Rational(5)) == "5/1");
}

TEST_CASE("command line exit codes") {
  const auto germ = write_temp("germ.txt", "cyclic r=7 q=3\n");
  auto r = run_cli({"classify", germ.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("CyclicQuotient(7,3)") != std::string::npos);

  const auto bad = write_temp("bad.txt", "cone (1,0,0)\n(0,1,0) (1,3 7)\n");
  r = run_cli({"classify", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("bad.txt:2:14:") != std::string::npos);

  const auto nonterm = write_temp("nonterm.txt", "cone (1,0,0) (0,1,0) (2,2,3)\n");
  r = run_cli({"classify", nonterm.string()});
  CHECK(r.code == 3);
  CHECK(r.out.find("not terminal") != std::string::npos);

  const auto fam = write_temp("fam.txt", "E8 alpha=2,4\n");
  r = run_cli({"family", fam.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("gcd(alpha1, alpha2)") != std::string::npos);

  const auto json = std::filesystem::temp_directory_path() / "toric_plt_cli_tests" / "out.json";
  const auto e8 = write_temp("e8.txt", "E8 alpha=1,1\n");
  r = run_cli({"family", e8.string(), "--json", json.string()});
  CHECK(r.code == 0);
  std::ifstream in(json);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(Json::parse(buf.str())["version"] == kVersion);

  r = run_cli({"family", e8.string(), "--json", "-"});
  CHECK(r.out == buf.str());

  r = run_cli({"verify", "--scope", "all", "--r-max", "3", "--param-max", "3"});
  CHECK(r.code == 0);
  r = run_cli({"verify", "--scope", "everything"});
  CHECK(r.code == 2);
  r = run_cli({"verify", "--scope", "all", "--r-max", "0"});
  CHECK(r.code == 2);
  r = run_cli({"classify", "/nonexistent/germ.txt"});
  CHECK(r.code == 2);
}

TEST_CASE("seed reaches the randomized sweeps") {
  const auto a = verify_report(VerifyScope::Charts, {3, 3, 3, 0});
  const auto b = verify_report(VerifyScope::Charts, {3, 3, 3, 17});
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.doc["input"]["seed"] == 0);
  CHECK(b.doc["input"]["seed"] == 17);

  setenv("TORIC_PLT_SEED", "oops", 1);
  CHECK(run_cli({"verify", "--scope", "duval", "--param-max", "2"}).code == 2);
  setenv("TORIC_PLT_SEED", "5", 1);
  const auto r = run_cli({"verify", "--scope", "terminality", "--r-max", "4", "--json", "-"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["input"]["seed"] == 5);
  unsetenv("TORIC_PLT_SEED");
}
