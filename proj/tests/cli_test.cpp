#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "eqdef/cli.hpp"
#include "schema_check.hpp"

using namespace eqdef;
using namespace eqdef::cli;

namespace {

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(EQDEF_SOURCE_DIR) + "/" + rel);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Report run_on(const std::string& command, std::vector<std::string> files, std::optional<long> truncate = {}) {
  Invocation inv;
  inv.command = command;
  for (const auto& f : files) inv.inputs.push_back(slurp("problems/" + f));
  inv.truncate = truncate;
  return run(inv);
}

bool has_line(const Report& r, const std::string& l) {
  return std::find(r.lines.begin(), r.lines.end(), l) != r.lines.end();
}

const char* kCusp = "field Q\nvars x y\nideal: y^2 - x^3\ngen s: y -> -y\n";
const char* kNodeF2 = "field F 2\nvars x y\nideal: x*y\ngen s: x -> y, y -> x\n";

TEST(ProblemFile, ParsesCusp) {
  auto pf = parse_problem(kCusp);
  EXPECT_TRUE(pf.field.is_rational());
  EXPECT_EQ(pf.ring->names(), (std::vector<std::string>{"x", "y"}));
  ASSERT_EQ(pf.ideal.size(), 1u);
  EXPECT_EQ(render(pf.ideal[0]), "-x^3 + y^2");
  ASSERT_EQ(pf.generators.size(), 1u);
  EXPECT_EQ(render(pf.generators[0].images[0]), "x");
  EXPECT_EQ(render(pf.generators[0].images[1]), "-y");
}

TEST(ProblemFile, ParsesWildNode) {
  auto pf = parse_problem(kNodeF2);
  EXPECT_EQ(pf.field.characteristic(), 2u);
  EXPECT_EQ(render(pf.generators[0].images[0]), "y");
  EXPECT_EQ(render(pf.generators[0].images[1]), "x");
}

TEST(ProblemFile, RoundTrip) {
  for (const char* f : {"cusp.problem", "node.problem", "node_f2.problem", "line_f2.problem", "a2.problem"}) {
    auto once = render_problem(parse_problem(slurp(std::string("problems/") + f)));
    EXPECT_EQ(render_problem(parse_problem(once)), once) << f;
  }
  auto eps = render_problem(parse_problem(slurp("problems/cusp_eps_moved.problem"), true));
  EXPECT_EQ(render_problem(parse_problem(eps, true)), eps);
  EXPECT_NE(eps.find("eps"), std::string::npos);
}

TEST(ProblemFile, CommentsAndBlankLines) {
  auto pf = parse_problem("# header\n\nfield Q   # rationals\nvars x\n  ideal: x^2 # a double point\n");
  EXPECT_EQ(render(pf.ideal[0]), "x^2");
  EXPECT_TRUE(pf.generators.empty());
}

void expect_error_at(const std::string& text, std::size_t line, std::size_t column, const std::string& fragment,
                     bool deformation = false) {
  try {
    parse_problem(text, deformation);
    ADD_FAILURE() << "no error for:\n" << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(ProblemFile, Errors) {
  expect_error_at("field F 4\nvars x\n", 1, 9, "not prime");
  expect_error_at("field Q\nvars x y\ngen s: z -> x\n", 3, 8, "unknown variable `z`");
  expect_error_at("field Q\nvars x y\nideal: x + + y\n", 3, 12, "");
  expect_error_at("field Q\nvars x eps\n", 2, 8, "reserved");
  expect_error_at("field Q\nvars x\nideal: x + eps\n", 3, 12, "");
  expect_error_at("field Q\nvars x\noption speed = 3\n", 3, 8, "unknown option");
  expect_error_at("vars x\n", 1, 1, "before `field`");
  expect_error_at("field Q\n", 2, 1, "missing `vars`");
  expect_error_at("field Q\nvars x\nfrobnicate\n", 3, 1, "unknown directive");
  auto pf = parse_problem("field Q\nvars x\nideal: x^2 + eps*x\n", true);
  EXPECT_EQ(pf.order(), 1u);
}

TEST(Cli, TangentCusp) {
  auto r = run_on("tangent", {"cusp.problem"});
  EXPECT_EQ(r.exit_code, kSuccess);
  EXPECT_TRUE(has_line(r, "T1 dim: 2"));
  EXPECT_TRUE(has_line(r, "T1 basis: 1, x"));
  EXPECT_TRUE(has_line(r, "T1_G dim: 2"));
  EXPECT_TRUE(has_line(r, "certified: exact"));
  EXPECT_TRUE(has_line(r, "truncation: 6"));
  EXPECT_EQ(r.data["t1_equivariant_dim"], 2);
  EXPECT_EQ(r.data["t1_basis"], nlohmann::json({"1", "x"}));
}

TEST(Cli, ObstructionWildNode) {
  auto r = run_on("obstruction", {"node_f2.problem"}, 4);
  EXPECT_EQ(r.exit_code, kSuccess);
  EXPECT_EQ(r.data["obstruction_dim"], 1);
  EXPECT_EQ(r.data["certified"], "slice:4");
}

TEST(Cli, LiftNodeTwoSteps) {
  Invocation inv{"lift", {slurp("problems/node.problem")}};
  inv.order = 2;
  auto r = run(inv);
  EXPECT_EQ(r.exit_code, kSuccess);
  ASSERT_EQ(r.data["lifts"].size(), 2u);
  for (const auto& s : r.data["lifts"]) EXPECT_FALSE(s["obstructed"].get<bool>());
}

TEST(Cli, LiftLineUnique) {
  Invocation inv{"lift", {slurp("problems/line_f2.problem")}};
  inv.order = 3;
  inv.enumerate = true;
  auto r = run(inv);
  EXPECT_EQ(r.exit_code, kSuccess);
  ASSERT_EQ(r.data["lifts"].size(), 3u);
  for (const auto& s : r.data["lifts"]) EXPECT_EQ(s["count"], 1);
}

TEST(Cli, Iso) {
  auto yes = run_on("iso", {"cusp_eps.problem", "cusp_eps_moved.problem"});
  EXPECT_EQ(yes.exit_code, kSuccess);
  EXPECT_TRUE(yes.data["witness"]["exists"].get<bool>());
  EXPECT_EQ(yes.data["witness"]["values"], "[0, y]");
  auto no = run_on("iso", {"cusp_eps.problem", "cusp_eps_const.problem"});
  EXPECT_EQ(no.exit_code, kSuccess);
  EXPECT_FALSE(no.data["witness"]["exists"].get<bool>());
  EXPECT_TRUE(has_line(no, "witness: none at slice 6"));
}

TEST(Cli, Ramify) {
  Invocation inv;
  inv.command = "ramify";
  inv.d = 1;
  inv.m = 2;
  inv.p = 5;
  auto r = run(inv);
  EXPECT_EQ(r.exit_code, kSuccess);
  EXPECT_EQ(r.data["ext1_invariant_dim"], 1);
  inv.m = 3;
  EXPECT_EQ(run(inv).exit_code, kInputError);
}

TEST(Cli, InputErrors) {
  Invocation bad{"tangent", {"field F 4\nvars x\n"}};
  auto r = run(bad);
  EXPECT_EQ(r.exit_code, kInputError);
  EXPECT_NE(r.error.find("line 1"), std::string::npos);
  Invocation unstable{"tangent", {"field Q\nvars x y\nideal: x\ngen s: x -> y, y -> x\n"}};
  EXPECT_EQ(run(unstable).exit_code, kInputError);
  Invocation check{"check", {"field Q\nvars x y\nideal: x\ngen s: x -> y, y -> x\n"}};
  auto c = run(check);
  EXPECT_EQ(c.exit_code, kInputError);
  EXPECT_TRUE(has_line(c, "ideal stable: no"));
  Invocation irregular{"tangent", {"field Q\nvars x\nideal: x; x^2\n"}};
  EXPECT_EQ(run(irregular).exit_code, kInputError);
  EXPECT_EQ(run(Invocation{"tangent", {}}).exit_code, kInputError);
}

TEST(Cli, Deterministic) {
  for (const char* f : {"cusp.problem", "node_f2.problem", "a2.problem"}) {
    auto a = run_on("tangent", {f}), b = run_on("tangent", {f});
    EXPECT_EQ(a.text(), b.text());
    EXPECT_EQ(a.json(), b.json());
  }
  auto a = run_on("obstruction", {"node_f2.problem"}), b = run_on("obstruction", {"node_f2.problem"});
  EXPECT_EQ(a.json(), b.json());
}

TEST(Cli, ReportsMatchSchema) {
  auto schema = nlohmann::json::parse(slurp("schema/report.schema.json"));
  std::vector<Report> reports{run_on("check", {"cusp.problem"}), run_on("tangent", {"cusp.problem"}),
                              run_on("tangent", {"node_f2.problem"}), run_on("obstruction", {"node_f2.problem"}, 3),
                              run_on("iso", {"cusp_eps.problem", "cusp_eps_moved.problem"}),
                              run(Invocation{"tangent", {"field F 4\n"}})};
  Invocation lift{"lift", {slurp("problems/line_f2.problem")}};
  lift.order = 2;
  lift.enumerate = true;
  reports.push_back(run(lift));
  Invocation ram;
  ram.command = "ramify";
  ram.d = 4;
  ram.m = 5;
  ram.p = 11;
  reports.push_back(run(ram));
  for (const auto& r : reports) {
    std::vector<std::string> errors;
    eqdef::testing::validate(nlohmann::json::parse(r.json()), schema, "$", errors);
    EXPECT_TRUE(errors.empty()) << r.data["command"] << ": " << (errors.empty() ? "" : errors[0]);
  }
}

}  // namespace
