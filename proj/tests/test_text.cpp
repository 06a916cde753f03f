#include <doctest.h>

#include "cpwb/enumerate.hpp"
#include "cpwb/text.hpp"

using namespace cpwb;

TEST_CASE("types") {
  CHECK(parse_type("1") == Formula::one());
  CHECK(parse_type("bot") == Formula::bot());
  CHECK(parse_type("(1 * bot)") == Formula::tensor(Formula::one(), Formula::bot()));
  CHECK(parse_type("(1 % bot)") == Formula::par(Formula::one(), Formula::bot()));
  CHECK(parse_type("(1+1)") == Formula::plus(Formula::one(), Formula::one()));
  CHECK(parse_type("(1 & bot)") == Formula::with(Formula::one(), Formula::bot()));
  CHECK(parse_type("!?1") == Formula::of_course(Formula::why_not(Formula::one())));
  CHECK_THROWS_AS(parse_type("1 * 1"), SyntaxError);
  CHECK_THROWS_AS(parse_type("(1 * 1 * 1)"), SyntaxError);
  CHECK_THROWS_AS(parse_type("2"), SyntaxError);
}

TEST_CASE("processes") {
  Process p = parse_process("x[]");
  CHECK(p.kind() == Process::Kind::EmptyOut);
  CHECK(p.x() == "x");

  Process c = parse_process("new x:1 (x[] | x().0)");
  CHECK(c.kind() == Process::Kind::Cut);
  CHECK(c.annot() == Formula::one());
  CHECK(c.p() == parse_process("x[]"));
  CHECK(c.q() == parse_process("x().0"));

  CHECK(parse_process("!x(y).y[]").kind() == Process::Kind::Server);
  CHECK(parse_process("?x[y].y[]").kind() == Process::Kind::Client);
  CHECK(parse_process("x<2.x[]").index() == 2);
  CHECK(parse_process("x>{x[] ; x[]}").kind() == Process::Kind::Case);
  CHECK(parse_process("fwd x y") == Process::fwd("x", "y"));
  CHECK(parse_process("weak x:?1.y[]").kind() == Process::Kind::Weak);
  Process k = parse_process("ctr x<a,b>.fwd a b");
  CHECK(k.kind() == Process::Kind::Contract);
  CHECK(k.y() == "a");
  CHECK(k.z() == "b");
  CHECK(parse_process("x[y](y[] | x[])").kind() == Process::Kind::Out);
}

TEST_CASE("prefixes bind tighter than bar") {
  Process p = parse_process("x().0 | y[]");
  REQUIRE(p.kind() == Process::Kind::Par);
  CHECK(p.p() == parse_process("x().0"));
  Process q = parse_process("a[] | b[] | c[]");
  REQUIRE(q.kind() == Process::Kind::Par);
  CHECK(q.p().kind() == Process::Kind::Par);
}

TEST_CASE("comments and whitespace") {
  Process p = parse_process("# a comment\n  x[]   # trailing\n");
  CHECK(p == Process::empty_out("x"));
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_process("x[](\n  y[]");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.col() == 4);
  }
  try {
    parse_process("new x:1 (x[] |\n   x().$)");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.col() == 8);
  }
  CHECK_THROWS_AS(parse_process("new new:1 (x[] | x().0)"), SyntaxError);
  CHECK_THROWS_AS(parse_process("x<3.x[]"), SyntaxError);
  CHECK_THROWS_AS(parse_process("x[] y[]"), SyntaxError);
}

TEST_CASE("contexts") {
  auto c = parse_context("x:1, y:bot");
  CHECK(c.size() == 2);
  CHECK(c.at("y") == Formula::bot());
  CHECK(parse_context("").empty());
  auto l = parse_context_list("y:1, x:bot");
  REQUIRE(l.size() == 2);
  CHECK(l[0].first == "y");
  CHECK_THROWS_AS(parse_context("x:1, x:bot"), SyntaxError);
  CHECK_THROWS_AS(parse_context("x:1,"), SyntaxError);
}

TEST_CASE("configurations") {
  Configuration c = parse_config("cut x:1 ([x[]], [x().0])");
  CHECK(c.kind() == Configuration::Kind::Cut);
  CHECK(c.str() == "cut x:1 ([x[]], [x().0])");
  CHECK(parse_config("zero").kind() == Configuration::Kind::Zero);
  CHECK(parse_config("mix (zero, zero)").kind() == Configuration::Kind::Par);
  CHECK(parse_config("cweak x:?1.zero").kind() == Configuration::Kind::Weak);
  CHECK(parse_config("ccon a,b.zero").kind() == Configuration::Kind::Con);
  CHECK_THROWS_AS(parse_config("cut x:1 ([x[]] [x().0])"), SyntaxError);
}

TEST_CASE("print then parse is the identity on enumerated processes") {
  EnumOptions opt;
  opt.sys = System::CP02;
  opt.cut_types = {Formula::one(), Formula::bot()};
  std::vector<TypingContext> ctxs = {
      {{"x", Formula::tensor(Formula::one(), Formula::bot())}, {"y", Formula::par(Formula::bot(), Formula::one())}},
      {{"x", Formula::with(Formula::one(), Formula::one())}, {"y", Formula::bot()}},
      {{"x", Formula::why_not(Formula::bot())}, {"y", Formula::of_course(Formula::one())}},
      {}};
  long n = 0;
  for (const auto& ctx : ctxs)
    for (const auto& p : enumerate_processes(ctx, 5, opt)) {
      Process q = parse_process(p.str());
      CHECK(alpha_eq(q, p));
      CHECK(q.str() == p.str());
      ++n;
    }
  CHECK(n > 100);
}

TEST_CASE("type printing round trips") {
  for (const auto& a : enumerate_formulas(2, all_connectives())) CHECK(parse_type(a.str()) == a);
}
