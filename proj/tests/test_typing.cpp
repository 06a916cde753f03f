#include <doctest.h>

#include "cpwb/enumerate.hpp"
#include "cpwb/text.hpp"
#include "cpwb/typing.hpp"

using namespace cpwb;

namespace {

ErrorCode error_of(const std::string& p, const std::string& ctx, System sys) {
  try {
    check(parse_process(p), parse_context(ctx), sys);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for " << p);
  return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("rule 1") {
  Derivation d = check(parse_process("x[]"), parse_context("x:1"), System::CP);
  CHECK(d.rule == Rule::One);
  CHECK(d.premises.empty());
}

TEST_CASE("inaction needs mix0") {
  CHECK(error_of("0", "", System::CP) == ErrorCode::SystemViolation);
  CHECK(check(Process::inact(), {}, System::CP0).rule == Rule::Mix0);
  CHECK(error_of("x[] | y[]", "x:1, y:1", System::CP0) == ErrorCode::SystemViolation);
  CHECK(check(parse_process("x[] | y[]"), parse_context("x:1, y:1"), System::CP02).rule == Rule::Mix2);
}

TEST_CASE("forwarder needs dual types") {
  CHECK(error_of("fwd x y", "x:1, y:1", System::CP) == ErrorCode::RuleMismatch);
  CHECK(check(parse_process("fwd x y"), parse_context("x:1, y:bot"), System::CP).rule == Rule::Id);
}

TEST_CASE("errors") {
  CHECK(error_of("x[]", "", System::CP) == ErrorCode::UnboundName);
  CHECK(error_of("x[]", "x:1, y:1", System::CP) == ErrorCode::LinearityViolation);
  CHECK(error_of("x[y](y[] | y[])", "x:(1 * 1), y:1", System::CP) == ErrorCode::LinearityViolation);
  CHECK(error_of("x[]", "x:bot", System::CP) == ErrorCode::RuleMismatch);
  CHECK(error_of("!x(y).y().z[]", "x:!bot, z:1", System::CP) == ErrorCode::NonBangContext);
  CHECK(error_of("new x:1 (x[] | x[])", "", System::CP) == ErrorCode::RuleMismatch);
  CHECK(error_of("weak x:?1.y[]", "x:?bot, y:1", System::CP) == ErrorCode::RuleMismatch);
  CHECK(error_of("ctr x<a,a>.fwd a a", "x:?1", System::CP) == ErrorCode::LinearityViolation);
  CHECK(error_of("x(x).x[]", "x:(1 % 1)", System::CP) == ErrorCode::LinearityViolation);
}

TEST_CASE("every rule") {
  struct Case {
    const char* p;
    const char* ctx;
    Rule r;
  };
  const Case cases[] = {
      {"x[y](y[] | x[])", "x:(1 * 1)", Rule::Tensor},
      {"x(y).y().x[]", "x:(bot % 1)", Rule::Par},
      {"x<2.x[]", "x:(bot + 1)", Rule::Plus},
      {"x>{x[] ; x[]}", "x:(1 & 1)", Rule::With},
      {"!x(y).y[]", "x:!1", Rule::OfCourse},
      {"?x[y].y[]", "x:?1", Rule::WhyNot},
      {"weak x:?1.y[]", "x:?1, y:1", Rule::Weaken},
      {"ctr x<a,b>.weak a:?1.?b[c].c[]", "x:?1", Rule::Contract},
      {"new x:1 (x[] | x().y[])", "y:1", Rule::Cut},
  };
  for (const auto& c : cases) {
    CAPTURE(c.p);
    CHECK(check(parse_process(c.p), parse_context(c.ctx), System::CP).rule == c.r);
  }
  CHECK(check(parse_process("x().y[]"), parse_context("x:bot, y:1"), System::CP).rule == Rule::Bot);
}

TEST_CASE("contraction of a ?-name into a forwarder is ill typed") {
  // ?(1 * 1) and ?(1 * 1) are not dual; the forwarder rejects it.
  CHECK_THROWS_AS(check(parse_process("ctr x<a,b>.fwd a b"), parse_context("x:?(1 * 1)"), System::CP), Error);
}

TEST_CASE("server context must be all why-not") {
  CHECK(check(parse_process("!x(y).?z[u].fwd y u"), parse_context("x:!1, z:?bot"), System::CP).rule ==
        Rule::OfCourse);
}

TEST_CASE("determinism and subject correspondence") {
  EnumOptions opt;
  opt.sys = System::CP;
  opt.cut_types = {Formula::one()};
  TypingContext ctx{{"x", Formula::plus(Formula::one(), Formula::bot())}, {"y", Formula::bot()}};
  for (const auto& p : enumerate_processes(ctx, 5, opt)) {
    Derivation a = check(p, ctx, System::CP);
    Derivation b = check(p, ctx, System::CP);
    CHECK(a.process == p);
    CHECK(a.ctx == ctx);
    CHECK(derivation_summary(a) == derivation_summary(b));
  }
}

TEST_CASE("monotone in the system") {
  std::vector<TypingContext> ctxs = {
      {{"x", Formula::one()}},
      {{"x", Formula::tensor(Formula::one(), Formula::bot())}, {"y", Formula::bot()}},
      {{"x", Formula::why_not(Formula::one())}}};
  EnumOptions cp;
  cp.cut_types = {Formula::one()};
  EnumOptions cp0 = cp;
  cp0.sys = System::CP0;
  for (const auto& ctx : ctxs) {
    for (const auto& p : enumerate_processes(ctx, 4, cp)) {
      CHECK_NOTHROW(check(p, ctx, System::CP0));
      CHECK_NOTHROW(check(p, ctx, System::CP02));
    }
    for (const auto& p : enumerate_processes(ctx, 4, cp0)) CHECK_NOTHROW(check(p, ctx, System::CP02));
  }
}

TEST_CASE("typed contexts") {
  TypingContext x1{{"x", Formula::one()}};
  ContextDerivation h = check_context(ContextTerm::hole(), x1, x1, System::CP);
  CHECK(h.kind == ContextDerivation::Kind::Hole);

  ContextTerm k = ContextTerm::cut("x", Formula::one(), ContextTerm::hole(), parse_process("x().y[]"));
  TypingContext y1{{"y", Formula::one()}};
  ContextDerivation c = check_context(k, x1, y1, System::CP);
  CHECK(c.kind == ContextDerivation::Kind::Cut);
  CHECK_THROWS_AS(check_context(k, x1, {{"y", Formula::bot()}}, System::CP), Error);

  ContextTerm m = ContextTerm::mix(ContextTerm::hole(), parse_process("x[]"));
  CHECK_THROWS_AS(check_context(m, y1, {{"x", Formula::one()}, {"y", Formula::one()}}, System::CP), Error);
  CHECK_NOTHROW(check_context(m, y1, {{"x", Formula::one()}, {"y", Formula::one()}}, System::CP02));
  ContextTerm bad = ContextTerm::mix(ContextTerm::hole(), parse_process("x().0"));
  CHECK_THROWS_AS(check_context(bad, y1, {{"x", Formula::one()}, {"y", Formula::one()}}, System::CP02), Error);
  try {
    check_context(ContextTerm::hole(), x1, y1, System::CP);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HoleTypeMismatch);
  }
}

TEST_CASE("fill") {
  TypingContext x1{{"x", Formula::one()}};
  CHECK(fill(ContextTerm::hole(), parse_process("x[]")) == parse_process("x[]"));
  ContextTerm k = ContextTerm::cut("x", Formula::one(), ContextTerm::hole(), parse_process("x().y[]"));
  TypedContext t = make_typed_context(k, x1, {{"y", Formula::one()}}, System::CP);
  Process f = fill(t, parse_process("x[]"), System::CP);
  CHECK(f == parse_process("new x:1 (x[] | x().y[])"));
  CHECK_NOTHROW(check(f, t.result, System::CP));
  try {
    fill(t, parse_process("x().0"), System::CP0);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TypeMismatch);
  }
}

TEST_CASE("fill lemma on enumerated pairs") {
  const Formula a = Formula::plus(Formula::one(), Formula::bot());
  TypingContext hole{{"x", a}};
  EnumOptions opt;
  opt.sys = System::CP02;
  std::vector<TypedContext> ks;
  for (const auto& q : enumerate_processes({{"x", dual(a)}, {"y", Formula::one()}}, 6, opt))
    ks.push_back(make_typed_context(ContextTerm::cut("x", a, ContextTerm::hole(), q), hole,
                                    {{"y", Formula::one()}}, System::CP02));
  ks.push_back(make_typed_context(ContextTerm::mix(ContextTerm::hole(), parse_process("z[]")), hole,
                                  {{"x", a}, {"z", Formula::one()}}, System::CP02));
  REQUIRE(ks.size() > 2);
  for (const auto& k : ks)
    for (const auto& p : enumerate_processes(hole, 4, opt)) CHECK_NOTHROW(check(fill(k, p, System::CP02), k.result, System::CP02));
}
