#include <doctest.h>

#include "cpwb/enumerate.hpp"
#include "cpwb/obs_transform.hpp"
#include "cpwb/text.hpp"
#include "cpwb/translation.hpp"

using namespace cpwb;

namespace {

Formula T(const std::string& s) { return parse_type(s); }
Obs S() { return Obs::star(); }
Obs P(const Obs& a, const Obs& b) { return Obs::pair(a, b); }

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("observation images") {
  CHECK(l_obs(T("bot"), S()) == S());
  CHECK(l_obs(T("1"), S()) == P(S(), S()));
  CHECK(l_obs(T("(1 % bot)"), P(S(), S())) == P(P(S(), S()), S()));
  CHECK(l_obs(T("(1 * bot)"), P(S(), S())) == P(P(P(P(S(), S()), S()), P(S(), S())), S()));
  CHECK(l_obs(T("(1 + 1)"), Obs::tag(1, S())) == P(Obs::tag(1, P(P(S(), S()), S())), S()));
  CHECK(l_obs(T("(bot & 1)"), Obs::tag(2, S())) == Obs::tag(2, P(S(), S())));
  CHECK(l_obs(T("?1"), Obs::bag({S()})) == Obs::bag({P(P(P(S(), S()), S()), S())}));
  CHECK(l_obs(T("!bot"), Obs::bag({S(), S()})) == P(Obs::bag({P(S(), S()), P(S(), S())}), S()));
}

TEST_CASE("images of ill-sorted observations are rejected") {
  CHECK(error_of([] { l_obs(T("1"), Obs::tag(1, S())); }) == ErrorCode::SortMismatch);
  CHECK(error_of([] { l_obs(T("(1 * 1)"), S()); }) == ErrorCode::SortMismatch);
  CHECK(error_of([] { l_obs(T("!1"), P(S(), S())); }) == ErrorCode::SortMismatch);
}

TEST_CASE("context images add the residual") {
  TypingContext ctx{{"x", T("1")}, {"y", T("bot")}};
  ObsTuple t = l_ctx(ctx, {{"x", S()}, {"y", S()}}, "w");
  CHECK(t == ObsTuple{{"x", P(S(), S())}, {"y", S()}, {"w", S()}});
  CHECK(l_set(ctx, {}, "w").empty());
}

TEST_CASE("images are well sorted and injective") {
  for (const auto& a : enumerate_formulas(2, all_connectives())) {
    if (obs_space_size(a, 2, 200) > 64) continue;
    const Formula img = translate_formula_dual(a);
    std::set<Obs> seen;
    for (const auto& o : obs_space(a, 2)) {
      Obs i = l_obs(a, o);
      CAPTURE(a.str());
      CAPTURE(o.str());
      CHECK(well_sorted(i, img));
      CHECK(seen.insert(i).second);
    }
  }
}

TEST_CASE("why-not images commute with bag union") {
  for (const auto& a : enumerate_formulas(1, all_connectives())) {
    const Formula q = Formula::why_not(a);
    const auto space = obs_space(q, 2);
    for (const auto& x : space)
      for (const auto& y : space)
        CHECK(l_obs(q, bag_union(x, y)) == bag_union(l_obs(q, x), l_obs(q, y)));
  }
}

TEST_CASE("translation theorem examples") {
  struct Row {
    const char* proc;
    const char* ctx;
    System sys;
  };
  const Row rows[] = {
      {"x[]", "x:1", System::CP},
      {"x().y[]", "x:bot, y:1", System::CP},
      {"fwd x y", "x:(1 + bot), y:(bot & 1)", System::CP},
      {"x<2.x().y[]", "x:(1 + bot), y:1", System::CP},
      {"x>{x[] ; x[]}", "x:(1 & 1)", System::CP},
      {"x[y](y[] | x[])", "x:(1 * 1)", System::CP},
      {"x(y).y().x[]", "x:(bot % 1)", System::CP},
      {"!x(y).y[]", "x:!1", System::CP},
      {"?x[y].y().0", "x:?bot", System::CP0},
      {"weak x:?1.0", "x:?1", System::CP0},
      {"ctr x<a,b>.weak a:?1.?b[c].c[]", "x:?1", System::CP},
      {"(x[] | y[])", "x:1, y:1", System::CP02},
      {"new c:1 (c[] | c().x[])", "x:1", System::CP},
  };
  for (const auto& r : rows) {
    CAPTURE(r.proc);
    TypingContext ctx = parse_context(r.ctx);
    Verdict v = check_translation_theorem(parse_process(r.proc), ctx, r.sys, 2);
    CHECK_MESSAGE(v.holds, v.detail);
  }
}

TEST_CASE("the tag-swapping mutant breaks the theorem") {
  Verdict v = check_translation_theorem(parse_process("x<1.x[]"), parse_context("x:(1 + 1)"), System::CP, 2,
                                        Mutant::SwapTags);
  CHECK_FALSE(v.holds);
  CHECK_FALSE(v.only_expected.empty());
}

TEST_CASE("full abstraction on examples") {
  TypingContext sum = parse_context("x:(1 + 1)");
  FullAbstractionVerdict a =
      full_abstraction_I(parse_process("x<1.x[]"), parse_process("x<2.x[]"), sum, System::CP, 2);
  CHECK(a.holds);
  CHECK_FALSE(a.source_equivalent);
  CHECK_FALSE(a.image_equivalent);

  TypingContext link = parse_context("x:bot, y:1");
  FullAbstractionVerdict b =
      full_abstraction_I(parse_process("fwd x y"), parse_process("x().y[]"), link, System::CP, 2);
  CHECK(b.holds);
  CHECK(b.source_equivalent);
  CHECK(b.image_equivalent);
}

TEST_CASE("full abstraction over a small family") {
  EnumOptions opt;
  opt.sys = System::CP0;
  for (const char* c : {"x:(1 + 1)", "x:(bot & bot)", "x:?1", "x:(1 % bot)"}) {
    TypingContext ctx = parse_context(c);
    auto ps = enumerate_processes(ctx, 4, opt);
    for (size_t i = 0; i < ps.size(); ++i)
      for (size_t j = i; j < ps.size(); ++j) {
        CAPTURE(ps[i].str());
        CAPTURE(ps[j].str());
        CHECK(full_abstraction_I(ps[i], ps[j], ctx, System::CP0, 2).holds);
      }
  }
}

TEST_CASE("synchronizer is compatible with cuts") {
  EnumOptions opt;
  opt.sys = System::CP0;
  long n = 0;
  for (const auto& a : enumerate_formulas(1, all_connectives())) {
    auto ps = enumerate_processes({{"x", a}}, 4, opt);
    auto qs = enumerate_processes({{"x", dual(a)}}, 4, opt);
    for (const auto& p : ps)
      for (const auto& q : qs) {
        CAPTURE(p.str());
        CAPTURE(q.str());
        Verdict v = check_synchronizer_compat(p, q, "x", a, {}, {}, System::CP0, 2);
        CHECK_MESSAGE(v.holds, v.detail);
        ++n;
      }
  }
  CHECK(n > 50);
  // With side names on both halves.
  Verdict v = check_synchronizer_compat(parse_process("x[y](y[] | x().u[])"), parse_process("x(y).y().x[]"), "x",
                                        T("(1 * bot)"), parse_context("u:1"), {}, System::CP, 2);
  CHECK_MESSAGE(v.holds, v.detail);
}
