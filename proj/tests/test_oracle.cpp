#include <doctest.h>

#include "cpwb/enumerate.hpp"
#include "cpwb/oracle.hpp"
#include "cpwb/text.hpp"

using namespace cpwb;

namespace {

Obs S() { return Obs::star(); }

TupleSet obs(const std::string& c, int K = 2) {
  ObserveOptions o;
  o.K = K;
  return observe(parse_config(c), o).observations;
}

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

TEST_CASE("configuration typing") {
  ConfigTyping z = check_config(Configuration::zero(), System::CP0);
  CHECK(z.gamma.empty());
  CHECK(z.theta.empty());
  ConfigTyping p = check_config(parse_config("[x[]]"), System::CP, {{"x", Formula::one()}});
  CHECK(p.gamma == TypingContext{{"x", Formula::one()}});
  CHECK(p.theta.empty());
  ConfigTyping c = check_config(parse_config("cut x:1 ([x[]], [x().0])"), System::CP0);
  CHECK(c.gamma.empty());
  CHECK(c.theta == TypingContext{{"x", Formula::one()}});
}

TEST_CASE("configuration typing errors") {
  CHECK(error_of([] { check_config(parse_config("cut x:1 ([x[]], [x[]])"), System::CP); }) ==
        ErrorCode::CutTypeMismatch);
  CHECK(error_of([] { check_config(parse_config("mix (zero, zero)"), System::CP0); }) ==
        ErrorCode::SystemViolation);
  CHECK_NOTHROW(check_config(parse_config("mix (zero, zero)"), System::CP02));
  CHECK(error_of([] { observe(parse_config("[x[]]"), {}); }) == ErrorCode::OpenConfiguration);
}

TEST_CASE("stop and the unit cut") {
  CHECK(obs("zero") == TupleSet{ObsTuple{}});
  CHECK(obs("cut x:1 ([x[]], [x().0])") == TupleSet{{{"x", S()}}});
  CHECK(obs("mix (zero, zero)") == TupleSet{ObsTuple{}});
}

TEST_CASE("link relates both ends") {
  TupleSet s = obs("cut x:1 ([x[]], cut y:1 ([fwd x y], [y().0]))");
  CHECK(s == TupleSet{{{"x", S()}, {"y", S()}}});
  TupleSet t = obs("cut x:(1 + 1) ([x<2.x[]], cut y:(1 + 1) ([fwd x y], [y>{y().0 ; y().0}]))");
  CHECK(t == TupleSet{{{"x", Obs::tag(2, S())}, {"y", Obs::tag(2, S())}}});
}

TEST_CASE("output, input, select, case") {
  CHECK(obs("cut x:(1 * 1) ([x[y](y[] | x[])], [x(y).y().x().0])") ==
        TupleSet{{{"x", Obs::pair(S(), S())}}});
  CHECK(obs("cut x:(1 & bot) ([x>{x[] ; x().0}], [x<2.x[]])") == TupleSet{{{"x", Obs::tag(2, S())}}});
}

TEST_CASE("servers: weakening, one client, contraction") {
  CHECK(obs("cut x:!1 ([!x(y).y[]], cweak x:?bot.zero)") == TupleSet{{{"x", Obs::bag({})}}});
  CHECK(obs("cut x:!1 ([!x(y).y[]], [?x[y].y().0])") == TupleSet{{{"x", Obs::bag({S()})}}});
  const std::string two = "cut a:!1 ([!a(y).y[]], ccon a,b.[?a[c].c().?b[d].d().0])";
  CHECK(obs(two, 2) == TupleSet{{{"a", Obs::bag({S(), S()})}}});
  CHECK(obs(two, 1).empty());
  CHECK(adequacy_check(parse_config(two), 2).holds);
  CHECK(adequacy_check(parse_config(two), 1).holds);
}

TEST_CASE("depth budget") {
  ObserveOptions o;
  o.depth = 1;
  ObserveResult r = observe(parse_config("cut x:(1 * 1) ([x[y](y[] | x[])], [x(y).y().x().0])"), o);
  CHECK(r.depth_exceeded);
  CHECK(error_of([] { adequacy_check(parse_config("cut x:(1 * 1) ([x[y](y[] | x[])], [x(y).y().x().0])"), 2, 1); }) ==
        ErrorCode::DepthExceeded);
}

TEST_CASE("adequacy examples") {
  CHECK(adequacy_check(parse_config("cut x:1 ([x[]], [x().0])"), 2).holds);
  CHECK(adequacy_check(Configuration::zero(), 2).holds);
  AdequacyResult r = adequacy_check(parse_config("cut x:(1 + 1) ([x<1.x[]], [x>{x().0 ; x().0}])"), 2);
  CHECK(r.holds);
  CHECK(r.operational == TupleSet{{{"x", Obs::tag(1, S())}}});
}

TEST_CASE("configuration denotation keeps cut coordinates") {
  TupleSet d = config_denote(parse_config("cut x:(1 + 1) ([x<1.x[]], [x>{x().0 ; x().0}])"), System::CP0, 2);
  CHECK(d == TupleSet{{{"x", Obs::tag(1, S())}}});
}

TEST_CASE("adequacy and schedule invariance on enumerated cuts") {
  EnumOptions opt;
  opt.sys = System::CP0;
  opt.cut_types = {Formula::one()};
  const std::vector<Formula> types = {parse_type("(1 * bot)"), parse_type("(1 + bot)"), parse_type("!1"),
                                      parse_type("?(1 & 1)")};
  long n = 0;
  for (const auto& a : types) {
    for (const auto& p : enumerate_processes({{"x", a}}, 4, opt))
      for (const auto& q : enumerate_processes({{"x", dual(a)}}, 4, opt)) {
        Configuration c = Configuration::cut("x", a, Configuration::proc(p), Configuration::proc(q));
        AdequacyResult r = adequacy_check(c, 2);
        CAPTURE(c.str());
        CHECK(r.holds);
        for (const auto& t : r.operational) CHECK(well_sorted(t.at("x"), a));
        for (std::uint64_t seed : {1u, 7u, 42u}) {
          ObserveOptions o;
          o.schedule_seed = seed;
          CHECK(observe(c, o).observations == r.operational);
        }
        ++n;
      }
  }
  CHECK(n > 20);
}

TEST_CASE("reassociating cuts does not change observations") {
  const std::string a = "cut x:1 ([x[]], cut y:1 ([fwd x y], [y().0]))";
  const std::string b = "cut y:1 (cut x:1 ([x[]], [fwd x y]), [y().0])";
  CHECK(obs(a) == obs(b));
}
