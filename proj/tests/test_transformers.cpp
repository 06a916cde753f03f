#include <doctest.h>

#include <random>

#include "cpwb/denotation.hpp"
#include "cpwb/enumerate.hpp"
#include "cpwb/text.hpp"
#include "cpwb/transformers.hpp"
#include "cpwb/translation.hpp"

using namespace cpwb;

namespace {

Formula T(const std::string& s) { return parse_type(s); }
Obs S() { return Obs::star(); }

TupleSet graph_of(const Formula& a, int K) {
  TypingContext ctx{{"x", dual(a)}, {"x'", translate_formula_dual(a)}};
  return denote(transformer(a, "x", "x'"), ctx, System::CP02, K).tuples;
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

TEST_CASE("transformer graphs at small types") {
  CHECK(graph_of(T("bot"), 2) == TupleSet{{{"x", S()}, {"x'", S()}}});
  CHECK(graph_of(T("1"), 2) == TupleSet{{{"x", S()}, {"x'", Obs::pair(S(), S())}}});
  const Obs inner = Obs::pair(Obs::pair(S(), S()), S());
  CHECK(graph_of(T("(1 + 1)"), 2) ==
        TupleSet{{{"x", Obs::tag(1, S())}, {"x'", Obs::pair(Obs::tag(1, inner), S())}},
                 {{"x", Obs::tag(2, S())}, {"x'", Obs::pair(Obs::tag(2, inner), S())}}});
  CHECK(graph_of(T("(bot % 1)"), 2) ==
        TupleSet{{{"x", Obs::pair(S(), S())}, {"x'", Obs::pair(S(), Obs::pair(S(), S()))}}});
}

TEST_CASE("transformer graphs match the observation image") {
  for (const auto& a : enumerate_formulas(2, all_connectives())) {
    if (obs_space_size(a, 2, 200) > 100) continue;
    CAPTURE(a.str());
    Verdict v = check_transformer_graph(a, 2);
    CHECK_MESSAGE(v.holds, v.detail);
  }
  for (const char* s : {"!?1", "?!bot", "!(1 + bot)"}) {
    CAPTURE(s);
    CHECK(check_transformer_graph(T(s), 2).holds);
    CHECK(check_transformer_graph(T(s), 1).holds);
  }
}

TEST_CASE("transformer contexts") {
  TransformerContext e = transformer_context({});
  CHECK(e.closing == "z");
  CHECK(e.context.result == TypingContext{{"z", T("1")}});
  CHECK(e.context.term.kind() == ContextTerm::Kind::Mix);

  TransformerContext c = transformer_context(parse_context("x:1, y:bot"));
  CHECK(c.renamed.at("x") == "x'");
  CHECK(c.renamed.at("y") == "y'");
  CHECK(c.context.result ==
        TypingContext{{"x'", T("(1 * bot)")}, {"y'", T("bot")}, {"z", T("1")}});

  // The closing name avoids the context.
  TransformerContext z = transformer_context(parse_context("z:1"));
  CHECK(z.closing != "z");
  CHECK(z.context.result.count(z.closing));
}

TEST_CASE("context denotation examples") {
  const ContextTerm beside = ContextTerm::mix(ContextTerm::hole(), parse_process("y[]"));
  CHECK(context_denotation(beside, {}, {{"y", T("1")}}, {ObsTuple{}}, System::CP02, 2) ==
        TupleSet{{{"y", S()}}});
  CHECK(context_denotation(beside, {}, {{"y", T("1")}}, {}, System::CP02, 2).empty());

  const ContextTerm cut = ContextTerm::cut("x", T("1"), ContextTerm::hole(), parse_process("x().y[]"));
  CHECK(context_denotation(cut, {{"x", T("1")}}, {{"y", T("1")}}, {{{"x", S()}}}, System::CP, 2) ==
        TupleSet{{{"y", S()}}});

  const ContextTerm pick =
      ContextTerm::cut("x", T("(1 + 1)"), ContextTerm::hole(), parse_process("x>{x().y<1.y[] ; x().y<2.y[]}"));
  TypingContext hole{{"x", T("(1 + 1)")}}, res{{"y", T("(1 + 1)")}};
  CHECK(context_denotation(pick, hole, res, {{{"x", Obs::tag(2, S())}}}, System::CP, 2) ==
        TupleSet{{{"y", Obs::tag(2, S())}}});

  CHECK(error_of([&] {
          context_denotation(cut, {{"x", T("1")}}, {{"y", T("1")}}, {{{"x", Obs::tag(1, S())}}}, System::CP, 2);
        }) == ErrorCode::SortMismatch);
}

TEST_CASE("context denotation agrees with filling") {
  EnumOptions opt;
  opt.sys = System::CP02;
  for (const char* c : {"x:1", "x:(1 + bot)", "x:bot, y:1", "x:?1"}) {
    TypingContext ctx = parse_context(c);
    TransformerContext tc = transformer_context(ctx);
    for (const auto& p : enumerate_processes(ctx, 4, opt)) {
      CAPTURE(p.str());
      Process filled = fill(tc.context, p, System::CP02);
      CHECK(context_denotation(tc.context.term, ctx, tc.context.result, denote(p, ctx, System::CP02, 2).tuples,
                               System::CP02, 2) == denote(filled, tc.context.result, System::CP02, 2).tuples);
    }
  }
}

TEST_CASE("cut order inside the context does not matter") {
  TypingContext ctx = parse_context("x:(1 + bot), y:(bot % 1)");
  const Formula a = ctx.at("x"), b = ctx.at("y");
  auto xs = [&] { return transformer(a, "x", "x'"); };
  auto ys = [&] { return transformer(b, "y", "y'"); };
  ContextTerm xy = ContextTerm::cut("y", b, ContextTerm::cut("x", a, ContextTerm::hole(), xs()), ys());
  ContextTerm yx = ContextTerm::cut("x", a, ContextTerm::cut("y", b, ContextTerm::hole(), ys()), xs());
  TypingContext res{{"x'", translate_formula_dual(a)}, {"y'", translate_formula_dual(b)}};
  const TupleSet space = ctx_space(ctx, 2);
  std::vector<ObsTuple> items(space.begin(), space.end());
  for (unsigned mask = 0; mask < (1u << items.size()); ++mask) {
    TupleSet x;
    for (unsigned i = 0; i < items.size(); ++i)
      if (mask >> i & 1u) x.insert(items[i]);
    CHECK(context_denotation(xy, ctx, res, x, System::CP02, 2) == context_denotation(yx, ctx, res, x, System::CP02, 2));
  }
}

TEST_CASE("transformer theorem on sampled sets") {
  std::mt19937_64 rng(3);
  for (const char* c : {"x:1", "x:(1 * bot)", "x:(1 & 1), y:bot", "x:?1", "x:!bot, y:(1 + 1)"}) {
    TypingContext ctx = parse_context(c);
    const TupleSet space = ctx_space(ctx, 2);
    std::vector<ObsTuple> items(space.begin(), space.end());
    for (int round = 0; round < 12; ++round) {
      TupleSet x;
      for (const auto& t : items)
        if (rng() % 2) x.insert(t);
      Verdict v = check_transformer_theorem(ctx, x, 2);
      CAPTURE(c);
      CHECK_MESSAGE(v.holds, v.detail);
    }
  }
  TypingContext sum = parse_context("x:(1 + bot)");
  CHECK_FALSE(check_transformer_theorem(sum, {{{"x", Obs::tag(1, S())}}}, 2, Mutant::SwapTags).holds);
}

TEST_CASE("filled transformer context agrees with the translation") {
  EnumOptions opt;
  opt.sys = System::CP02;
  opt.cut_types = {T("1")};
  for (const char* c : {"x:1", "x:(1 + bot)", "x:(bot % 1)", "x:bot, y:1", "x:?1", "x:!1"}) {
    TypingContext ctx = parse_context(c);
    for (const auto& p : enumerate_processes(ctx, 4, opt)) {
      CAPTURE(p.str());
      Verdict v = check_transformer_correct(p, ctx, System::CP02, 2);
      CHECK_MESSAGE(v.holds, v.detail);
    }
  }
}

TEST_CASE("second full abstraction on a family") {
  EnumOptions opt;
  opt.sys = System::CP02;
  for (const char* c : {"x:(1 + 1)", "x:bot, y:1", "x:?bot"}) {
    TypingContext ctx = parse_context(c);
    auto ps = enumerate_processes(ctx, 4, opt);
    for (size_t i = 0; i < ps.size(); ++i)
      for (size_t j = i; j < ps.size(); ++j) CHECK(full_abstraction_II(ps[i], ps[j], ctx, 2).holds);
  }
  FullAbstractionIIVerdict v =
      full_abstraction_II(parse_process("x<1.x[]"), parse_process("x<2.x[]"), parse_context("x:(1 + 1)"), 2);
  CHECK(v.holds);
  CHECK_FALSE(v.image_equivalent);
}

TEST_CASE("a forwarder at the units is a pair of halves") {
  TypingContext ctx = parse_context("x:1, y:bot");
  CHECK(equivalent(parse_process("fwd x y"), parse_process("(x[] | y().0)"), ctx, System::CP02, 2));
}

TEST_CASE("client transformer hands every bag element through") {
  // T(?A) relates each bag over A to the bag of images.
  const Formula q = T("?(1 + 1)");
  TupleSet g = graph_of(q, 2);
  CHECK(g.size() == obs_space(q, 2).size());
  for (const auto& t : g) {
    CHECK(t.at("x").items().size() == t.at("x'").items().size());
    CHECK(t.at("x'") == l_obs(q, t.at("x")));
  }
}

namespace {

using PR = Process;

// P inside its transformer context, closing on `closing`; returns the filled
// term and the printed name of `subject`.
std::pair<Process, Name> inside(const Process& p, const TypingContext& ctx, const Name& subject,
                                const Name& closing) {
  TransformerContext tc = transformer_context(ctx, closing);
  REQUIRE(tc.closing == closing);
  return {fill(tc.context, p, System::CP02), tc.renamed.at(subject)};
}

struct Whole {
  Process term;
  TypingContext ctx;
  std::map<Name, Name> renamed;
  Name closing;
};

Whole whole(const Process& p, const TypingContext& ctx) {
  TransformerContext tc = transformer_context(ctx);
  return {fill(tc.context, p, System::CP02), tc.context.result, tc.renamed, tc.closing};
}

TypingContext plus(TypingContext a, const Name& x, const Formula& t) {
  a[x] = t;
  return a;
}

void same(const Process& lhs, const Whole& rhs) {
  CAPTURE(lhs.str());
  CAPTURE(rhs.term.str());
  CHECK(equivalent(lhs, rhs.term, rhs.ctx, System::CP02, 2));
}

const std::vector<TypingContext> kSides = {{}, {{"u", Formula::one()}}};

EnumOptions cp02() {
  EnumOptions o;
  o.sys = System::CP02;
  return o;
}

}  // namespace

TEST_CASE("transformer equivalences: input") {
  const std::vector<Formula> units = {T("1"), T("bot")};
  for (const auto& side : kSides)
    for (const auto& a : units)
      for (const auto& b : units) {
        TypingContext inner = plus(plus(side, "y", a), "x", b);
        for (const auto& p : enumerate_processes(inner, 4, cp02())) {
          Whole r = whole(PR::in("x", "y", p), plus(side, "x", Formula::par(a, b)));
          TransformerContext tc = transformer_context(inner, r.closing);
          Process lhs = PR::in(r.renamed.at("x"), tc.renamed.at("y"), fill(tc.context, p, System::CP02));
          same(lhs, r);
        }
      }
}

TEST_CASE("transformer equivalences: server") {
  for (const TypingContext& side : std::vector<TypingContext>{{}, {{"u", T("?1")}}})
    for (const auto& a : {T("1"), T("bot"), T("(1 + 1)")}) {
      for (const auto& p : enumerate_processes(plus(side, "y", a), 4, cp02())) {
        Whole r = whole(PR::server("x", "y", p), plus(side, "x", Formula::of_course(a)));
        auto [t, y2] = inside(p, plus(side, "y", a), "y", "k");
        const Name x2 = r.renamed.at("x");
        Process lhs = PR::par(PR::out(x2, "v", PR::server("v", "k", PR::in("k", y2, t)), PR::empty_in(x2, PR::inact())),
                              PR::empty_out(r.closing));
        same(lhs, r);
      }
    }
}

TEST_CASE("transformer equivalences: client") {
  for (const auto& side : kSides)
    for (const auto& a : {T("1"), T("bot"), T("(1 & 1)")}) {
      for (const auto& p : enumerate_processes(plus(side, "y", a), 4, cp02())) {
        Whole r = whole(PR::client("x", "y", p), plus(side, "x", Formula::why_not(a)));
        auto [t, y2] = inside(p, plus(side, "y", a), "y", "k");
        Process lhs = PR::par(
            PR::client(r.renamed.at("x"), "m", PR::out("m", "k", PR::in("k", y2, t), PR::empty_in("m", PR::inact()))),
            PR::empty_out(r.closing));
        same(lhs, r);
      }
    }
}

TEST_CASE("transformer equivalences: select") {
  const std::vector<Formula> units = {T("1"), T("bot")};
  for (const auto& side : kSides)
    for (const auto& a1 : units)
      for (const auto& a2 : units)
        for (int i = 1; i <= 2; ++i) {
          const Formula ai = i == 1 ? a1 : a2;
          for (const auto& p : enumerate_processes(plus(side, "y", ai), 4, cp02())) {
            Whole r = whole(PR::select("y", i, p), plus(side, "y", Formula::plus(a1, a2)));
            auto [t, y2] = inside(p, plus(side, "y", ai), "y", "k");
            const Name s = r.renamed.at("y");
            Process lhs = PR::par(
                PR::out(s, "k", PR::select("k", i, PR::in("k", y2, t)), PR::empty_in(s, PR::inact())),
                PR::empty_out(r.closing));
            same(lhs, r);
          }
        }
}

TEST_CASE("transformer equivalences: case") {
  const std::vector<Formula> units = {T("1"), T("bot")};
  for (const auto& side : kSides)
    for (const auto& a1 : units)
      for (const auto& a2 : units) {
        auto p1s = enumerate_processes(plus(side, "y", a1), 3, cp02());
        auto p2s = enumerate_processes(plus(side, "y", a2), 3, cp02());
        for (const auto& p1 : p1s)
          for (const auto& p2 : p2s) {
            Whole r = whole(PR::offer("y", p1, p2), plus(side, "y", Formula::with(a1, a2)));
            auto [t1, y1] = inside(p1, plus(side, "y", a1), "y", r.closing);
            auto [t2, y2] = inside(p2, plus(side, "y", a2), "y", r.closing);
            REQUIRE(y1 == r.renamed.at("y"));
            REQUIRE(y2 == y1);
            same(PR::offer(y1, t1, t2), r);
          }
      }
}

TEST_CASE("transformer equivalences: output") {
  const std::vector<Formula> units = {T("1"), T("bot")};
  for (const auto& side : kSides)
    for (const auto& a : units)
      for (const auto& b : units) {
        auto p1s = enumerate_processes(plus(side, "y", a), 3, cp02());
        auto p2s = enumerate_processes({{"x", b}}, 3, cp02());
        for (const auto& p1 : p1s)
          for (const auto& p2 : p2s) {
            Whole r = whole(PR::out("x", "y", p1, p2), plus(side, "x", Formula::tensor(a, b)));
            auto [t1, y2] = inside(p1, plus(side, "y", a), "y", "k1");
            auto [t2, x3] = inside(p2, {{"x", b}}, "x", "k2");
            const Name s = r.renamed.at("x");
            Process lhs = PR::par(
                PR::out(s, "k2", PR::out("k2", "k1", PR::in("k1", y2, t1), PR::in("k2", x3, t2)),
                        PR::empty_in(s, PR::inact())),
                PR::empty_out(r.closing));
            same(lhs, r);
          }
      }
}
