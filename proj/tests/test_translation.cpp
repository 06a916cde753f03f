#include <doctest.h>

#include "cpwb/denotation.hpp"
#include "cpwb/enumerate.hpp"
#include "cpwb/obs_transform.hpp"
#include "cpwb/text.hpp"
#include "cpwb/translation.hpp"

using namespace cpwb;

namespace {

Formula T(const std::string& s) { return parse_type(s); }

TypingContext sync_ctx(const Formula& a) {
  return {{"z", Formula::tensor(dual(translate_formula_dual(a)), Formula::bot())},
          {"w", Formula::tensor(dual(translate_formula_dual(dual(a))), Formula::bot())},
          {"s", Formula::one()}};
}

// Expected synchronizer graph: one tuple per observation of A.
TupleSet sync_graph(const Formula& a, int K) {
  TupleSet out;
  for (const auto& o : obs_space(a, K)) {
    ObsTuple t{{"z", Obs::pair(l_obs(a, o), Obs::star())},
               {"w", Obs::pair(l_obs(dual(a), o), Obs::star())},
               {"s", Obs::star()}};
    if (tuple_max_bag(t) <= K) out.insert(t);
  }
  return out;
}

}  // namespace

TEST_CASE("type images") {
  CHECK(translate_formula_dual(T("bot")) == T("bot"));
  CHECK(translate_formula_dual(T("1")) == T("(1 * bot)"));
  CHECK(translate_formula_dual(T("(1 % bot)")) == T("((1 * bot) % bot)"));
  CHECK(translate_formula_dual(T("(1 & bot)")) == T("((1 * bot) & bot)"));
  CHECK(translate_formula_dual(T("(1 * bot)")) == T("((((1 * bot) % 1) * (bot % 1)) * bot)"));
  CHECK(translate_formula_dual(T("(1 + bot)")) == T("((((1 * bot) % 1) + (bot % 1)) * bot)"));
  CHECK(translate_formula_dual(T("!bot")) == T("(!(bot % 1) * bot)"));
  CHECK(translate_formula_dual(T("?1")) == T("?(((1 * bot) % 1) * bot)"));
}

TEST_CASE("intuitionistic image") {
  const IllFormula u = IllFormula::unit();
  CHECK(translate_formula_ill(T("bot")) == u);
  CHECK(translate_formula_ill(T("1")) == IllFormula::lollipop(u, u));
  CHECK(embed_ill(IllFormula::lollipop(u, u)) == T("(bot % 1)"));
  CHECK(embed_ill(IllFormula::of_course(u)) == T("!1"));
}

TEST_CASE("dual image agrees with the embedded intuitionistic image") {
  for (const auto& a : enumerate_formulas(2, all_connectives())) {
    CAPTURE(a.str());
    CHECK(translate_formula_dual(a) == dual(embed_ill(translate_formula_ill(a))));
  }
}

TEST_CASE("translation of small terms") {
  Translated t = translate_process(check(parse_process("x[]"), {{"x", T("1")}}, System::CP));
  CHECK(t.residual == "w");
  CHECK(t.ctx == TypingContext{{"x", T("(1 * bot)")}, {"w", T("1")}});
  CHECK(denote(t.process, t.ctx, System::CP, 2).tuples ==
        TupleSet{{{"x", Obs::pair(Obs::star(), Obs::star())}, {"w", Obs::star()}}});

  Translated z = translate_process(check(Process::inact(), {}, System::CP0));
  CHECK(z.process.str() == "w[]");
  CHECK(denote(z.process, z.ctx, System::CP, 2).tuples == TupleSet{{{"w", Obs::star()}}});

  // w is taken: the residual moves.
  Translated m = translate_process(check(parse_process("w[]"), {{"w", T("1")}}, System::CP));
  CHECK(m.residual != "w");
  CHECK(m.ctx.count(m.residual));
}

TEST_CASE("display form primes the free names") {
  Derivation d = check(parse_process("x[]"), {{"x", T("1")}}, System::CP);
  Translated t = translate_for_display(d);
  CHECK(t.renamed.at("x") == "x'");
  CHECK(t.ctx.count("x'"));
  CHECK(canonical(denote(t.process, t.ctx, System::CP, 2).tuples) ==
        R"([{"w":"*","x'":["pair","*","*"]}])");
}

TEST_CASE("translation preserves typing and lands in cp") {
  const std::vector<Formula> base = enumerate_formulas(1, exponential_free_connectives());
  EnumOptions opt;
  opt.sys = System::CP02;
  opt.cut_types = {T("1"), T("bot")};
  long n = 0;
  for (const auto& ctx : enumerate_contexts(base, 2)) {
    if (ctx.size() == 2 && n > 3000) continue;
    for (const auto& p : enumerate_processes(ctx, 4, opt)) {
      Translated t = translate_process(check(p, ctx, System::CP02));
      TypingContext want = translate_ctx(ctx);
      want[t.residual] = T("1");
      CAPTURE(p.str());
      CHECK(t.ctx == want);
      CHECK_NOTHROW(check(t.process, t.ctx, System::CP));
      ++n;
    }
  }
  CHECK(n > 500);
}

TEST_CASE("synchronizer at the units") {
  TupleSet one = denote(synchronizer(T("1"), "z", "w", "s"), sync_ctx(T("1")), System::CP, 2).tuples;
  CHECK(canonical(one) == R"([{"s":"*","w":["pair","*","*"],"z":["pair",["pair","*","*"],"*"]}])");
  TupleSet bot = denote(synchronizer(T("bot"), "z", "w", "s"), sync_ctx(T("bot")), System::CP, 2).tuples;
  CHECK(canonical(bot) == R"([{"s":"*","w":["pair",["pair","*","*"],"*"],"z":["pair","*","*"]}])");
}

TEST_CASE("synchronizer graphs") {
  for (const auto& a : enumerate_formulas(1, all_connectives())) {
    CAPTURE(a.str());
    for (int K : {1, 2}) {
      TupleSet d = denote(synchronizer(a, "z", "w", "s"), sync_ctx(a), System::CP, K).tuples;
      CHECK(d == sync_graph(a, K));
    }
  }
  for (const char* s : {"((1 + bot) * 1)", "((1 % 1) & bot)", "!(1 + 1)", "?(bot & 1)"}) {
    CAPTURE(s);
    CHECK(denote(synchronizer(T(s), "z", "w", "s"), sync_ctx(T(s)), System::CP, 2).tuples ==
          sync_graph(T(s), 2));
  }
}

TEST_CASE("of-course at K=1 has singleton bags") {
  TupleSet d = denote(synchronizer(T("!1"), "z", "w", "s"), sync_ctx(T("!1")), System::CP, 1).tuples;
  CHECK(d.size() == 2);  // the empty bag and one element
  for (const auto& t : d) CHECK(t.at("z").max_bag() <= 1);
}

TEST_CASE("worked example: a unit cut vanishes after translation") {
  // L(new x:1 (x[] | x().y[]); s) against L(y[]; z) with z renamed to s.
  TypingContext ctx{{"y", T("1")}};
  Process cut = parse_process("new x:1 (x[] | x().y[])");
  Translated lp = translate_process(check(cut, ctx, System::CP), "s");
  Translated lq = translate_process(check(parse_process("y[]"), ctx, System::CP), "z");
  TypingContext rctx = lq.ctx;
  rctx.erase("z");
  rctx["s"] = T("1");
  TupleSet a = denote(lp.process, lp.ctx, System::CP, 2).tuples;
  TupleSet b = denote(substitute(lq.process, "s", "z"), rctx, System::CP, 2).tuples;
  CHECK(a == b);
  CHECK(a == TupleSet{{{"y", Obs::pair(Obs::star(), Obs::star())}, {"s", Obs::star()}}});
}
