#include "cpwb/obs_transform.hpp"

#include <algorithm>

#include "cpwb/translation.hpp"

namespace cpwb {

using FK = Formula::Kind;

namespace {

Obs with_star(const Obs& a) { return Obs::pair(a, Obs::star()); }

[[noreturn]] void sort_error(const Formula& a, const Obs& o) {
  throw Error(ErrorCode::SortMismatch, "observation " + o.str() + " does not fit " + a.str());
}

int tag_of(int i, Mutant m) { return m == Mutant::SwapTags ? 3 - i : i; }

}  // namespace

Obs l_obs(const Formula& a, const Obs& o, Mutant m) {
  switch (a.kind()) {
    case FK::Bot:
      if (o.kind() != Obs::Kind::Star) sort_error(a, o);
      return Obs::star();
    case FK::One:
      if (o.kind() != Obs::Kind::Star) sort_error(a, o);
      return Obs::pair(Obs::star(), Obs::star());
    case FK::Par:
      if (o.kind() != Obs::Kind::Pair) sort_error(a, o);
      return Obs::pair(l_obs(a.left(), o.first(), m), l_obs(a.right(), o.second(), m));
    case FK::Tensor:
      if (o.kind() != Obs::Kind::Pair) sort_error(a, o);
      return with_star(Obs::pair(with_star(l_obs(a.left(), o.first(), m)),
                                 with_star(l_obs(a.right(), o.second(), m))));
    case FK::With: {
      if (o.kind() != Obs::Kind::Tag) sort_error(a, o);
      const Formula& ai = o.index() == 1 ? a.left() : a.right();
      return Obs::tag(tag_of(o.index(), m), l_obs(ai, o.first(), m));
    }
    case FK::Plus: {
      if (o.kind() != Obs::Kind::Tag) sort_error(a, o);
      const Formula& ai = o.index() == 1 ? a.left() : a.right();
      return with_star(Obs::tag(tag_of(o.index(), m), with_star(l_obs(ai, o.first(), m))));
    }
    case FK::OfCourse: {
      if (o.kind() != Obs::Kind::Bag) sort_error(a, o);
      std::vector<Obs> items;
      for (const auto& e : o.items()) items.push_back(with_star(l_obs(a.left(), e, m)));
      return with_star(Obs::bag(std::move(items)));
    }
    case FK::WhyNot: {
      if (o.kind() != Obs::Kind::Bag) sort_error(a, o);
      std::vector<Obs> items;
      for (const auto& e : o.items()) items.push_back(with_star(with_star(l_obs(a.left(), e, m))));
      return Obs::bag(std::move(items));
    }
  }
  sort_error(a, o);
}

ObsTuple l_ctx(const TypingContext& ctx, const ObsTuple& t, const Name& w, Mutant m) {
  if (ctx.count(w)) throw Error(ErrorCode::SortMismatch, "residual name " + w + " is in the context");
  if (t.size() != ctx.size()) throw Error(ErrorCode::SortMismatch, "tuple " + tuple_str(t) + " does not fit " + ctx_str(ctx));
  ObsTuple out;
  for (const auto& [n, a] : ctx) {
    auto it = t.find(n);
    if (it == t.end()) throw Error(ErrorCode::SortMismatch, "tuple has no component " + n);
    out.emplace(n, l_obs(a, it->second, m));
  }
  out.emplace(w, Obs::star());
  return out;
}

TupleSet l_set(const TypingContext& ctx, const TupleSet& s, const Name& w, Mutant m) {
  TupleSet out;
  for (const auto& t : s) out.insert(l_ctx(ctx, t, w, m));
  return out;
}

Verdict compare_sets(const TupleSet& expected, const TupleSet& actual) {
  Verdict v;
  std::set_difference(expected.begin(), expected.end(), actual.begin(), actual.end(),
                      std::inserter(v.only_expected, v.only_expected.end()));
  std::set_difference(actual.begin(), actual.end(), expected.begin(), expected.end(),
                      std::inserter(v.only_actual, v.only_actual.end()));
  v.holds = v.only_expected.empty() && v.only_actual.empty();
  if (!v.holds) {
    v.detail = "expected-only " + canonical(v.only_expected) + " actual-only " + canonical(v.only_actual);
  }
  return v;
}

Verdict check_translation_theorem(const Process& p, const TypingContext& ctx, System sys,
                                  int K, Mutant m) {
  Derivation d = check(p, ctx, sys);
  Translated t = translate_process(d);
  TupleSet expected = l_set(ctx, denote(d, K).tuples, t.residual, m);
  TupleSet actual = denote(t.process, t.ctx, System::CP, K).tuples;
  return compare_sets(expected, actual);
}

FullAbstractionVerdict full_abstraction_I(const Process& p, const Process& q,
                                          const TypingContext& ctx, System sys, int K) {
  FullAbstractionVerdict v;
  Derivation dp, dq;
  try {
    dp = check(p, ctx, sys);
    dq = check(q, ctx, sys);
  } catch (const Error& e) {
    throw Error(ErrorCode::TypingMismatch, std::string("processes do not share ") + ctx_str(ctx) + ": " + e.what());
  }
  NameSupply ns(all_names(p));
  ns.avoid(q);
  ns.avoid(ctx_names(ctx));
  Name w = ns.fresh("w");
  Translated tp = translate_process(dp, w);
  Translated tq = translate_process(dq, w);
  v.source_equivalent = denote(dp, K).tuples == denote(dq, K).tuples;
  v.image_equivalent = equivalent(tp.process, tq.process, tp.ctx, System::CP, K);
  v.holds = v.source_equivalent == v.image_equivalent;
  return v;
}

Verdict check_synchronizer_compat(const Process& p, const Process& q, const Name& x,
                                  const Formula& a, const TypingContext& gamma,
                                  const TypingContext& delta, System sys, int K) {
  TypingContext gp = gamma, gq = delta;
  gp[x] = a;
  gq[x] = dual(a);
  Derivation dp = check(p, gp, sys);
  Derivation dq = check(q, gq, sys);
  NameSupply ns(all_names(p));
  ns.avoid(q);
  ns.avoid(ctx_names(gp));
  ns.avoid(ctx_names(gq));
  Name r1 = ns.fresh("r"), r2 = ns.fresh("r"), w = ns.fresh("w");
  Process lp = translate_process(dp, r1).process;
  Process lq = translate_process(dq, r2).process;
  ns.avoid(lp);
  ns.avoid(lq);
  const Formula one = Formula::one();
  Process composed = Process::cut(
      r1, Formula::par(translate_formula_dual(a), one), Process::in(r1, x, lp),
      Process::cut(r2, Formula::par(translate_formula_dual(dual(a)), one), Process::in(r2, x, lq),
                   synchronizer(a, r1, r2, w)));
  TypingContext all = gamma;
  for (const auto& kv : delta) all.insert(kv);
  TupleSet source = join(denote(dp, K).tuples, denote(dq, K).tuples, x, false);
  TypingContext lctx = translate_ctx(all);
  lctx[w] = one;
  TupleSet actual = denote(composed, lctx, System::CP, K).tuples;
  return compare_sets(l_set(all, source, w), actual);
}

}  // namespace cpwb
