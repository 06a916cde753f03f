#include "cpwb/transformers.hpp"

#include <stdexcept>

#include "cpwb/denotation.hpp"
#include "cpwb/translation.hpp"

namespace cpwb {

using FK = Formula::Kind;
using P = Process;

namespace {

class TransformerBuilder {
 public:
  explicit TransformerBuilder(NameSupply& ns) : ns_(ns) {}

  // x : A⊥, x2 : L̄A
  P build(const Formula& a, const Name& x, const Name& x2) {
    switch (a.kind()) {
      case FK::Bot: return P::fwd(x, x2);
      case FK::One: {
        Name y = ns_.fresh("y");
        return P::out(x2, y, P::fwd(y, x), P::empty_in(x2, P::inact()));
      }
      case FK::Par: {
        Name y2 = ns_.fresh("y'"), y = ns_.fresh("y");
        return P::in(x2, y2, P::out(x, y, build(a.left(), y, y2), build(a.right(), x, x2)));
      }
      case FK::Tensor: {
        Name y = ns_.fresh("y"), z2 = ns_.fresh("z"), z1 = ns_.fresh("z"), y2 = ns_.fresh("y'"),
             x3 = ns_.fresh(x2 + "'");
        P left = P::in(z1, y2, P::par(build(a.left(), y, y2), P::empty_out(z1)));
        P right = P::in(z2, x3, P::par(build(a.right(), x, x3), P::empty_out(z2)));
        return P::in(x, y, P::out(x2, z2, P::out(z2, z1, left, right), P::empty_in(x2, P::inact())));
      }
      case FK::Plus: {
        auto branch = [&](int i, const Formula& ai) {
          Name u = ns_.fresh("u"), x3 = ns_.fresh(x2 + "'");
          return P::out(x2, u,
                        P::select(u, i, P::in(u, x3, P::par(build(ai, x, x3), P::empty_out(u)))),
                        P::empty_in(x2, P::inact()));
        };
        P l = branch(1, a.left());
        P r = branch(2, a.right());
        return P::offer(x, l, r);
      }
      case FK::With: {
        P l = P::select(x, 1, build(a.left(), x, x2));
        P r = P::select(x, 2, build(a.right(), x, x2));
        return P::offer(x2, l, r);
      }
      case FK::OfCourse: {
        Name w = ns_.fresh("w"), v = ns_.fresh("v"), y = ns_.fresh("y"), y2 = ns_.fresh("y'");
        P body = P::client(x, y, P::in(v, y2, P::par(build(a.left(), y, y2), P::empty_out(v))));
        return P::out(x2, w, P::server(w, v, body), P::empty_in(x2, P::inact()));
      }
      case FK::WhyNot: {
        Name y = ns_.fresh("y"), m = ns_.fresh("m"), u = ns_.fresh("u"), y2 = ns_.fresh("y'");
        P inner = P::out(m, u, P::in(u, y2, P::par(build(a.left(), y, y2), P::empty_out(u))),
                         P::empty_in(m, P::inact()));
        return P::server(x, y, P::client(x2, m, inner));
      }
    }
    throw std::logic_error("transformer: bad formula");
  }

 private:
  NameSupply& ns_;
};

Name renamed_key(const std::map<Name, Name>& back, const Name& n) {
  auto it = back.find(n);
  return it == back.end() ? n : it->second;
}

TupleSet rename_keys(const TupleSet& s, const std::map<Name, Name>& m) {
  TupleSet out;
  for (const auto& t : s) {
    ObsTuple u;
    for (const auto& [n, o] : t) u.emplace(renamed_key(m, n), o);
    out.insert(std::move(u));
  }
  return out;
}

}  // namespace

Process transformer(const Formula& a, const Name& x, const Name& x2) {
  if (x == x2) throw std::invalid_argument("transformer needs two distinct names");
  NameSupply ns({x, x2});
  return TransformerBuilder(ns).build(a, x, x2);
}

TransformerContext transformer_context(const TypingContext& ctx, const Name& z) {
  NameSupply ns(ctx_names(ctx));
  TransformerContext out;
  out.closing = ns.fresh(z);
  ContextTerm k = ContextTerm::hole();
  TypingContext result;
  for (const auto& [x, a] : ctx) {
    Name x2 = ns.fresh(x + "'");
    out.renamed[x] = x2;
    NameSupply inner = ns;
    k = ContextTerm::cut(x, a, k, TransformerBuilder(inner).build(a, x, x2));
    result[x2] = translate_formula_dual(a);
  }
  k = ContextTerm::mix(k, P::empty_out(out.closing));
  result[out.closing] = Formula::one();
  out.context = make_typed_context(k, ctx, result, System::CP02);
  return out;
}

TupleSet context_denotation(const ContextTerm& k, const TypingContext& hole,
                            const TypingContext& result, const TupleSet& x, System sys,
                            int K) {
  switch (k.kind()) {
    case ContextTerm::Kind::Hole: {
      for (const auto& t : x) {
        if (t.size() != hole.size())
          throw Error(ErrorCode::SortMismatch, "tuple " + tuple_str(t) + " does not fit " + ctx_str(hole));
        for (const auto& [n, a] : hole) {
          auto it = t.find(n);
          if (it == t.end() || !well_sorted(it->second, a))
            throw Error(ErrorCode::SortMismatch, "tuple " + tuple_str(t) + " does not fit " + ctx_str(hole));
        }
      }
      return x;
    }
    case ContextTerm::Kind::Cut: {
      NameSet fq = free_names(k.right());
      fq.erase(k.x());
      TypingContext cq = restrict_ctx(result, fq);
      cq[k.x()] = dual(k.annot());
      TypingContext rest = result;
      for (const auto& n : fq) rest.erase(n);
      rest[k.x()] = k.annot();
      TupleSet inner = context_denotation(k.inner(), hole, rest, x, sys, K);
      return join(inner, denote(k.right(), cq, sys, K).tuples, k.x(), false);
    }
    case ContextTerm::Kind::Mix: {
      NameSet fq = free_names(k.right());
      TypingContext cq = restrict_ctx(result, fq);
      TypingContext rest = result;
      for (const auto& n : fq) rest.erase(n);
      TupleSet inner = context_denotation(k.inner(), hole, rest, x, sys, K);
      return product(inner, denote(k.right(), cq, sys, K).tuples);
    }
  }
  return {};
}

Verdict check_transformer_graph(const Formula& a, int K) {
  const Name x = "x", x2 = "x'";
  Process t = transformer(a, x, x2);
  TypingContext ctx{{x, dual(a)}, {x2, translate_formula_dual(a)}};
  TupleSet actual = denote(t, ctx, System::CP02, K).tuples;
  TupleSet expected;
  for (const auto& o : obs_space(a, K)) {
    Obs image = l_obs(a, o);
    if (image.max_bag() > K) continue;
    expected.insert(ObsTuple{{x, o}, {x2, image}});
  }
  return compare_sets(expected, actual);
}

Verdict check_transformer_theorem(const TypingContext& ctx, const TupleSet& x, int K, Mutant m) {
  TransformerContext tc = transformer_context(ctx);
  TupleSet actual = context_denotation(tc.context.term, tc.context.hole, tc.context.result, x,
                                       System::CP02, K);
  TupleSet expected = rename_keys(l_set(ctx, x, tc.closing, m), tc.renamed);
  return compare_sets(expected, actual);
}

FullAbstractionIIVerdict full_abstraction_II(const Process& p, const Process& q,
                                             const TypingContext& ctx, int K) {
  FullAbstractionIIVerdict v;
  v.source_equivalent = equivalent(p, q, ctx, System::CP02, K);
  TransformerContext tc = transformer_context(ctx);
  Process fp = fill(tc.context, p, System::CP02);
  Process fq = fill(tc.context, q, System::CP02);
  v.image_equivalent = equivalent(fp, fq, tc.context.result, System::CP02, K);
  v.holds = v.source_equivalent == v.image_equivalent;
  return v;
}

Verdict check_transformer_correct(const Process& p, const TypingContext& ctx, System sys, int K) {
  Derivation d = check(p, ctx, sys);
  TransformerContext tc = transformer_context(ctx);
  Translated t = translate_process(d, tc.closing);
  Process filled = fill(tc.context, p, System::CP02);
  TupleSet viaT = denote(filled, tc.context.result, System::CP02, K).tuples;
  std::map<Name, Name> back;
  for (const auto& [x, x2] : tc.renamed) back[x2] = x;
  TupleSet viaL = denote(t.process, t.ctx, System::CP, K).tuples;
  if (t.residual != tc.closing) back[tc.closing] = t.residual;
  return compare_sets(viaL, rename_keys(viaT, back));
}

}  // namespace cpwb
