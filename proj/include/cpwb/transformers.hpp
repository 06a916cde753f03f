#ifndef CPWB_TRANSFORMERS_HPP
#define CPWB_TRANSFORMERS_HPP

#include <map>

#include "cpwb/obs_transform.hpp"
#include "cpwb/typing.hpp"

namespace cpwb {

// x : A⊥, x2 : L̄A, typed in cp02.
Process transformer(const Formula& a, const Name& x, const Name& x2);

struct TransformerContext {
  TypedContext context;
  std::map<Name, Name> renamed;  // x -> x'
  Name closing;                  // z
};

// Cuts the hole against T(A) for each x:A in ctx (in name order, the
// innermost cut first), then puts z[] beside it.
TransformerContext transformer_context(const TypingContext& ctx, const Name& z = "z");

// Denotation transformer of a typed context applied to a set over its hole.
TupleSet context_denotation(const ContextTerm& k, const TypingContext& hole,
                            const TypingContext& result, const TupleSet& x, System sys,
                            int K);

Verdict check_transformer_graph(const Formula& a, int K);
Verdict check_transformer_theorem(const TypingContext& ctx, const TupleSet& x, int K,
                                  Mutant m = Mutant::None);

struct FullAbstractionIIVerdict {
  bool holds = false;
  bool source_equivalent = false;
  bool image_equivalent = false;
};

FullAbstractionIIVerdict full_abstraction_II(const Process& p, const Process& q,
                                             const TypingContext& ctx, int K);

// denote(L(P)) against denote(T<P>) after renaming x' to x and z to w.
Verdict check_transformer_correct(const Process& p, const TypingContext& ctx, System sys, int K);

}  // namespace cpwb

#endif
