#ifndef CPWB_DENOTATION_HPP
#define CPWB_DENOTATION_HPP

#include "cpwb/observation.hpp"
#include "cpwb/typing.hpp"

namespace cpwb {

// Denotation of a checked derivation with bags bounded by K.
DenotationSet denote(const Derivation& d, int K);
// check + denote.
DenotationSet denote(const Process& p, const TypingContext& ctx, System sys, int K);

// Cut on x: pairs of tuples agreeing on x, with x dropped (or kept).
TupleSet join(const TupleSet& a, const TupleSet& b, const Name& x, bool keep);
// Union of disjoint-domain tuples, pairwise.
TupleSet product(const TupleSet& a, const TupleSet& b);
// Drops tuples with a bag larger than K.
TupleSet bounded(TupleSet s, int K);

struct EquivResult {
  bool equivalent = false;
  TupleSet only_left, only_right;
};

// Denotational equality at the shared typing ctx.
EquivResult compare(const Process& p, const Process& q, const TypingContext& ctx,
                    System sys, int K);
bool equivalent(const Process& p, const Process& q, const TypingContext& ctx,
                System sys, int K);

}  // namespace cpwb

#endif
