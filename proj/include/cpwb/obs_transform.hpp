#ifndef CPWB_OBS_TRANSFORM_HPP
#define CPWB_OBS_TRANSFORM_HPP

#include <string>

#include "cpwb/denotation.hpp"
#include "cpwb/observation.hpp"
#include "cpwb/typing.hpp"

namespace cpwb {

// Deliberate faults used by the harness to show the suites can fail.
enum class Mutant { None, SwapTags };

// Image of an observation of A in the observation space of L̄A.
Obs l_obs(const Formula& a, const Obs& o, Mutant m = Mutant::None);
// Componentwise image plus w = *.
ObsTuple l_ctx(const TypingContext& ctx, const ObsTuple& t, const Name& w,
               Mutant m = Mutant::None);
TupleSet l_set(const TypingContext& ctx, const TupleSet& s, const Name& w,
               Mutant m = Mutant::None);

struct Verdict {
  bool holds = false;
  std::string detail;
  TupleSet only_expected, only_actual;
};

Verdict compare_sets(const TupleSet& expected, const TupleSet& actual);

// l_ctx image of denote(P) against denote(L(P)).
Verdict check_translation_theorem(const Process& p, const TypingContext& ctx, System sys,
                                  int K, Mutant m = Mutant::None);

struct FullAbstractionVerdict {
  bool holds = false;
  bool source_equivalent = false;
  bool image_equivalent = false;
};

FullAbstractionVerdict full_abstraction_I(const Process& p, const Process& q,
                                          const TypingContext& ctx, System sys, int K);

// Cut of the two translations through the synchronizer, against the image
// of the source cut. p uses x:A, q uses x:A⊥.
Verdict check_synchronizer_compat(const Process& p, const Process& q, const Name& x,
                                  const Formula& a, const TypingContext& gamma,
                                  const TypingContext& delta, System sys, int K);

}  // namespace cpwb

#endif
