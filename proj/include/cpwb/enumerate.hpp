#ifndef CPWB_ENUMERATE_HPP
#define CPWB_ENUMERATE_HPP

#include <vector>

#include "cpwb/formula.hpp"
#include "cpwb/process.hpp"
#include "cpwb/typing.hpp"

namespace cpwb {

// The connective kinds in play. 1 and bot are the leaves; a set without
// either has no formulas.
using Connectives = std::vector<Formula::Kind>;

Connectives all_connectives();
Connectives exponential_free_connectives();

// All formulas of depth <= d, shallow ones first, deterministic order.
std::vector<Formula> enumerate_formulas(int d, const Connectives& cs);

// Formulas of depth <= d that use at most n binary or unary connectives.
std::vector<Formula> enumerate_formulas_bounded(int d, int n, const Connectives& cs);

struct EnumOptions {
  System sys = System::CP;
  // Annotations tried for cuts; empty means cut-free.
  std::vector<Formula> cut_types;
  // Allow the weak and ctr markers on ?-typed names.
  bool structural = true;
};

// Every P with size(P) <= s and check(P, ctx, opt.sys) succeeding, built
// bottom-up from the typing rules. Bound names come from a fixed stream, so
// the output is deterministic.
std::vector<Process> enumerate_processes(const TypingContext& ctx, int s,
                                         const EnumOptions& opt = {});

// Contexts over the names x, y, z... with 0..max_names entries drawn from types.
std::vector<TypingContext> enumerate_contexts(const std::vector<Formula>& types, int max_names);

}  // namespace cpwb

#endif
