#ifndef CPWB_TRANSLATION_HPP
#define CPWB_TRANSLATION_HPP

#include <map>
#include <string>

#include "cpwb/formula.hpp"
#include "cpwb/process.hpp"
#include "cpwb/typing.hpp"

namespace cpwb {

struct TranslationConfig {
  IllFormula residual;  // R, the unit by default
};

// Intuitionistic image of a classical type.
IllFormula translate_formula_ill(const Formula& f, const TranslationConfig& cfg = {});
// A -o B read as dual(A) par B.
Formula embed_ill(const IllFormula& i);
// The dualized image, with R = 1.
Formula translate_formula_dual(const Formula& f);
TypingContext translate_ctx(const TypingContext& ctx);

// z : dual(L̄A) * bot, w : dual(L̄A⊥) * bot, s : 1.
Process synchronizer(const Formula& a, const Name& z, const Name& w, const Name& s);
// x : L̄A, y : L̄A⊥, w : 1. Relates the two images of one observation.
Process cosynchronizer(const Formula& a, const Name& x, const Name& y, const Name& w);

struct Translated {
  Process process;
  Name residual;       // the fresh name typed 1
  TypingContext ctx;   // L̄Δ plus residual:1
  std::map<Name, Name> renamed;  // source name -> printed name, display form only
};

// Free names keep their names; the residual is `w` unless that is taken.
// Supports cp, cp0 and cp02 derivations and yields a cp term.
Translated translate_process(const Derivation& d, const Name& w = "w");

// The worked example form: free names x become x'.
Translated translate_for_display(const Derivation& d);

}  // namespace cpwb

#endif
