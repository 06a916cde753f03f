#ifndef CPWB_TYPING_HPP
#define CPWB_TYPING_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cpwb/errors.hpp"
#include "cpwb/formula.hpp"
#include "cpwb/process.hpp"

namespace cpwb {

using TypingContext = std::map<Name, Formula>;

enum class System { CP, CP0, CP02 };

const char* system_name(System s);

enum class Rule {
  Id,
  One,
  Bot,
  Tensor,
  Par,
  Plus,
  With,
  OfCourse,
  WhyNot,
  Contract,
  Weaken,
  Cut,
  Mix2,
  Mix0
};

const char* rule_name(Rule r);

struct Derivation {
  Rule rule;
  Process process;
  TypingContext ctx;
  std::vector<Derivation> premises;
};

std::string ctx_str(const TypingContext& ctx);
NameSet ctx_names(const TypingContext& ctx);
// Restriction of ctx to the given names; throws UnboundName for a missing one.
TypingContext restrict_ctx(const TypingContext& ctx, const NameSet& names);

Derivation check(const Process& p, const TypingContext& ctx, System sys);
// Number of rule instances.
int derivation_size(const Derivation& d);
// Indented one-rule-per-line rendering.
std::string derivation_summary(const Derivation& d);

// A process with one hole. The hole sits left of every cut, as in KCut1.
class ContextTerm {
 public:
  enum class Kind { Hole, Cut, Mix };

  // The bare hole.
  ContextTerm();
  static ContextTerm hole();
  // new x:A (K | q)
  static ContextTerm cut(const Name& x, const Formula& a, const ContextTerm& k,
                         const Process& q);
  // (K | q)
  static ContextTerm mix(const ContextTerm& k, const Process& q);

  Kind kind() const { return node_->kind; }
  const Name& x() const { return node_->x; }
  const Formula& annot() const { return node_->annot; }
  const ContextTerm& inner() const { return *node_->inner; }
  const Process& right() const { return node_->right; }

  std::string str() const;

 private:
  struct Node {
    Kind kind = Kind::Hole;
    Name x;
    Formula annot;
    std::shared_ptr<const ContextTerm> inner;
    Process right;
  };
  explicit ContextTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TypedContext {
  ContextTerm term;
  TypingContext hole;
  TypingContext result;
};

struct ContextDerivation {
  enum class Kind { Hole, Cut, Mix } kind;
  TypingContext hole, result;
  std::vector<ContextDerivation> inner;  // zero or one
  std::vector<Derivation> right;         // zero or one
};

// Free names of the filled term, hole treated as contributing `hole_names`.
NameSet context_free_names(const ContextTerm& k, const NameSet& hole_names);

ContextDerivation check_context(const ContextTerm& k, const TypingContext& hole,
                                const TypingContext& result, System sys);
// Checks k and packages it with its types.
TypedContext make_typed_context(const ContextTerm& k, const TypingContext& hole,
                                const TypingContext& result, System sys);

Process fill(const ContextTerm& k, const Process& p);
// Checks p against the hole type first; TypeMismatch when it does not fit.
Process fill(const TypedContext& k, const Process& p, System sys);

}  // namespace cpwb

#endif
