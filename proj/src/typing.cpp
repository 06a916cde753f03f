#include "cpwb/typing.hpp"

#include <sstream>

namespace cpwb {

using K = Process::Kind;
using FK = Formula::Kind;

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnboundName: return "UnboundName";
    case ErrorCode::LinearityViolation: return "LinearityViolation";
    case ErrorCode::RuleMismatch: return "RuleMismatch";
    case ErrorCode::NonBangContext: return "NonBangContext";
    case ErrorCode::SystemViolation: return "SystemViolation";
    case ErrorCode::HoleTypeMismatch: return "HoleTypeMismatch";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::TypingMismatch: return "TypingMismatch";
    case ErrorCode::CutTypeMismatch: return "CutTypeMismatch";
    case ErrorCode::SortMismatch: return "SortMismatch";
    case ErrorCode::OpenConfiguration: return "OpenConfiguration";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Error";
}

const char* system_name(System s) {
  switch (s) {
    case System::CP: return "cp";
    case System::CP0: return "cp0";
    case System::CP02: return "cp02";
  }
  return "?";
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Id: return "Id";
    case Rule::One: return "1";
    case Rule::Bot: return "bot";
    case Rule::Tensor: return "tensor";
    case Rule::Par: return "par";
    case Rule::Plus: return "plus";
    case Rule::With: return "with";
    case Rule::OfCourse: return "!";
    case Rule::WhyNot: return "?";
    case Rule::Contract: return "C";
    case Rule::Weaken: return "W";
    case Rule::Cut: return "Cut";
    case Rule::Mix2: return "Mix2";
    case Rule::Mix0: return "Mix0";
  }
  return "?";
}

std::string ctx_str(const TypingContext& ctx) {
  std::string out;
  for (const auto& [n, a] : ctx) {
    if (!out.empty()) out += ", ";
    out += n + ":" + a.str();
  }
  return out;
}

NameSet ctx_names(const TypingContext& ctx) {
  NameSet out;
  for (const auto& kv : ctx) out.insert(kv.first);
  return out;
}

TypingContext restrict_ctx(const TypingContext& ctx, const NameSet& names) {
  TypingContext out;
  for (const auto& n : names) {
    auto it = ctx.find(n);
    if (it == ctx.end()) throw Error(ErrorCode::UnboundName, "name " + n + " is not in the context");
    out.emplace(n, it->second);
  }
  return out;
}

namespace {

[[noreturn]] void fail(ErrorCode c, const Process& p, const std::string& why,
                       const Name& about = {}) {
  throw Error(c, why + " in " + p.str(), about);
}

const Formula& lookup(const TypingContext& ctx, const Name& x, const Process& p) {
  auto it = ctx.find(x);
  if (it == ctx.end()) fail(ErrorCode::UnboundName, p, "name " + x + " has no type");
  return it->second;
}

TypingContext without(TypingContext ctx, const Name& x) {
  ctx.erase(x);
  return ctx;
}

TypingContext with_names(TypingContext ctx,
                         std::initializer_list<std::pair<Name, Formula>> add) {
  for (const auto& [n, a] : add) ctx[n] = a;
  return ctx;
}

// Split ctx minus `skip` by the free names of a premise (minus its binder).
TypingContext part(const TypingContext& ctx, const NameSet& fn, const NameSet& skip) {
  TypingContext out;
  for (const auto& n : fn) {
    if (skip.count(n)) continue;
    auto it = ctx.find(n);
    if (it != ctx.end()) out.emplace(n, it->second);
  }
  return out;
}

NameSet minus(NameSet s, const Name& x) {
  s.erase(x);
  return s;
}

void disjoint(const NameSet& a, const NameSet& b, const Process& p) {
  for (const auto& n : a)
    if (b.count(n)) fail(ErrorCode::LinearityViolation, p, "name " + n + " used by both components");
}

void expect_kind(const Formula& a, FK k, const Name& x, const Process& p) {
  if (a.kind() != k)
    fail(ErrorCode::RuleMismatch, p, "name " + x + " has type " + a.str(), x);
}

Derivation check_rec(const Process& p, const TypingContext& ctx, System sys) {
  NameSet fn = free_names(p);
  for (const auto& n : fn)
    if (!ctx.count(n)) fail(ErrorCode::UnboundName, p, "name " + n + " has no type");
  for (const auto& kv : ctx)
    if (!fn.count(kv.first))
      fail(ErrorCode::LinearityViolation, p, "assignment " + kv.first + " is never used");

  Derivation d{Rule::Id, p, ctx, {}};
  switch (p.kind()) {
    case K::Inact:
      if (sys == System::CP) fail(ErrorCode::SystemViolation, p, "Mix0 is not part of CP");
      d.rule = Rule::Mix0;
      return d;
    case K::Fwd: {
      if (p.x() == p.y()) fail(ErrorCode::RuleMismatch, p, "forwarder with one name");
      const Formula& a = lookup(ctx, p.x(), p);
      const Formula& b = lookup(ctx, p.y(), p);
      if (!(b == dual(a)))
        fail(ErrorCode::RuleMismatch, p,
             "forwarder needs dual types, got " + a.str() + " and " + b.str(), p.x());
      d.rule = Rule::Id;
      return d;
    }
    case K::EmptyOut:
      expect_kind(lookup(ctx, p.x(), p), FK::One, p.x(), p);
      d.rule = Rule::One;
      return d;
    case K::EmptyIn:
      expect_kind(lookup(ctx, p.x(), p), FK::Bot, p.x(), p);
      d.rule = Rule::Bot;
      d.premises.push_back(check_rec(p.p(), without(ctx, p.x()), sys));
      return d;
    case K::Out: {
      const Formula& a = lookup(ctx, p.x(), p);
      expect_kind(a, FK::Tensor, p.x(), p);
      NameSet fp = minus(free_names(p.p()), p.y());
      NameSet fq = free_names(p.q());
      if (fp.count(p.x())) fail(ErrorCode::LinearityViolation, p, "name " + p.x() + " used in the sent component");
      disjoint(fp, fq, p);
      TypingContext cp = part(ctx, fp, {});
      cp[p.y()] = a.left();
      TypingContext cq = part(ctx, fq, {p.x()});
      cq[p.x()] = a.right();
      d.rule = Rule::Tensor;
      d.premises.push_back(check_rec(p.p(), cp, sys));
      d.premises.push_back(check_rec(p.q(), cq, sys));
      return d;
    }
    case K::In: {
      const Formula& a = lookup(ctx, p.x(), p);
      expect_kind(a, FK::Par, p.x(), p);
      if (p.x() == p.y()) fail(ErrorCode::LinearityViolation, p, "received name shadows " + p.x());
      d.rule = Rule::Par;
      d.premises.push_back(check_rec(
          p.p(), with_names(without(ctx, p.x()), {{p.y(), a.left()}, {p.x(), a.right()}}), sys));
      return d;
    }
    case K::Select: {
      const Formula& a = lookup(ctx, p.x(), p);
      expect_kind(a, FK::Plus, p.x(), p);
      d.rule = Rule::Plus;
      const Formula& ai = p.index() == 1 ? a.left() : a.right();
      d.premises.push_back(check_rec(p.p(), with_names(ctx, {{p.x(), ai}}), sys));
      return d;
    }
    case K::Case: {
      const Formula& a = lookup(ctx, p.x(), p);
      expect_kind(a, FK::With, p.x(), p);
      d.rule = Rule::With;
      d.premises.push_back(check_rec(p.p(), with_names(ctx, {{p.x(), a.left()}}), sys));
      d.premises.push_back(check_rec(p.q(), with_names(ctx, {{p.x(), a.right()}}), sys));
      return d;
    }
    case K::Server: {
      const Formula& a = lookup(ctx, p.x(), p);
      expect_kind(a, FK::OfCourse, p.x(), p);
      for (const auto& [n, b] : ctx)
        if (n != p.x() && b.kind() != FK::WhyNot)
          fail(ErrorCode::NonBangContext, p, "server context has " + n + ":" + b.str());
      d.rule = Rule::OfCourse;
      d.premises.push_back(
          check_rec(p.p(), with_names(without(ctx, p.x()), {{p.y(), a.left()}}), sys));
      return d;
    }
    case K::Client: {
      const Formula& a = lookup(ctx, p.x(), p);
      expect_kind(a, FK::WhyNot, p.x(), p);
      d.rule = Rule::WhyNot;
      d.premises.push_back(
          check_rec(p.p(), with_names(without(ctx, p.x()), {{p.y(), a.left()}}), sys));
      return d;
    }
    case K::Weak: {
      const Formula& a = lookup(ctx, p.x(), p);
      expect_kind(a, FK::WhyNot, p.x(), p);
      if (!(a == p.annot()))
        fail(ErrorCode::RuleMismatch, p, "weakening annotation " + p.annot().str() + " but context has " + a.str());
      d.rule = Rule::Weaken;
      d.premises.push_back(check_rec(p.p(), without(ctx, p.x()), sys));
      return d;
    }
    case K::Contract: {
      const Formula& a = lookup(ctx, p.x(), p);
      expect_kind(a, FK::WhyNot, p.x(), p);
      if (p.y() == p.z()) fail(ErrorCode::LinearityViolation, p, "contraction needs two distinct names");
      d.rule = Rule::Contract;
      d.premises.push_back(
          check_rec(p.p(), with_names(without(ctx, p.x()), {{p.y(), a}, {p.z(), a}}), sys));
      return d;
    }
    case K::Cut: {
      NameSet fp = minus(free_names(p.p()), p.x());
      NameSet fq = minus(free_names(p.q()), p.x());
      disjoint(fp, fq, p);
      TypingContext cp = part(ctx, fp, {});
      cp[p.x()] = p.annot();
      TypingContext cq = part(ctx, fq, {});
      cq[p.x()] = dual(p.annot());
      d.rule = Rule::Cut;
      d.premises.push_back(check_rec(p.p(), cp, sys));
      d.premises.push_back(check_rec(p.q(), cq, sys));
      return d;
    }
    case K::Par: {
      if (sys != System::CP02) fail(ErrorCode::SystemViolation, p, "Mix2 needs cp02");
      NameSet fp = free_names(p.p());
      NameSet fq = free_names(p.q());
      disjoint(fp, fq, p);
      d.rule = Rule::Mix2;
      d.premises.push_back(check_rec(p.p(), part(ctx, fp, {}), sys));
      d.premises.push_back(check_rec(p.q(), part(ctx, fq, {}), sys));
      return d;
    }
  }
  fail(ErrorCode::RuleMismatch, p, "unknown process");
}

void summary_rec(const Derivation& d, int indent, std::ostringstream& os) {
  os << std::string(indent * 2, ' ') << rule_name(d.rule) << "  " << d.process.str()
     << " |- " << ctx_str(d.ctx) << "\n";
  for (const auto& q : d.premises) summary_rec(q, indent + 1, os);
}

}  // namespace

Derivation check(const Process& p, const TypingContext& ctx, System sys) {
  return check_rec(p, ctx, sys);
}

int derivation_size(const Derivation& d) {
  int n = 1;
  for (const auto& q : d.premises) n += derivation_size(q);
  return n;
}

std::string derivation_summary(const Derivation& d) {
  std::ostringstream os;
  summary_rec(d, 0, os);
  return os.str();
}

// ---- typed contexts ----

ContextTerm::ContextTerm() : node_(std::make_shared<const Node>()) {}

ContextTerm ContextTerm::hole() { return ContextTerm(); }

ContextTerm ContextTerm::cut(const Name& x, const Formula& a, const ContextTerm& k,
                             const Process& q) {
  Node n;
  n.kind = Kind::Cut;
  n.x = x;
  n.annot = a;
  n.inner = std::make_shared<const ContextTerm>(k);
  n.right = q;
  return ContextTerm(std::make_shared<const Node>(std::move(n)));
}

ContextTerm ContextTerm::mix(const ContextTerm& k, const Process& q) {
  Node n;
  n.kind = Kind::Mix;
  n.inner = std::make_shared<const ContextTerm>(k);
  n.right = q;
  return ContextTerm(std::make_shared<const Node>(std::move(n)));
}

std::string ContextTerm::str() const {
  switch (kind()) {
    case Kind::Hole: return "[-]";
    case Kind::Cut:
      return "new " + x() + ":" + annot().str() + " (" + inner().str() + " | " + right().str() + ")";
    case Kind::Mix: return "(" + inner().str() + " | " + right().str() + ")";
  }
  return "?";
}

NameSet context_free_names(const ContextTerm& k, const NameSet& hole_names) {
  switch (k.kind()) {
    case ContextTerm::Kind::Hole: return hole_names;
    case ContextTerm::Kind::Cut: {
      NameSet out = context_free_names(k.inner(), hole_names);
      NameSet r = free_names(k.right());
      out.insert(r.begin(), r.end());
      out.erase(k.x());
      return out;
    }
    case ContextTerm::Kind::Mix: {
      NameSet out = context_free_names(k.inner(), hole_names);
      NameSet r = free_names(k.right());
      out.insert(r.begin(), r.end());
      return out;
    }
  }
  return {};
}

ContextDerivation check_context(const ContextTerm& k, const TypingContext& hole,
                                const TypingContext& result, System sys) {
  ContextDerivation d;
  d.hole = hole;
  d.result = result;
  switch (k.kind()) {
    case ContextTerm::Kind::Hole:
      if (hole != result)
        throw Error(ErrorCode::HoleTypeMismatch,
                    "hole has " + ctx_str(hole) + " but the context expects " + ctx_str(result));
      d.kind = ContextDerivation::Kind::Hole;
      return d;
    case ContextTerm::Kind::Cut: {
      NameSet fq = minus(free_names(k.right()), k.x());
      TypingContext cq = restrict_ctx(result, fq);
      cq[k.x()] = dual(k.annot());
      TypingContext rest = result;
      for (const auto& n : fq) rest.erase(n);
      if (rest.count(k.x()))
        throw Error(ErrorCode::LinearityViolation, "cut name " + k.x() + " is also free");
      rest[k.x()] = k.annot();
      d.kind = ContextDerivation::Kind::Cut;
      d.right.push_back(check(k.right(), cq, sys));
      d.inner.push_back(check_context(k.inner(), hole, rest, sys));
      return d;
    }
    case ContextTerm::Kind::Mix: {
      if (sys != System::CP02) throw Error(ErrorCode::SystemViolation, "context mix needs cp02");
      NameSet fq = free_names(k.right());
      TypingContext cq = restrict_ctx(result, fq);
      TypingContext rest = result;
      for (const auto& n : fq) rest.erase(n);
      d.kind = ContextDerivation::Kind::Mix;
      d.right.push_back(check(k.right(), cq, sys));
      d.inner.push_back(check_context(k.inner(), hole, rest, sys));
      return d;
    }
  }
  return d;
}

TypedContext make_typed_context(const ContextTerm& k, const TypingContext& hole,
                                const TypingContext& result, System sys) {
  check_context(k, hole, result, sys);
  return TypedContext{k, hole, result};
}

Process fill(const ContextTerm& k, const Process& p) {
  switch (k.kind()) {
    case ContextTerm::Kind::Hole: return p;
    case ContextTerm::Kind::Cut:
      return Process::cut(k.x(), k.annot(), fill(k.inner(), p), k.right());
    case ContextTerm::Kind::Mix: return Process::par(fill(k.inner(), p), k.right());
  }
  return p;
}

Process fill(const TypedContext& k, const Process& p, System sys) {
  try {
    check(p, k.hole, sys);
  } catch (const Error& e) {
    throw Error(ErrorCode::TypeMismatch,
                "process does not have the hole type " + ctx_str(k.hole) + " (" + e.what() + ")");
  }
  return fill(k.term, p);
}

}  // namespace cpwb
