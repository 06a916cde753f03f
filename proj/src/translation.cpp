#include "cpwb/translation.hpp"

#include <functional>
#include <stdexcept>

namespace cpwb {

using FK = Formula::Kind;
using P = Process;

IllFormula translate_formula_ill(const Formula& f, const TranslationConfig& cfg) {
  const IllFormula& r = cfg.residual;
  auto neg = [&](const IllFormula& i) { return IllFormula::lollipop(i, r); };
  switch (f.kind()) {
    case FK::Bot: return IllFormula::unit();
    case FK::One: return neg(IllFormula::unit());
    case FK::Tensor:
      return neg(IllFormula::tensor(neg(translate_formula_ill(f.left(), cfg)),
                                    neg(translate_formula_ill(f.right(), cfg))));
    case FK::Par:
      return IllFormula::tensor(translate_formula_ill(f.left(), cfg),
                                translate_formula_ill(f.right(), cfg));
    case FK::Plus:
      return neg(IllFormula::plus(neg(translate_formula_ill(f.left(), cfg)),
                                  neg(translate_formula_ill(f.right(), cfg))));
    case FK::With:
      return IllFormula::plus(translate_formula_ill(f.left(), cfg),
                              translate_formula_ill(f.right(), cfg));
    case FK::OfCourse:
      return neg(IllFormula::of_course(neg(translate_formula_ill(f.left(), cfg))));
    case FK::WhyNot:
      return IllFormula::of_course(neg(neg(translate_formula_ill(f.left(), cfg))));
  }
  throw std::logic_error("translate_formula_ill: bad formula");
}

Formula embed_ill(const IllFormula& i) {
  using IK = IllFormula::Kind;
  switch (i.kind()) {
    case IK::Unit: return Formula::one();
    case IK::Tensor: return Formula::tensor(embed_ill(i.left()), embed_ill(i.right()));
    case IK::Lollipop: return Formula::par(dual(embed_ill(i.left())), embed_ill(i.right()));
    case IK::Plus: return Formula::plus(embed_ill(i.left()), embed_ill(i.right()));
    case IK::With: return Formula::with(embed_ill(i.left()), embed_ill(i.right()));
    case IK::OfCourse: return Formula::of_course(embed_ill(i.left()));
  }
  throw std::logic_error("embed_ill: bad formula");
}

Formula translate_formula_dual(const Formula& f) {
  const Formula one = Formula::one(), bot = Formula::bot();
  auto wrap = [&](const Formula& a) { return Formula::par(translate_formula_dual(a), one); };
  switch (f.kind()) {
    case FK::Bot: return bot;
    case FK::One: return Formula::tensor(one, bot);
    case FK::Tensor:
      return Formula::tensor(Formula::tensor(wrap(f.left()), wrap(f.right())), bot);
    case FK::Par:
      return Formula::par(translate_formula_dual(f.left()), translate_formula_dual(f.right()));
    case FK::Plus:
      return Formula::tensor(Formula::plus(wrap(f.left()), wrap(f.right())), bot);
    case FK::With:
      return Formula::with(translate_formula_dual(f.left()), translate_formula_dual(f.right()));
    case FK::OfCourse: return Formula::tensor(Formula::of_course(wrap(f.left())), bot);
    case FK::WhyNot: return Formula::why_not(Formula::tensor(wrap(f.left()), bot));
  }
  throw std::logic_error("translate_formula_dual: bad formula");
}

TypingContext translate_ctx(const TypingContext& ctx) {
  TypingContext out;
  for (const auto& [n, a] : ctx) out.emplace(n, translate_formula_dual(a));
  return out;
}

namespace {

// Positive types translate to C(A) * bot. The synchronizer opens the
// left image layer by layer; what cannot be opened yet (negative parts and
// exponentials) is kept as a residual and handed to the right image.
struct Resid {
  enum class Kind { Unit, Tensor, Choice, Client, Wrapped } kind = Kind::Unit;
  int choice = 0;
  Name name;
  std::vector<Resid> kids;
};

using Cont = std::function<P(const Name& t, const Resid& r)>;

class SyncBuilder {
 public:
  explicit SyncBuilder(NameSupply& ns) : ns_(ns) {}

  P sync(const Formula& a, const Name& z, const Name& w, const Name& s) {
    if (!a.is_positive()) return sync(dual(a), w, z, s);
    Name z1 = ns_.fresh("z"), c = ns_.fresh("c");
    return P::out(z, z1, P::in(z1, c, core(a, c, w, z1)), P::fwd(z, s));
  }

  P cosync(const Formula& a, const Name& x, const Name& y, const Name& w) {
    if (!a.is_positive()) return cosync(dual(a), y, x, w);
    Name u = ns_.fresh("u");
    return P::out(x, u, open(a, u, y), P::fwd(x, w));
  }

 private:
  NameSupply& ns_;

  // k : dual(C(B)), p : dual(L̄B⊥) * bot, t : 1
  P core(const Formula& b, const Name& k, const Name& p, const Name& t) {
    return unwrap(b, k, t, [this, b, p](const Name& t2, const Resid& r) {
      Name p1 = ns_.fresh("p");
      return P::out(p, p1, provide(b, p1, r), P::fwd(p, t2));
    });
  }

  P unwrap(const Formula& b, const Name& k, const Name& t, const Cont& cont) {
    switch (b.kind()) {
      case FK::One: return P::empty_in(k, cont(t, Resid{}));
      case FK::Tensor: {
        Name k1 = ns_.fresh("k");
        Formula b1 = b.left(), b2 = b.right();
        return P::in(k, k1, unwrap_wrapped(b1, k1, t, [this, b2, k, cont](const Name& t1, const Resid& r1) {
          return unwrap_wrapped(b2, k, t1, [r1, cont](const Name& t2, const Resid& r2) {
            Resid r;
            r.kind = Resid::Kind::Tensor;
            r.kids = {r1, r2};
            return cont(t2, r);
          });
        }));
      }
      case FK::Plus: {
        auto branch = [&](int i, const Formula& bi) {
          return unwrap_wrapped(bi, k, t, [i, cont](const Name& t2, const Resid& ri) {
            Resid r;
            r.kind = Resid::Kind::Choice;
            r.choice = i;
            r.kids = {ri};
            return cont(t2, r);
          });
        };
        return P::offer(k, branch(1, b.left()), branch(2, b.right()));
      }
      case FK::OfCourse: {
        Resid r;
        r.kind = Resid::Kind::Client;
        r.name = k;
        return cont(t, r);
      }
      default: throw std::logic_error("unwrap: negative type");
    }
  }

  // p : dual(L̄B) * bot
  P unwrap_wrapped(const Formula& b, const Name& p, const Name& t, const Cont& cont) {
    if (!b.is_positive()) {
      Resid r;
      r.kind = Resid::Kind::Wrapped;
      r.name = p;
      return cont(t, r);
    }
    Name p1 = ns_.fresh("p"), k = ns_.fresh("k");
    return P::out(p, p1, P::in(p1, k, unwrap(b, k, p1, cont)), P::fwd(p, t));
  }

  // y : dual(L̄B⊥)
  P provide(const Formula& b, const Name& y, const Resid& r) {
    switch (b.kind()) {
      case FK::One: return P::empty_out(y);
      case FK::Tensor: {
        Name e = ns_.fresh("e");
        return P::out(y, e, provide_part(b.left(), e, r.kids[0]),
                      provide_part(b.right(), y, r.kids[1]));
      }
      case FK::Plus: {
        const Formula& bi = r.choice == 1 ? b.left() : b.right();
        return P::select(y, r.choice, provide_part(bi, y, r.kids[0]));
      }
      case FK::OfCourse: {
        Name v = ns_.fresh("v"), g = ns_.fresh("g"), h = ns_.fresh("h");
        return P::server(y, v, P::client(r.name, g, P::in(v, h, sync(b.left(), g, h, v))));
      }
      default: throw std::logic_error("provide: negative type");
    }
  }

  P provide_part(const Formula& b, const Name& e, const Resid& r) {
    if (b.is_positive()) return provide(b, e, r);
    Name k = ns_.fresh("k");
    return P::in(e, k, core(dual(b), k, r.name, e));
  }

  // u : C(A), y : L̄A⊥
  P open(const Formula& a, const Name& u, const Name& y) {
    switch (a.kind()) {
      case FK::One: return P::fwd(u, y);
      case FK::Tensor: {
        Name y1 = ns_.fresh("y"), u1 = ns_.fresh("u"), p = ns_.fresh("p"), q = ns_.fresh("q");
        return P::in(y, y1,
                     P::out(u, u1, P::in(u1, p, cosync(a.left(), p, y1, u1)),
                            P::in(u, q, cosync(a.right(), q, y, u))));
      }
      case FK::Plus: {
        Name p1 = ns_.fresh("p");
        P l = P::select(u, 1, P::in(u, p1, cosync(a.left(), p1, y, u)));
        Name p2 = ns_.fresh("p");
        P r = P::select(u, 2, P::in(u, p2, cosync(a.right(), p2, y, u)));
        return P::offer(y, l, r);
      }
      case FK::OfCourse: {
        Name v = ns_.fresh("v"), t = ns_.fresh("t"), p = ns_.fresh("p"), r = ns_.fresh("r"),
             q = ns_.fresh("q");
        return P::server(
            u, v,
            P::client(y, t,
                      P::in(v, p, P::out(t, r, P::in(r, q, cosync(a.left(), p, q, r)), P::fwd(t, v)))));
      }
      default: throw std::logic_error("open: negative type");
    }
  }
};

class ProcessTranslator {
 public:
  explicit ProcessTranslator(NameSupply& ns) : ns_(ns), sb_(ns) {}

  P tr(const Derivation& d, const Name& w) {
    const P& p = d.process;
    const Name& x = p.x();
    switch (d.rule) {
      case Rule::Id: return sb_.cosync(d.ctx.at(x), x, p.y(), w);
      case Rule::One: {
        Name u = ns_.fresh("u");
        return P::out(x, u, P::empty_out(u), P::fwd(x, w));
      }
      case Rule::Bot: return P::empty_in(x, tr(d.premises[0], w));
      case Rule::Tensor: {
        Name z2 = ns_.fresh("z"), z1 = ns_.fresh("z");
        return P::out(x, z2,
                      P::out(z2, z1, P::in(z1, p.y(), tr(d.premises[0], z1)),
                             P::in(z2, x, tr(d.premises[1], z2))),
                      P::fwd(x, w));
      }
      case Rule::Par: return P::in(x, p.y(), tr(d.premises[0], w));
      case Rule::Plus: {
        Name z = ns_.fresh("z");
        return P::out(x, z, P::select(z, p.index(), P::in(z, x, tr(d.premises[0], z))),
                      P::fwd(x, w));
      }
      case Rule::With: return P::offer(x, tr(d.premises[0], w), tr(d.premises[1], w));
      case Rule::OfCourse: {
        Name x1 = ns_.fresh(x), v = ns_.fresh("v");
        return P::out(x, x1, P::server(x1, v, P::in(v, p.y(), tr(d.premises[0], v))),
                      P::fwd(x, w));
      }
      case Rule::WhyNot: {
        Name m = ns_.fresh("m"), v = ns_.fresh("v");
        return P::client(x, m, P::out(m, v, P::in(v, p.y(), tr(d.premises[0], v)), P::fwd(m, w)));
      }
      case Rule::Weaken:
        return P::weak(x, translate_formula_dual(p.annot()), tr(d.premises[0], w));
      case Rule::Contract: return P::contract(x, p.y(), p.z(), tr(d.premises[0], w));
      case Rule::Cut: {
        const Formula& a = p.annot();
        Name r1 = ns_.fresh("r"), r2 = ns_.fresh("r");
        const Formula one = Formula::one();
        return P::cut(r1, Formula::par(translate_formula_dual(a), one),
                      P::in(r1, x, tr(d.premises[0], r1)),
                      P::cut(r2, Formula::par(translate_formula_dual(dual(a)), one),
                             P::in(r2, x, tr(d.premises[1], r2)), sb_.sync(a, r1, r2, w)));
      }
      case Rule::Mix0: return P::empty_out(w);
      case Rule::Mix2: {
        Name c = ns_.fresh("c"), y = ns_.fresh("y");
        const Formula one = Formula::one();
        return P::cut(c, Formula::tensor(one, one),
                      P::out(c, y, tr(d.premises[0], y), tr(d.premises[1], c)),
                      P::in(c, y, P::empty_in(y, P::fwd(c, w))));
      }
    }
    throw std::logic_error("translate_process: unknown rule");
  }

 private:
  NameSupply& ns_;
  SyncBuilder sb_;
};

}  // namespace

Process synchronizer(const Formula& a, const Name& z, const Name& w, const Name& s) {
  NameSupply ns({z, w, s});
  return SyncBuilder(ns).sync(a, z, w, s);
}

Process cosynchronizer(const Formula& a, const Name& x, const Name& y, const Name& w) {
  NameSupply ns({x, y, w});
  return SyncBuilder(ns).cosync(a, x, y, w);
}

Translated translate_process(const Derivation& d, const Name& w) {
  NameSupply ns(all_names(d.process));
  ns.avoid(ctx_names(d.ctx));
  Name res = ns.fresh(w);
  ProcessTranslator t(ns);
  Translated out;
  out.process = t.tr(d, res);
  out.residual = res;
  out.ctx = translate_ctx(d.ctx);
  out.ctx[res] = Formula::one();
  return out;
}

Translated translate_for_display(const Derivation& d) {
  NameSupply ns(all_names(d.process));
  ns.avoid(ctx_names(d.ctx));
  std::map<Name, Name> prime;
  for (const auto& kv : d.ctx) prime[kv.first] = ns.fresh(kv.first + "'");
  Name res = ns.fresh("w");
  Translated base = translate_process(d, res);
  Translated out;
  out.process = rename(base.process, prime);
  out.residual = base.residual;
  out.renamed = prime;
  for (const auto& [n, a] : base.ctx) out.ctx[prime.count(n) ? prime[n] : n] = a;
  return out;
}

}  // namespace cpwb
