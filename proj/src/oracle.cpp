#include "cpwb/oracle.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "cpwb/denotation.hpp"

namespace cpwb {

using PK = Process::Kind;
using FK = Formula::Kind;
using CK = Configuration::Kind;

// ---- configuration terms ----

Configuration Configuration::zero() {
  return Configuration(std::make_shared<const Node>());
}

Configuration Configuration::proc(const Process& p) {
  Node n;
  n.kind = Kind::Proc;
  n.proc = p;
  return Configuration(std::make_shared<const Node>(std::move(n)));
}

Configuration Configuration::cut(const Name& x, const Formula& a, const Configuration& c1,
                                 const Configuration& c2) {
  Node n;
  n.kind = Kind::Cut;
  n.x = x;
  n.annot = a;
  n.c1 = std::make_shared<const Configuration>(c1);
  n.c2 = std::make_shared<const Configuration>(c2);
  return Configuration(std::make_shared<const Node>(std::move(n)));
}

Configuration Configuration::par(const Configuration& c1, const Configuration& c2) {
  Node n;
  n.kind = Kind::Par;
  n.c1 = std::make_shared<const Configuration>(c1);
  n.c2 = std::make_shared<const Configuration>(c2);
  return Configuration(std::make_shared<const Node>(std::move(n)));
}

Configuration Configuration::weak(const Name& x, const Formula& a, const Configuration& c) {
  Node n;
  n.kind = Kind::Weak;
  n.x = x;
  n.annot = a;
  n.c1 = std::make_shared<const Configuration>(c);
  return Configuration(std::make_shared<const Node>(std::move(n)));
}

Configuration Configuration::con(const Name& x1, const Name& x2, const Configuration& c) {
  Node n;
  n.kind = Kind::Con;
  n.x = x1;
  n.x2 = x2;
  n.c1 = std::make_shared<const Configuration>(c);
  return Configuration(std::make_shared<const Node>(std::move(n)));
}

std::string Configuration::str() const {
  switch (kind()) {
    case Kind::Zero: return "zero";
    case Kind::Proc: return "[" + process().str() + "]";
    case Kind::Cut:
      return "cut " + x() + ":" + annot().str() + " (" + left().str() + ", " + right().str() + ")";
    case Kind::Par: return "mix (" + left().str() + ", " + right().str() + ")";
    case Kind::Weak: return "cweak " + x() + ":" + annot().str() + "." + left().str();
    case Kind::Con: return "ccon " + x() + "," + x2() + "." + left().str();
  }
  return "?";
}

NameSet config_free_names(const Configuration& c) {
  switch (c.kind()) {
    case CK::Zero: return {};
    case CK::Proc: return free_names(c.process());
    case CK::Cut: {
      NameSet a = config_free_names(c.left());
      NameSet b = config_free_names(c.right());
      a.insert(b.begin(), b.end());
      a.erase(c.x());
      return a;
    }
    case CK::Par: {
      NameSet a = config_free_names(c.left());
      NameSet b = config_free_names(c.right());
      a.insert(b.begin(), b.end());
      return a;
    }
    case CK::Weak: {
      NameSet a = config_free_names(c.left());
      a.insert(c.x());
      return a;
    }
    case CK::Con: {
      NameSet a = config_free_names(c.left());
      a.erase(c.x2());
      a.insert(c.x());
      return a;
    }
  }
  return {};
}

namespace {

void require_used(const TypingContext& gamma, const NameSet& used) {
  for (const auto& kv : gamma)
    if (!used.count(kv.first))
      throw Error(ErrorCode::LinearityViolation, "configuration never uses " + kv.first);
}

void add_observable(TypingContext& theta, const Name& x, const Formula& a) {
  if (!theta.emplace(x, a).second)
    throw Error(ErrorCode::LinearityViolation, "observable name " + x + " appears twice");
}

void merge_theta(TypingContext& into, const TypingContext& from) {
  for (const auto& [n, a] : from) add_observable(into, n, a);
}

// Checks and, when `K` >= 0, also computes the denotation.
struct ConfigResult {
  TypingContext theta;
  TupleSet den;
};

ConfigResult walk(const Configuration& c, System sys, const TypingContext& gamma, int K) {
  ConfigResult r;
  switch (c.kind()) {
    case CK::Zero:
      require_used(gamma, {});
      r.den = {ObsTuple{}};
      return r;
    case CK::Proc: {
      Derivation d = check(c.process(), gamma, sys);
      if (K >= 0) r.den = denote(d, K).tuples;
      return r;
    }
    case CK::Cut: {
      NameSet f1 = config_free_names(c.left());
      NameSet f2 = config_free_names(c.right());
      f1.erase(c.x());
      f2.erase(c.x());
      for (const auto& n : f1)
        if (f2.count(n)) throw Error(ErrorCode::LinearityViolation, "name " + n + " on both sides of a cut");
      NameSet used = f1;
      used.insert(f2.begin(), f2.end());
      require_used(gamma, used);
      if (gamma.count(c.x()))
        throw Error(ErrorCode::LinearityViolation, "cut name " + c.x() + " is also free");
      TypingContext g1 = restrict_ctx(gamma, f1);
      TypingContext g2 = restrict_ctx(gamma, f2);
      g1[c.x()] = c.annot();
      g2[c.x()] = dual(c.annot());
      auto side = [&](const Configuration& s, const TypingContext& g, const Formula& want) {
        try {
          return walk(s, sys, g, K);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::RuleMismatch && e.name() == c.x())
            throw Error(ErrorCode::CutTypeMismatch,
                        "cut on " + c.x() + " expects " + want.str() + " but " + e.what(), c.x());
          throw;
        }
      };
      ConfigResult a = side(c.left(), g1, c.annot());
      ConfigResult b = side(c.right(), g2, dual(c.annot()));
      merge_theta(r.theta, a.theta);
      merge_theta(r.theta, b.theta);
      add_observable(r.theta, c.x(), c.annot());
      if (K >= 0) r.den = join(a.den, b.den, c.x(), true);
      return r;
    }
    case CK::Par: {
      if (sys != System::CP02) throw Error(ErrorCode::SystemViolation, "configuration mix needs cp02");
      NameSet f1 = config_free_names(c.left());
      NameSet f2 = config_free_names(c.right());
      for (const auto& n : f1)
        if (f2.count(n)) throw Error(ErrorCode::LinearityViolation, "name " + n + " on both sides of a mix");
      NameSet used = f1;
      used.insert(f2.begin(), f2.end());
      require_used(gamma, used);
      ConfigResult a = walk(c.left(), sys, restrict_ctx(gamma, f1), K);
      ConfigResult b = walk(c.right(), sys, restrict_ctx(gamma, f2), K);
      merge_theta(r.theta, a.theta);
      merge_theta(r.theta, b.theta);
      if (K >= 0) r.den = product(a.den, b.den);
      return r;
    }
    case CK::Weak: {
      auto it = gamma.find(c.x());
      if (it == gamma.end()) throw Error(ErrorCode::UnboundName, "weakened name " + c.x() + " has no type");
      if (it->second.kind() != FK::WhyNot || !(it->second == c.annot()))
        throw Error(ErrorCode::RuleMismatch, "weakening " + c.x() + " at " + it->second.str(), c.x());
      TypingContext g = gamma;
      g.erase(c.x());
      ConfigResult a = walk(c.left(), sys, g, K);
      r.theta = a.theta;
      if (K >= 0)
        for (auto t : a.den) {
          t[c.x()] = Obs::bag({});
          r.den.insert(std::move(t));
        }
      return r;
    }
    case CK::Con: {
      auto it = gamma.find(c.x());
      if (it == gamma.end()) throw Error(ErrorCode::UnboundName, "contracted name " + c.x() + " has no type");
      if (it->second.kind() != FK::WhyNot)
        throw Error(ErrorCode::RuleMismatch, "contracting " + c.x() + " at " + it->second.str(), c.x());
      if (gamma.count(c.x2()) || c.x() == c.x2())
        throw Error(ErrorCode::LinearityViolation, "contraction name " + c.x2() + " is not fresh");
      TypingContext g = gamma;
      g[c.x2()] = it->second;
      ConfigResult a = walk(c.left(), sys, g, K);
      r.theta = a.theta;
      if (K >= 0)
        for (const auto& t : a.den) {
          Obs v = bag_union(t.at(c.x()), t.at(c.x2()));
          if (v.max_bag() > K) continue;
          ObsTuple u = t;
          u.erase(c.x2());
          u[c.x()] = v;
          r.den.insert(std::move(u));
        }
      return r;
    }
  }
  return r;
}

}  // namespace

ConfigTyping check_config(const Configuration& c, System sys, const TypingContext& gamma) {
  ConfigResult r = walk(c, sys, gamma, -1);
  return ConfigTyping{gamma, r.theta};
}

TupleSet config_denote(const Configuration& c, System sys, int K, const TypingContext& gamma) {
  return walk(c, sys, gamma, K).den;
}

// ---- the observation machine ----
//
// The configuration is flattened into components joined by connections.
// A plain connection is a wire between two endpoints. A connection at
// exponential type is a hub: one endpoint on the ! side and any number of
// client endpoints on the ? side, since contraction multiplies clients.
// Every endpoint carries a variable; firing a rule defines the variable in
// terms of fresh ones, and the observations are read back at the end.

namespace {

struct Expr {
  enum class Kind { Unset, Star, Pair, Tag, Single, Union, Empty, Alias } kind = Kind::Unset;
  int index = 0;
  int a = -1, b = -1;
};

struct Endpoint {
  int comp = -1;
  int conn = -1;
  int var = -1;
  Formula type;
};

struct Conn {
  bool hub = false;
  bool alive = true;
  Name a, b;  // wire ends
  Name bang;
  std::vector<Name> clients;
};

struct Comp {
  Process proc;
  bool alive = true;
};

class Machine {
 public:
  Machine(int K, std::uint64_t seed) : K_(K), rng_(seed), shuffle_(seed != 0) {}

  void flatten(const Configuration& c, const std::map<Name, Name>& env,
               std::map<Name, int>& observed) {
    switch (c.kind()) {
      case CK::Zero: return;
      case CK::Proc: add_comp(rename(c.process(), env)); return;
      case CK::Cut: {
        Name e1 = fresh(), e2 = fresh();
        int v = new_var();
        connect(e1, e2, c.annot(), v);
        observed[c.x()] = v;
        auto env1 = env;
        env1[c.x()] = e1;
        auto env2 = env;
        env2[c.x()] = e2;
        flatten(c.left(), env1, observed);
        flatten(c.right(), env2, observed);
        return;
      }
      case CK::Par:
        flatten(c.left(), env, observed);
        flatten(c.right(), env, observed);
        return;
      case CK::Weak: {
        Name e = env.at(c.x());
        weaken(e);
        flatten(c.left(), env, observed);
        return;
      }
      case CK::Con: {
        Name e = env.at(c.x());
        auto [e1, e2] = split_client(e);
        auto env1 = env;
        env1[c.x()] = e1;
        env1[c.x2()] = e2;
        flatten(c.left(), env1, observed);
        return;
      }
    }
  }

  // Returns false when the step budget runs out.
  bool run(int depth, int& steps) {
    while (true) {
      if (!any_alive()) return true;
      if (steps >= depth) return false;
      if (!step()) throw std::logic_error("observation machine is stuck");
      ++steps;
    }
  }

  // Empty when some bag exceeds K.
  std::optional<ObsTuple> read(const std::map<Name, int>& observed) {
    memo_.assign(vars_.size(), std::nullopt);
    for (size_t v = 0; v < vars_.size(); ++v) {
      const Obs& o = resolve(static_cast<int>(v));
      if (o.kind() == Obs::Kind::Bag && static_cast<int>(o.items().size()) > K_) return std::nullopt;
    }
    ObsTuple t;
    for (const auto& [n, v] : observed) t[n] = resolve(v);
    return t;
  }

 private:
  int K_;
  std::mt19937_64 rng_;
  bool shuffle_;
  int next_name_ = 0;
  std::vector<Expr> vars_;
  std::vector<std::optional<Obs>> memo_;
  std::unordered_map<Name, Endpoint> eps_;
  std::vector<Conn> conns_;
  std::vector<Comp> comps_;

  Name fresh() { return "#" + std::to_string(next_name_++); }

  int new_var() {
    vars_.push_back(Expr{});
    return static_cast<int>(vars_.size()) - 1;
  }

  void define(int v, Expr e) {
    if (vars_[v].kind != Expr::Kind::Unset) throw std::logic_error("variable defined twice");
    vars_[v] = e;
  }

  static Expr mk(Expr::Kind k, int a = -1, int b = -1, int index = 0) {
    Expr e;
    e.kind = k;
    e.a = a;
    e.b = b;
    e.index = index;
    return e;
  }

  const Obs& resolve(int v) {
    if (memo_[v]) return *memo_[v];
    const Expr& e = vars_[v];
    Obs o;
    switch (e.kind) {
      case Expr::Kind::Unset: throw std::logic_error("observation variable never defined");
      case Expr::Kind::Star: o = Obs::star(); break;
      case Expr::Kind::Pair: o = Obs::pair(resolve(e.a), resolve(e.b)); break;
      case Expr::Kind::Tag: o = Obs::tag(e.index, resolve(e.a)); break;
      case Expr::Kind::Single: o = Obs::bag({resolve(e.a)}); break;
      case Expr::Kind::Union: o = bag_union(resolve(e.a), resolve(e.b)); break;
      case Expr::Kind::Empty: o = Obs::bag({}); break;
      case Expr::Kind::Alias: o = resolve(e.a); break;
    }
    memo_[v] = o;
    return *memo_[v];
  }

  // Connection between two endpoint names; `ta` is the type seen from a.
  void connect(const Name& a, const Name& b, const Formula& ta, int var) {
    Conn c;
    int id = static_cast<int>(conns_.size());
    if (ta.kind() == FK::OfCourse) {
      c.hub = true;
      c.bang = a;
      c.clients = {b};
    } else if (ta.kind() == FK::WhyNot) {
      c.hub = true;
      c.bang = b;
      c.clients = {a};
    } else {
      c.a = a;
      c.b = b;
    }
    conns_.push_back(c);
    Endpoint& ea = eps_[a];
    ea.conn = id;
    ea.var = var;
    ea.type = ta;
    Endpoint& eb = eps_[b];
    eb.conn = id;
    eb.var = var;
    eb.type = dual(ta);
  }

  int add_comp(const Process& p) {
    int id = static_cast<int>(comps_.size());
    comps_.push_back(Comp{p, true});
    attach(id);
    return id;
  }

  void attach(int id) {
    for (const auto& n : free_names(comps_[id].proc)) {
      auto it = eps_.find(n);
      if (it == eps_.end()) throw Error(ErrorCode::OpenConfiguration, "name " + n + " is not connected");
      it->second.comp = id;
    }
  }

  void set_proc(int id, const Process& p) {
    comps_[id].proc = p;
    attach(id);
  }

  const Name& other_end(const Name& e) {
    const Conn& c = conns_[eps_.at(e).conn];
    return c.a == e ? c.b : c.a;
  }

  void weaken(const Name& e) {
    Endpoint& ep = eps_.at(e);
    define(ep.var, mk(Expr::Kind::Empty));
    drop_client(ep.conn, e);
    eps_.erase(e);
  }

  void drop_client(int conn, const Name& e) {
    auto& cl = conns_[conn].clients;
    cl.erase(std::find(cl.begin(), cl.end(), e));
  }

  std::pair<Name, Name> split_client(const Name& e) {
    Endpoint ep = eps_.at(e);
    Name e1 = fresh(), e2 = fresh();
    int v1 = new_var(), v2 = new_var();
    define(ep.var, mk(Expr::Kind::Union, v1, v2));
    eps_[e1] = Endpoint{ep.comp, ep.conn, v1, ep.type};
    eps_[e2] = Endpoint{ep.comp, ep.conn, v2, ep.type};
    auto& cl = conns_[ep.conn].clients;
    *std::find(cl.begin(), cl.end(), e) = e1;
    cl.push_back(e2);
    eps_.erase(e);
    return {e1, e2};
  }

  // Replace the wire between a and b by a fresh one of the given type.
  int rewire(const Name& a, const Name& b, const Formula& ta) {
    conns_[eps_.at(a).conn].alive = false;
    int v = new_var();
    int ca = eps_.at(a).comp, cb = eps_.at(b).comp;
    connect(a, b, ta, v);
    eps_[a].comp = ca;
    eps_[b].comp = cb;
    return v;
  }

  bool any_alive() const {
    for (const auto& c : comps_)
      if (c.alive) return true;
    return false;
  }

  void kill(int id) { comps_[id].alive = false; }

  // Candidate redexes are identified by component (>= 0) or hub (< 0).
  bool step() {
    std::vector<int> order;
    for (size_t i = 0; i < comps_.size(); ++i)
      if (comps_[i].alive) order.push_back(static_cast<int>(i));
    for (size_t i = 0; i < conns_.size(); ++i)
      if (conns_[i].alive && conns_[i].hub) order.push_back(-1 - static_cast<int>(i));
    if (shuffle_) std::shuffle(order.begin(), order.end(), rng_);
    for (int r : order) {
      if (r >= 0 ? fire_comp(r) : discharge(-1 - r)) return true;
    }
    return false;
  }

  // A hub with no clients left lets its server go.
  bool discharge(int hub) {
    Conn& h = conns_[hub];
    if (!h.clients.empty()) return false;
    const Endpoint& bang = eps_.at(h.bang);
    const Process& s = comps_[bang.comp].proc;
    if (s.kind() != PK::Server || s.x() != h.bang) return false;
    for (const auto& n : free_names(s)) {
      if (n == h.bang) continue;
      weaken(n);
    }
    kill(bang.comp);
    eps_.erase(h.bang);
    h.alive = false;
    return true;
  }

  bool fire_comp(int id) {
    Process p = comps_[id].proc;
    switch (p.kind()) {
      case PK::Inact: kill(id); return true;
      case PK::Par: {
        set_proc(id, p.p());
        add_comp(p.q());
        return true;
      }
      case PK::Cut: {
        Name e1 = fresh(), e2 = fresh();
        connect(e1, e2, p.annot(), new_var());
        set_proc(id, substitute(p.p(), e1, p.x()));
        add_comp(substitute(p.q(), e2, p.x()));
        return true;
      }
      case PK::Fwd: link(id, p.x(), p.y()); return true;
      case PK::Weak:
        weaken(p.x());
        set_proc(id, p.p());
        return true;
      case PK::Contract: {
        auto [e1, e2] = split_client(p.x());
        set_proc(id, rename(p.p(), {{p.y(), e1}, {p.z(), e2}}));
        return true;
      }
      case PK::EmptyOut: {
        const Name& o = other_end(p.x());
        int pc = eps_.at(o).comp;
        const Process q = comps_[pc].proc;
        if (q.kind() != PK::EmptyIn || q.x() != o) return false;
        define(eps_.at(p.x()).var, mk(Expr::Kind::Star));
        conns_[eps_.at(p.x()).conn].alive = false;
        eps_.erase(p.x());
        eps_.erase(o);
        kill(id);
        set_proc(pc, q.p());
        return true;
      }
      case PK::Out: {
        Name o = other_end(p.x());
        int pc = eps_.at(o).comp;
        const Process q = comps_[pc].proc;
        if (q.kind() != PK::In || q.x() != o) return false;
        Formula t = eps_.at(p.x()).type;
        int old = eps_.at(p.x()).var;
        Name ey = fresh(), ez = fresh();
        int va = new_var();
        connect(ey, ez, t.left(), va);
        int vb = rewire(p.x(), o, t.right());
        define(old, mk(Expr::Kind::Pair, va, vb));
        set_proc(id, p.q());
        add_comp(substitute(p.p(), ey, p.y()));
        set_proc(pc, substitute(q.p(), ez, q.y()));
        return true;
      }
      case PK::Select: {
        Name o = other_end(p.x());
        int pc = eps_.at(o).comp;
        const Process q = comps_[pc].proc;
        if (q.kind() != PK::Case || q.x() != o) return false;
        Formula t = eps_.at(p.x()).type;
        int old = eps_.at(p.x()).var;
        int vb = rewire(p.x(), o, p.index() == 1 ? t.left() : t.right());
        define(old, mk(Expr::Kind::Tag, vb, -1, p.index()));
        set_proc(id, p.p());
        set_proc(pc, p.index() == 1 ? q.p() : q.q());
        return true;
      }
      case PK::Client: {
        const Endpoint ce = eps_.at(p.x());
        Conn& h = conns_[ce.conn];
        Name bang = h.bang;
        int sc = eps_.at(bang).comp;
        const Process s = comps_[sc].proc;
        if (s.kind() != PK::Server || s.x() != bang) return false;
        // a fresh copy of the server body for this client
        std::map<Name, Name> copy;
        for (const auto& n : free_names(s)) {
          if (n == bang) continue;
          Endpoint& ne = eps_.at(n);
          Name c = fresh();
          int w1 = new_var(), w2 = new_var();
          define(ne.var, mk(Expr::Kind::Union, w1, w2));
          ne.var = w2;
          eps_[c] = Endpoint{-1, ne.conn, w1, ne.type};
          conns_[ne.conn].clients.push_back(c);
          copy[n] = c;
        }
        Name ey = fresh(), ez = fresh();
        copy[s.y()] = ey;
        int va = new_var();
        connect(ey, ez, eps_.at(bang).type.left(), va);
        define(ce.var, mk(Expr::Kind::Single, va));
        drop_client(ce.conn, p.x());
        eps_.erase(p.x());
        set_proc(id, substitute(p.p(), ez, p.y()));
        add_comp(rename(s.p(), copy));
        return true;
      }
      case PK::EmptyIn:
      case PK::In:
      case PK::Case:
      case PK::Server:
        return false;
    }
    return false;
  }

  void link(int id, const Name& x, const Name& y) {
    const Endpoint ex = eps_.at(x);
    const Endpoint ey = eps_.at(y);
    if (ex.conn == ey.conn) throw std::logic_error("forwarder loops on itself");
    if (!conns_[ex.conn].hub) {
      Conn& w1 = conns_[ex.conn];
      Conn& w2 = conns_[ey.conn];
      Name p = w1.a == x ? w1.b : w1.a;
      Name q = w2.a == y ? w2.b : w2.a;
      define(ey.var, mk(Expr::Kind::Alias, ex.var));
      w2.alive = false;
      if (w1.a == x) w1.a = q; else w1.b = q;
      Endpoint& eq = eps_.at(q);
      eq.conn = ex.conn;
      eq.var = ex.var;
      (void)p;
    } else {
      // one end is a client of hub hc, the other the ! side of hub hb
      bool x_client = ex.type.kind() == FK::WhyNot;
      const Name& c = x_client ? x : y;
      const Name& b = x_client ? y : x;
      const Endpoint ec = eps_.at(c);
      const Endpoint eb = eps_.at(b);
      Conn& hc = conns_[ec.conn];
      Conn& hb = conns_[eb.conn];
      define(ec.var, mk(Expr::Kind::Alias, eb.var));
      auto& cl = hc.clients;
      cl.erase(std::find(cl.begin(), cl.end(), c));
      for (const auto& m : hb.clients) {
        cl.push_back(m);
        eps_.at(m).conn = ec.conn;
      }
      hb.clients.clear();
      hb.alive = false;
    }
    eps_.erase(x);
    eps_.erase(y);
    kill(id);
  }
};

}  // namespace

ObserveResult observe(const Configuration& c, const ObserveOptions& opt) {
  NameSet fn = config_free_names(c);
  if (!fn.empty())
    throw Error(ErrorCode::OpenConfiguration, "configuration has free name " + *fn.begin());
  check_config(c, opt.sys);
  Machine m(opt.K, opt.schedule_seed);
  std::map<Name, int> observed;
  m.flatten(c, {}, observed);
  ObserveResult r;
  if (!m.run(opt.depth, r.steps)) {
    r.depth_exceeded = true;
    return r;
  }
  if (auto t = m.read(observed)) r.observations.insert(*t);
  return r;
}

AdequacyResult adequacy_check(const Configuration& c, int K, int depth) {
  AdequacyResult r;
  ObserveOptions opt;
  opt.K = K;
  opt.depth = depth;
  ObserveResult o = observe(c, opt);
  if (o.depth_exceeded) throw Error(ErrorCode::DepthExceeded, "observation ran out of steps");
  r.operational = o.observations;
  r.denotational = config_denote(c, System::CP02, K);
  r.holds = r.operational == r.denotational;
  return r;
}

}  // namespace cpwb
