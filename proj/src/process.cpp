#include "cpwb/process.hpp"

#include <stdexcept>

namespace cpwb {

using K = Process::Kind;

Process::Process() : Process(make(Node{}, nullptr, nullptr)) {}

Process Process::make(Node n, const Process* p, const Process* q) {
  if (p) n.p = std::make_shared<const Process>(*p);
  if (q) n.q = std::make_shared<const Process>(*q);
  return Process(std::make_shared<const Node>(std::move(n)));
}

Process Process::inact() {
  static const Process z = make(Node{}, nullptr, nullptr);
  return z;
}

Process Process::cut(const Name& x, const Formula& a, const Process& p,
                     const Process& q) {
  Node n;
  n.kind = K::Cut;
  n.x = x;
  n.annot = a;
  return make(std::move(n), &p, &q);
}

Process Process::par(const Process& p, const Process& q) {
  Node n;
  n.kind = K::Par;
  return make(std::move(n), &p, &q);
}

Process Process::fwd(const Name& x, const Name& y) {
  Node n;
  n.kind = K::Fwd;
  n.x = x;
  n.y = y;
  return make(std::move(n), nullptr, nullptr);
}

Process Process::out(const Name& x, const Name& y, const Process& p,
                     const Process& q) {
  Node n;
  n.kind = K::Out;
  n.x = x;
  n.y = y;
  return make(std::move(n), &p, &q);
}

Process Process::in(const Name& x, const Name& y, const Process& p) {
  Node n;
  n.kind = K::In;
  n.x = x;
  n.y = y;
  return make(std::move(n), &p, nullptr);
}

Process Process::server(const Name& x, const Name& y, const Process& p) {
  Node n;
  n.kind = K::Server;
  n.x = x;
  n.y = y;
  return make(std::move(n), &p, nullptr);
}

Process Process::client(const Name& x, const Name& y, const Process& p) {
  Node n;
  n.kind = K::Client;
  n.x = x;
  n.y = y;
  return make(std::move(n), &p, nullptr);
}

Process Process::select(const Name& x, int i, const Process& p) {
  if (i != 1 && i != 2) throw std::invalid_argument("selection index must be 1 or 2");
  Node n;
  n.kind = K::Select;
  n.x = x;
  n.index = i;
  return make(std::move(n), &p, nullptr);
}

Process Process::offer(const Name& x, const Process& p, const Process& q) {
  Node n;
  n.kind = K::Case;
  n.x = x;
  return make(std::move(n), &p, &q);
}

Process Process::empty_out(const Name& x) {
  Node n;
  n.kind = K::EmptyOut;
  n.x = x;
  return make(std::move(n), nullptr, nullptr);
}

Process Process::empty_in(const Name& x, const Process& p) {
  Node n;
  n.kind = K::EmptyIn;
  n.x = x;
  return make(std::move(n), &p, nullptr);
}

Process Process::weak(const Name& x, const Formula& a, const Process& p) {
  Node n;
  n.kind = K::Weak;
  n.x = x;
  n.annot = a;
  return make(std::move(n), &p, nullptr);
}

Process Process::contract(const Name& x, const Name& x1, const Name& x2,
                          const Process& p) {
  Node n;
  n.kind = K::Contract;
  n.x = x;
  n.y = x1;
  n.z = x2;
  return make(std::move(n), &p, nullptr);
}

const Process& Process::p() const {
  if (!node_->p) throw std::logic_error("process has no continuation");
  return *node_->p;
}

const Process& Process::q() const {
  if (!node_->q) throw std::logic_error("process has no second continuation");
  return *node_->q;
}

std::string Process::str() const {
  switch (kind()) {
    case K::Inact: return "0";
    case K::Cut:
      return "new " + x() + ":" + annot().str() + " (" + p().str() + " | " +
             q().str() + ")";
    case K::Par: return "(" + p().str() + " | " + q().str() + ")";
    case K::Fwd: return "fwd " + x() + " " + y();
    case K::Out:
      return x() + "[" + y() + "](" + p().str() + " | " + q().str() + ")";
    case K::In: return x() + "(" + y() + ")." + p().str();
    case K::Server: return "!" + x() + "(" + y() + ")." + p().str();
    case K::Client: return "?" + x() + "[" + y() + "]." + p().str();
    case K::Select: return x() + "<" + std::to_string(index()) + "." + p().str();
    case K::Case: return x() + ">{" + p().str() + " ; " + q().str() + "}";
    case K::EmptyOut: return x() + "[]";
    case K::EmptyIn: return x() + "()." + p().str();
    case K::Weak: return "weak " + x() + ":" + annot().str() + "." + p().str();
    case K::Contract:
      return "ctr " + x() + "<" + y() + "," + z() + ">." + p().str();
  }
  return "?";
}

bool operator==(const Process& a, const Process& b) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind()) return false;
  if (a.x() != b.x() || a.y() != b.y() || a.z() != b.z()) return false;
  if (a.index() != b.index()) return false;
  if ((a.kind() == K::Cut || a.kind() == K::Weak) && !(a.annot() == b.annot()))
    return false;
  switch (a.kind()) {
    case K::Cut:
    case K::Par:
    case K::Out:
    case K::Case:
      return a.p() == b.p() && a.q() == b.q();
    case K::In:
    case K::Server:
    case K::Client:
    case K::Select:
    case K::EmptyIn:
    case K::Weak:
    case K::Contract:
      return a.p() == b.p();
    default:
      return true;
  }
}

namespace {

void collect_free(const Process& p, NameSet& bound, NameSet& out) {
  auto use = [&](const Name& n) {
    if (!bound.count(n)) out.insert(n);
  };
  auto under = [&](const Process& body, std::initializer_list<Name> bs) {
    std::vector<Name> added;
    for (const auto& b : bs)
      if (bound.insert(b).second) added.push_back(b);
    collect_free(body, bound, out);
    for (const auto& b : added) bound.erase(b);
  };
  switch (p.kind()) {
    case K::Inact: return;
    case K::Cut:
      under(p.p(), {p.x()});
      under(p.q(), {p.x()});
      return;
    case K::Par:
      collect_free(p.p(), bound, out);
      collect_free(p.q(), bound, out);
      return;
    case K::Fwd:
      use(p.x());
      use(p.y());
      return;
    case K::Out:
      use(p.x());
      under(p.p(), {p.y()});
      collect_free(p.q(), bound, out);
      return;
    case K::In:
    case K::Server:
    case K::Client:
      use(p.x());
      under(p.p(), {p.y()});
      return;
    case K::Select:
    case K::EmptyIn:
    case K::Weak:
      use(p.x());
      collect_free(p.p(), bound, out);
      return;
    case K::Case:
      use(p.x());
      collect_free(p.p(), bound, out);
      collect_free(p.q(), bound, out);
      return;
    case K::EmptyOut:
      use(p.x());
      return;
    case K::Contract:
      use(p.x());
      under(p.p(), {p.y(), p.z()});
      return;
  }
}

void collect_all(const Process& p, NameSet& out) {
  switch (p.kind()) {
    case K::Inact: return;
    case K::Contract: out.insert(p.z()); [[fallthrough]];
    case K::Fwd:
    case K::Out:
    case K::In:
    case K::Server:
    case K::Client:
      out.insert(p.y());
      [[fallthrough]];
    default:
      if (p.kind() != K::Par) out.insert(p.x());
  }
  switch (p.kind()) {
    case K::Cut:
    case K::Par:
    case K::Out:
    case K::Case:
      collect_all(p.p(), out);
      collect_all(p.q(), out);
      return;
    case K::In:
    case K::Server:
    case K::Client:
    case K::Select:
    case K::EmptyIn:
    case K::Weak:
    case K::Contract:
      collect_all(p.p(), out);
      return;
    default:
      return;
  }
}

}  // namespace

NameSet free_names(const Process& p) {
  NameSet bound, out;
  collect_free(p, bound, out);
  return out;
}

NameSet all_names(const Process& p) {
  NameSet out;
  collect_all(p, out);
  return out;
}

bool occurs_free(const Process& p, const Name& x) {
  return free_names(p).count(x) > 0;
}

int size(const Process& p) {
  switch (p.kind()) {
    case K::Cut:
    case K::Par:
    case K::Out:
    case K::Case:
      return 1 + size(p.p()) + size(p.q());
    case K::In:
    case K::Server:
    case K::Client:
    case K::Select:
    case K::EmptyIn:
    case K::Weak:
    case K::Contract:
      return 1 + size(p.p());
    default:
      return 1;
  }
}

void NameSupply::avoid(const Process& p) { avoid(all_names(p)); }

Name NameSupply::fresh(const Name& base) {
  if (!used_.count(base)) {
    used_.insert(base);
    return base;
  }
  int& k = next_[base];
  for (;;) {
    Name n = base + std::to_string(++k);
    if (!used_.count(n)) {
      used_.insert(n);
      return n;
    }
  }
}

namespace {

// Renaming under a substitution map; `avoid` collects names that binders
// must not capture.
Process rename_impl(const Process& p, std::map<Name, Name> m);

Name map_name(const std::map<Name, Name>& m, const Name& n) {
  auto it = m.find(n);
  return it == m.end() ? n : it->second;
}

// Enter a scope binding `b` in `body`. Returns the (possibly renamed) binder
// and updates the map for the body.
Name enter(const Name& b, const std::vector<const Process*>& bodies,
           std::map<Name, Name>& m) {
  m.erase(b);
  NameSet body_free;
  for (auto* body : bodies) {
    auto fs = free_names(*body);
    body_free.insert(fs.begin(), fs.end());
  }
  bool clash = false;
  for (const auto& [from, to] : m)
    if (to == b && body_free.count(from)) clash = true;
  if (!clash) return b;
  NameSupply ns;
  for (auto* body : bodies) ns.avoid(*body);
  for (const auto& [from, to] : m) {
    ns.avoid(from);
    ns.avoid(to);
  }
  ns.avoid(b);
  Name nb = ns.fresh(b);
  m[b] = nb;
  return nb;
}

Process rename_impl(const Process& p, std::map<Name, Name> m) {
  // Drop identity and irrelevant entries early.
  if (m.empty()) return p;
  switch (p.kind()) {
    case K::Inact: return p;
    case K::Cut: {
      auto mm = m;
      Name b = enter(p.x(), {&p.p(), &p.q()}, mm);
      return Process::cut(b, p.annot(), rename_impl(p.p(), mm),
                          rename_impl(p.q(), mm));
    }
    case K::Par:
      return Process::par(rename_impl(p.p(), m), rename_impl(p.q(), m));
    case K::Fwd: return Process::fwd(map_name(m, p.x()), map_name(m, p.y()));
    case K::Out: {
      auto mm = m;
      Name b = enter(p.y(), {&p.p()}, mm);
      return Process::out(map_name(m, p.x()), b, rename_impl(p.p(), mm),
                          rename_impl(p.q(), m));
    }
    case K::In:
    case K::Server:
    case K::Client: {
      auto mm = m;
      Name b = enter(p.y(), {&p.p()}, mm);
      Process body = rename_impl(p.p(), mm);
      if (p.kind() == K::In) return Process::in(map_name(m, p.x()), b, body);
      if (p.kind() == K::Server) return Process::server(map_name(m, p.x()), b, body);
      return Process::client(map_name(m, p.x()), b, body);
    }
    case K::Select:
      return Process::select(map_name(m, p.x()), p.index(), rename_impl(p.p(), m));
    case K::Case:
      return Process::offer(map_name(m, p.x()), rename_impl(p.p(), m),
                            rename_impl(p.q(), m));
    case K::EmptyOut: return Process::empty_out(map_name(m, p.x()));
    case K::EmptyIn:
      return Process::empty_in(map_name(m, p.x()), rename_impl(p.p(), m));
    case K::Weak:
      return Process::weak(map_name(m, p.x()), p.annot(), rename_impl(p.p(), m));
    case K::Contract: {
      auto mm = m;
      Name b1 = enter(p.y(), {&p.p()}, mm);
      // a clash with b1 shows up as a capture in the second enter
      Name b2 = enter(p.z(), {&p.p()}, mm);
      return Process::contract(map_name(m, p.x()), b1, b2, rename_impl(p.p(), mm));
    }
  }
  return p;
}

}  // namespace

Process rename(const Process& p, const std::map<Name, Name>& m) {
  std::map<Name, Name> mm;
  for (const auto& [f, t] : m)
    if (f != t) mm[f] = t;
  return rename_impl(p, mm);
}

Process substitute(const Process& p, const Name& y, const Name& x) {
  return rename(p, {{x, y}});
}

namespace {

struct AlphaEnv {
  std::map<Name, int> left, right;
  int level = 0;
};

bool same_name(const AlphaEnv& e, const Name& a, const Name& b) {
  auto ia = e.left.find(a);
  auto ib = e.right.find(b);
  if (ia == e.left.end() && ib == e.right.end()) return a == b;
  if (ia == e.left.end() || ib == e.right.end()) return false;
  return ia->second == ib->second;
}

bool alpha(const Process& a, const Process& b, AlphaEnv env);

bool under(const Process& a, const Process& b, AlphaEnv env,
           std::initializer_list<std::pair<Name, Name>> binders) {
  for (const auto& [l, r] : binders) {
    int lv = env.level++;
    env.left[l] = lv;
    env.right[r] = lv;
  }
  return alpha(a, b, std::move(env));
}

bool alpha(const Process& a, const Process& b, AlphaEnv env) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case K::Inact: return true;
    case K::Cut:
      return a.annot() == b.annot() &&
             under(a.p(), b.p(), env, {{a.x(), b.x()}}) &&
             under(a.q(), b.q(), env, {{a.x(), b.x()}});
    case K::Par: return alpha(a.p(), b.p(), env) && alpha(a.q(), b.q(), env);
    case K::Fwd:
      return same_name(env, a.x(), b.x()) && same_name(env, a.y(), b.y());
    case K::Out:
      return same_name(env, a.x(), b.x()) &&
             under(a.p(), b.p(), env, {{a.y(), b.y()}}) &&
             alpha(a.q(), b.q(), env);
    case K::In:
    case K::Server:
    case K::Client:
      return same_name(env, a.x(), b.x()) &&
             under(a.p(), b.p(), env, {{a.y(), b.y()}});
    case K::Select:
      return a.index() == b.index() && same_name(env, a.x(), b.x()) &&
             alpha(a.p(), b.p(), env);
    case K::Case:
      return same_name(env, a.x(), b.x()) && alpha(a.p(), b.p(), env) &&
             alpha(a.q(), b.q(), env);
    case K::EmptyOut: return same_name(env, a.x(), b.x());
    case K::EmptyIn: return same_name(env, a.x(), b.x()) && alpha(a.p(), b.p(), env);
    case K::Weak:
      return a.annot() == b.annot() && same_name(env, a.x(), b.x()) &&
             alpha(a.p(), b.p(), env);
    case K::Contract:
      return same_name(env, a.x(), b.x()) &&
             under(a.p(), b.p(), env, {{a.y(), b.y()}, {a.z(), b.z()}});
  }
  return false;
}

}  // namespace

bool alpha_eq(const Process& a, const Process& b) {
  return alpha(a, b, AlphaEnv{});
}

}  // namespace cpwb
