#include "cpwb/denotation.hpp"

#include <algorithm>

namespace cpwb {

using K_ = Process::Kind;

TupleSet join(const TupleSet& a, const TupleSet& b, const Name& x, bool keep) {
  std::map<Obs, std::vector<const ObsTuple*>> index;
  for (const auto& t : b) index[t.at(x)].push_back(&t);
  TupleSet out;
  for (const auto& t : a) {
    auto it = index.find(t.at(x));
    if (it == index.end()) continue;
    for (const ObsTuple* u : it->second) {
      ObsTuple r = t;
      for (const auto& kv : *u) r.insert(kv);
      if (!keep) r.erase(x);
      out.insert(std::move(r));
    }
  }
  return out;
}

TupleSet product(const TupleSet& a, const TupleSet& b) {
  TupleSet out;
  for (const auto& t : a)
    for (const auto& u : b) {
      ObsTuple r = t;
      for (const auto& kv : u) r.insert(kv);
      out.insert(std::move(r));
    }
  return out;
}

TupleSet bounded(TupleSet s, int K) {
  for (auto it = s.begin(); it != s.end();) {
    if (tuple_max_bag(*it) > K)
      it = s.erase(it);
    else
      ++it;
  }
  return s;
}

namespace {

ObsTuple moved(ObsTuple t, const Name& from, const Name& to, const Obs& value) {
  t.erase(from);
  t[to] = value;
  return t;
}

// Server clause: k copies of the body, k <= K, unordered.
void server_rec(const std::vector<const ObsTuple*>& body, size_t from, int left,
                const Name& x, const Name& y, const std::vector<Name>& ctx,
                std::vector<const ObsTuple*>& cur, int K, TupleSet& out) {
  {
    ObsTuple r;
    std::vector<Obs> xs;
    bool ok = true;
    for (const auto* t : cur) xs.push_back(t->at(y));
    r[x] = Obs::bag(std::move(xs));
    for (const auto& n : ctx) {
      std::vector<Obs> items;
      for (const auto* t : cur) {
        const Obs& a = t->at(n);
        items.insert(items.end(), a.items().begin(), a.items().end());
      }
      if (static_cast<int>(items.size()) > K) {
        ok = false;
        break;
      }
      r[n] = Obs::bag(std::move(items));
    }
    if (ok && r[x].max_bag() <= K) out.insert(std::move(r));
  }
  if (left == 0) return;
  for (size_t i = from; i < body.size(); ++i) {
    cur.push_back(body[i]);
    server_rec(body, i, left - 1, x, y, ctx, cur, K, out);
    cur.pop_back();
  }
}

TupleSet denote_rec(const Derivation& d, int K) {
  const Process& p = d.process;
  switch (d.rule) {
    case Rule::Mix0: return TupleSet{ObsTuple{}};
    case Rule::Id: {
      TupleSet out;
      for (const auto& a : obs_space(d.ctx.at(p.x()), K))
        out.insert(ObsTuple{{p.x(), a}, {p.y(), a}});
      return out;
    }
    case Rule::One: return TupleSet{ObsTuple{{p.x(), Obs::star()}}};
    case Rule::Bot: {
      TupleSet out;
      for (auto t : denote_rec(d.premises[0], K)) {
        t[p.x()] = Obs::star();
        out.insert(std::move(t));
      }
      return out;
    }
    case Rule::Tensor: {
      TupleSet left = denote_rec(d.premises[0], K);
      TupleSet right = denote_rec(d.premises[1], K);
      TupleSet out;
      for (const auto& t : left) {
        const Obs& a = t.at(p.y());
        for (const auto& u : right) {
          ObsTuple r = t;
          r.erase(p.y());
          for (const auto& kv : u)
            if (kv.first != p.x()) r.insert(kv);
          r[p.x()] = Obs::pair(a, u.at(p.x()));
          out.insert(std::move(r));
        }
      }
      return out;
    }
    case Rule::Par: {
      TupleSet out;
      for (const auto& t : denote_rec(d.premises[0], K)) {
        Obs v = Obs::pair(t.at(p.y()), t.at(p.x()));
        ObsTuple r = t;
        r.erase(p.y());
        r[p.x()] = v;
        out.insert(std::move(r));
      }
      return out;
    }
    case Rule::Plus: {
      TupleSet out;
      for (auto t : denote_rec(d.premises[0], K)) {
        t[p.x()] = Obs::tag(p.index(), t.at(p.x()));
        out.insert(std::move(t));
      }
      return out;
    }
    case Rule::With: {
      TupleSet out;
      for (int i = 0; i < 2; ++i)
        for (auto t : denote_rec(d.premises[i], K)) {
          t[p.x()] = Obs::tag(i + 1, t.at(p.x()));
          out.insert(std::move(t));
        }
      return out;
    }
    case Rule::OfCourse: {
      TupleSet body = denote_rec(d.premises[0], K);
      std::vector<const ObsTuple*> rows;
      for (const auto& t : body) rows.push_back(&t);
      std::vector<Name> ctx;
      for (const auto& kv : d.ctx)
        if (kv.first != p.x()) ctx.push_back(kv.first);
      std::vector<const ObsTuple*> cur;
      TupleSet out;
      server_rec(rows, 0, K, p.x(), p.y(), ctx, cur, K, out);
      return out;
    }
    case Rule::WhyNot: {
      TupleSet out;
      for (const auto& t : denote_rec(d.premises[0], K)) {
        Obs v = Obs::bag({t.at(p.y())});
        if (v.max_bag() > K) continue;
        out.insert(moved(t, p.y(), p.x(), v));
      }
      return out;
    }
    case Rule::Weaken: {
      TupleSet out;
      for (auto t : denote_rec(d.premises[0], K)) {
        t[p.x()] = Obs::bag({});
        out.insert(std::move(t));
      }
      return out;
    }
    case Rule::Contract: {
      TupleSet out;
      for (const auto& t : denote_rec(d.premises[0], K)) {
        Obs v = bag_union(t.at(p.y()), t.at(p.z()));
        if (v.max_bag() > K) continue;
        ObsTuple r = t;
        r.erase(p.y());
        r.erase(p.z());
        r[p.x()] = v;
        out.insert(std::move(r));
      }
      return out;
    }
    case Rule::Cut:
      return join(denote_rec(d.premises[0], K), denote_rec(d.premises[1], K), p.x(), false);
    case Rule::Mix2:
      return product(denote_rec(d.premises[0], K), denote_rec(d.premises[1], K));
  }
  return {};
}

}  // namespace

DenotationSet denote(const Derivation& d, int K) {
  return DenotationSet{d.ctx, K, denote_rec(d, K)};
}

DenotationSet denote(const Process& p, const TypingContext& ctx, System sys, int K) {
  return denote(check(p, ctx, sys), K);
}

EquivResult compare(const Process& p, const Process& q, const TypingContext& ctx,
                    System sys, int K) {
  Derivation dp, dq;
  try {
    dp = check(p, ctx, sys);
    dq = check(q, ctx, sys);
  } catch (const Error& e) {
    throw Error(ErrorCode::TypingMismatch,
                std::string("processes do not share the typing ") + ctx_str(ctx) + ": " + e.what());
  }
  TupleSet a = denote_rec(dp, K);
  TupleSet b = denote_rec(dq, K);
  EquivResult r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(r.only_left, r.only_left.end()));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                      std::inserter(r.only_right, r.only_right.end()));
  r.equivalent = r.only_left.empty() && r.only_right.empty();
  return r;
}

bool equivalent(const Process& p, const Process& q, const TypingContext& ctx,
                System sys, int K) {
  return compare(p, q, ctx, sys, K).equivalent;
}

}  // namespace cpwb
