#include "cpwb/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace cpwb {

using FK = Formula::Kind;
using P = Process;

Connectives all_connectives() {
  return {FK::One, FK::Bot, FK::Tensor, FK::Par, FK::Plus, FK::With, FK::OfCourse, FK::WhyNot};
}

Connectives exponential_free_connectives() {
  return {FK::One, FK::Bot, FK::Tensor, FK::Par, FK::Plus, FK::With};
}

namespace {

bool has(const Connectives& cs, FK k) { return std::find(cs.begin(), cs.end(), k) != cs.end(); }

Formula make_binary(FK k, const Formula& a, const Formula& b) {
  switch (k) {
    case FK::Tensor: return Formula::tensor(a, b);
    case FK::Par: return Formula::par(a, b);
    case FK::Plus: return Formula::plus(a, b);
    default: return Formula::with(a, b);
  }
}

const FK kBinary[] = {FK::Tensor, FK::Par, FK::Plus, FK::With};

std::vector<Formula> leaves(const Connectives& cs) {
  std::vector<Formula> out;
  if (has(cs, FK::One)) out.push_back(Formula::one());
  if (has(cs, FK::Bot)) out.push_back(Formula::bot());
  return out;
}

}  // namespace

std::vector<Formula> enumerate_formulas(int d, const Connectives& cs) {
  std::vector<Formula> level = leaves(cs);
  for (int i = 0; i < d; ++i) {
    std::vector<Formula> next = leaves(cs);
    for (FK k : kBinary) {
      if (!has(cs, k)) continue;
      for (const auto& a : level)
        for (const auto& b : level) next.push_back(make_binary(k, a, b));
    }
    if (has(cs, FK::OfCourse))
      for (const auto& a : level) next.push_back(Formula::of_course(a));
    if (has(cs, FK::WhyNot))
      for (const auto& a : level) next.push_back(Formula::why_not(a));
    level = std::move(next);
  }
  // Stable order: by depth, then construction order.
  std::stable_sort(level.begin(), level.end(),
                   [](const Formula& a, const Formula& b) { return a.depth() < b.depth(); });
  return level;
}

std::vector<Formula> enumerate_formulas_bounded(int d, int n, const Connectives& cs) {
  // exact[(d, n)]: depth <= d and exactly n connectives.
  std::map<std::pair<int, int>, std::vector<Formula>> memo;
  auto exact = [&](auto&& self, int dd, int nn) -> const std::vector<Formula>& {
    auto key = std::make_pair(dd, nn);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Formula> out;
    if (nn == 0) {
      out = leaves(cs);
    } else if (dd > 0) {
      for (FK k : kBinary) {
        if (!has(cs, k)) continue;
        for (int i = 0; i < nn; ++i) {
          const auto& ls = self(self, dd - 1, i);
          const auto& rs = self(self, dd - 1, nn - 1 - i);
          for (const auto& a : ls)
            for (const auto& b : rs) out.push_back(make_binary(k, a, b));
        }
      }
      const auto& sub = self(self, dd - 1, nn - 1);
      if (has(cs, FK::OfCourse))
        for (const auto& a : sub) out.push_back(Formula::of_course(a));
      if (has(cs, FK::WhyNot))
        for (const auto& a : sub) out.push_back(Formula::why_not(a));
    }
    return memo.emplace(key, std::move(out)).first->second;
  };
  std::vector<Formula> all;
  for (int k = 0; k <= n; ++k) {
    const auto& layer = exact(exact, d, k);
    all.insert(all.end(), layer.begin(), layer.end());
  }
  return all;
}

namespace {

class ProcessEnumerator {
 public:
  explicit ProcessEnumerator(const EnumOptions& opt) : opt_(opt) {}

  // Processes of exactly size n.
  const std::vector<P>& exact(const TypingContext& ctx, int n) {
    std::string key = ctx_str(ctx) + "#" + std::to_string(n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<P> out;
    build(ctx, n, out);
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  static Name fresh(const TypingContext& ctx, const Name& avoid = {}) {
    static const char* stream[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    for (int round = 0;; ++round) {
      for (const char* s : stream) {
        Name n = round == 0 ? Name(s) : s + std::to_string(round);
        if (!ctx.count(n) && n != avoid) return n;
      }
    }
  }

  static TypingContext with(TypingContext ctx, const Name& x, const Formula& a) {
    ctx[x] = a;
    return ctx;
  }

  // All ways to split ctx into two parts.
  static std::vector<std::pair<TypingContext, TypingContext>> splits(const TypingContext& ctx) {
    std::vector<std::pair<Name, Formula>> items(ctx.begin(), ctx.end());
    std::vector<std::pair<TypingContext, TypingContext>> out;
    const unsigned m = static_cast<unsigned>(items.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      TypingContext l, r;
      for (unsigned i = 0; i < m; ++i) (mask >> i & 1u ? l : r).insert(items[i]);
      out.emplace_back(std::move(l), std::move(r));
    }
    return out;
  }

  // Pairs (p, q) with sizes summing to n and the given contexts.
  template <class F>
  void binary(const TypingContext& l, const TypingContext& r, int n, F&& emit) {
    for (int n1 = 1; n1 < n; ++n1) {
      const auto& ps = exact(l, n1);
      if (ps.empty()) continue;
      const auto& qs = exact(r, n - n1);
      for (const auto& p : ps)
        for (const auto& q : qs) emit(p, q);
    }
  }

  void build(const TypingContext& ctx, int n, std::vector<P>& out) {
    if (n <= 0) return;
    if (n == 1) {
      if (ctx.empty() && opt_.sys != System::CP) out.push_back(P::inact());
      if (ctx.size() == 1 && ctx.begin()->second.kind() == FK::One)
        out.push_back(P::empty_out(ctx.begin()->first));
      if (ctx.size() == 2) {
        auto a = ctx.begin(), b = std::next(a);
        if (dual(a->second) == b->second) {
          out.push_back(P::fwd(a->first, b->first));
          out.push_back(P::fwd(b->first, a->first));
        }
      }
      return;
    }
    for (const auto& [x, a] : ctx) {
      TypingContext rest = ctx;
      rest.erase(x);
      switch (a.kind()) {
        case FK::One: break;
        case FK::Bot:
          for (const auto& p : exact(rest, n - 1)) out.push_back(P::empty_in(x, p));
          break;
        case FK::Tensor: {
          Name y = fresh(ctx);
          for (const auto& [l, r] : splits(rest))
            binary(with(l, y, a.left()), with(r, x, a.right()), n - 1,
                   [&](const P& p, const P& q) { out.push_back(P::out(x, y, p, q)); });
          break;
        }
        case FK::Par: {
          Name y = fresh(ctx);
          for (const auto& p : exact(with(with(rest, y, a.left()), x, a.right()), n - 1))
            out.push_back(P::in(x, y, p));
          break;
        }
        case FK::Plus:
          for (int i = 1; i <= 2; ++i)
            for (const auto& p : exact(with(rest, x, i == 1 ? a.left() : a.right()), n - 1))
              out.push_back(P::select(x, i, p));
          break;
        case FK::With:
          binary(with(rest, x, a.left()), with(rest, x, a.right()), n - 1,
                 [&](const P& p, const P& q) { out.push_back(P::offer(x, p, q)); });
          break;
        case FK::OfCourse: {
          bool all_why = std::all_of(rest.begin(), rest.end(),
                                     [](const auto& kv) { return kv.second.kind() == FK::WhyNot; });
          if (!all_why) break;
          Name y = fresh(ctx);
          for (const auto& p : exact(with(rest, y, a.left()), n - 1)) out.push_back(P::server(x, y, p));
          break;
        }
        case FK::WhyNot: {
          Name y = fresh(ctx);
          for (const auto& p : exact(with(rest, y, a.left()), n - 1)) out.push_back(P::client(x, y, p));
          if (opt_.structural) {
            for (const auto& p : exact(rest, n - 1)) out.push_back(P::weak(x, a, p));
            Name x1 = fresh(ctx), x2 = fresh(ctx, x1);
            for (const auto& p : exact(with(with(rest, x1, a), x2, a), n - 1))
              out.push_back(P::contract(x, x1, x2, p));
          }
          break;
        }
      }
    }
    if (!opt_.cut_types.empty() && n >= 3) {
      Name c = fresh(ctx);
      for (const auto& [l, r] : splits(ctx))
        for (const auto& t : opt_.cut_types)
          binary(with(l, c, t), with(r, c, dual(t)), n - 1,
                 [&](const P& p, const P& q) { out.push_back(P::cut(c, t, p, q)); });
    }
    if (opt_.sys == System::CP02 && n >= 3) {
      for (const auto& [l, r] : splits(ctx))
        binary(l, r, n - 1, [&](const P& p, const P& q) { out.push_back(P::par(p, q)); });
    }
  }

  EnumOptions opt_;
  std::map<std::string, std::vector<P>> memo_;
};

}  // namespace

std::vector<Process> enumerate_processes(const TypingContext& ctx, int s, const EnumOptions& opt) {
  ProcessEnumerator e(opt);
  std::vector<Process> out;
  for (int n = 1; n <= s; ++n) {
    const auto& ps = e.exact(ctx, n);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

std::vector<TypingContext> enumerate_contexts(const std::vector<Formula>& types, int max_names) {
  static const char* names[] = {"x", "y", "z", "u", "v"};
  std::vector<TypingContext> out{TypingContext{}};
  std::vector<TypingContext> frontier{TypingContext{}};
  for (int k = 0; k < max_names && k < 5; ++k) {
    std::vector<TypingContext> next;
    for (const auto& c : frontier)
      for (const auto& t : types) {
        TypingContext d = c;
        d[names[k]] = t;
        next.push_back(std::move(d));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace cpwb
