#include "cpwb/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "cpwb/denotation.hpp"
#include "cpwb/oracle.hpp"
#include "cpwb/transformers.hpp"
#include "cpwb/translation.hpp"

namespace cpwb {

using FK = Formula::Kind;
using json = nlohmann::json;

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "duality",           "adequacy",           "synchronizer",       "translation",
      "full-abstraction-1", "transformer-graph", "context-denotation", "transformer-correct",
      "full-abstraction-2", "mix-permutation",   "injectivity",        "worked-example"};
  return names;
}

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

FK connective_from(const std::string& s) {
  static const std::map<std::string, FK> m = {{"1", FK::One},       {"bot", FK::Bot},
                                               {"*", FK::Tensor},    {"%", FK::Par},
                                               {"+", FK::Plus},      {"&", FK::With},
                                               {"!", FK::OfCourse},  {"?", FK::WhyNot}};
  auto it = m.find(s);
  if (it == m.end()) config_error("unknown connective " + s);
  return it->second;
}

bool has(const Connectives& cs, FK k) { return std::find(cs.begin(), cs.end(), k) != cs.end(); }

bool has_exponential(const Connectives& cs) { return has(cs, FK::OfCourse) || has(cs, FK::WhyNot); }

Connectives without_exponentials(const Connectives& cs) {
  Connectives out;
  for (FK k : cs)
    if (k != FK::OfCourse && k != FK::WhyNot) out.push_back(k);
  return out;
}

bool ctx_has_exponential(const TypingContext& ctx) {
  for (const auto& kv : ctx)
    if (kv.second.has_exponential()) return true;
  return false;
}

// Collects one suite's outcome.
class Run {
 public:
  Run(std::string name, const SuiteConfig& cfg) : cfg_(cfg) {
    r_.name = std::move(name);
    start_ = std::chrono::steady_clock::now();
  }

  void pass() { ++r_.instances; }

  void fail(const std::string& what) {
    ++r_.instances;
    ++r_.failed;
    if (static_cast<int>(r_.failures.size()) < cfg_.max_reported) r_.failures.push_back(what);
  }

  void check(bool ok, const std::function<std::string()>& what) { ok ? pass() : fail(what()); }

  // Runs f, turning a thrown error into a failure.
  void guarded(const std::function<bool(std::string&)>& f, const std::string& label) {
    std::string detail;
    try {
      if (f(detail)) {
        pass();
      } else {
        fail(label + ": " + detail);
      }
    } catch (const std::exception& e) {
      fail(label + ": " + e.what());
    }
  }

  void bounded() { r_.bounded = true; }
  void count(const std::string& key, long n = 1) { r_.counts[key] += n; }

  SuiteResult done() {
    r_.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start_)
                    .count();
    return std::move(r_);
  }

 private:
  const SuiteConfig& cfg_;
  SuiteResult r_;
  std::chrono::steady_clock::time_point start_;
};

std::string at(const Process& p, const TypingContext& ctx) { return p.str() + " at " + ctx_str(ctx); }

// Processes grouped by the context they are typed at.
struct Family {
  TypingContext ctx;
  std::vector<Process> procs;
};

std::vector<Formula> cut_types() { return {Formula::one(), Formula::bot()}; }

std::vector<Family> families(const SuiteConfig& cfg) {
  auto types = enumerate_formulas(1, without_exponentials(cfg.connectives));
  EnumOptions opt;
  opt.sys = cfg.sys;
  opt.cut_types = cut_types();
  std::vector<Family> out;
  for (const auto& ctx : enumerate_contexts(types, 2)) {
    auto ps = enumerate_processes(ctx, cfg.size, opt);
    if (!ps.empty()) out.push_back({ctx, std::move(ps)});
  }
  return out;
}

struct Sample {
  TypingContext ctx;
  Process p;
};

// Processes over contexts that mention ! or ?, sampled with the config seed.
std::vector<Sample> exponential_samples(const SuiteConfig& cfg) {
  if (!has_exponential(cfg.connectives) || cfg.exponential_samples <= 0) return {};
  auto types = enumerate_formulas(1, cfg.connectives);
  std::vector<TypingContext> ctxs;
  for (const auto& ctx : enumerate_contexts(types, 2))
    if (ctx_has_exponential(ctx)) ctxs.push_back(ctx);
  std::mt19937_64 rng(cfg.seed);
  std::shuffle(ctxs.begin(), ctxs.end(), rng);
  EnumOptions opt;
  opt.sys = cfg.sys;
  opt.cut_types = cut_types();
  std::vector<Sample> pool;
  const int bound = std::min(cfg.size, 4);
  for (const auto& ctx : ctxs) {
    for (const auto& p : enumerate_processes(ctx, bound, opt)) pool.push_back({ctx, p});
    if (static_cast<int>(pool.size()) >= 8 * cfg.exponential_samples) break;
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  if (static_cast<int>(pool.size()) > cfg.exponential_samples) pool.resize(cfg.exponential_samples);
  return pool;
}

// Lazily built inputs shared by several suites.
struct Shared {
  const SuiteConfig& cfg;
  std::optional<std::vector<Family>> fam;
  std::optional<std::vector<Sample>> exp;

  const std::vector<Family>& families() {
    if (!fam) fam = cpwb::families(cfg);
    return *fam;
  }
  const std::vector<Sample>& samples() {
    if (!exp) exp = exponential_samples(cfg);
    return *exp;
  }
};

// 1. dual is an involution without fixed points.
void suite_duality(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  auto check = [&](const Formula& f) {
    Formula d = dual(f);
    run.check(dual(d) == f && !(d == f), [&] { return f.str() + " dualizes to " + d.str(); });
  };
  for (const auto& f : enumerate_formulas(cfg.depth, cfg.connectives)) check(f);
  for (const auto& f : enumerate_formulas_bounded(cfg.deep_depth, cfg.deep_connectives, cfg.connectives))
    if (f.depth() > cfg.depth) check(f);
}

// 2. observe against the configuration denotation on closed cuts.
void suite_adequacy(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  Connectives cs = without_exponentials(cfg.connectives);
  EnumOptions opt;
  opt.sys = System::CP0;
  opt.cut_types = cut_types();

  // One closing process per extra type.
  std::vector<std::pair<Formula, Process>> closers;
  for (const auto& b : enumerate_formulas(1, cs)) {
    auto rs = enumerate_processes({{"y", dual(b)}}, 3, opt);
    if (!rs.empty()) closers.emplace_back(b, rs.front());
  }

  std::uint64_t schedule = cfg.seed;
  auto instance = [&](const Configuration& c) {
    run.guarded(
        [&](std::string& detail) {
          AdequacyResult a = adequacy_check(c, cfg.K);
          if (!a.holds) {
            detail = "observed " + canonical(a.operational) + " denoted " + canonical(a.denotational);
            return false;
          }
          ObserveOptions o;
          o.K = cfg.K;
          o.schedule_seed = ++schedule;
          ObserveResult shuffled = observe(c, o);
          if (shuffled.observations != a.operational) {
            detail = "schedule " + std::to_string(o.schedule_seed) + " observed " +
                     canonical(shuffled.observations);
            return false;
          }
          return true;
        },
        c.str());
  };

  for (const auto& a : enumerate_formulas(cfg.depth, cs)) {
    auto ps = enumerate_processes({{"x", a}}, cfg.size, opt);
    auto qs = enumerate_processes({{"x", dual(a)}}, cfg.size, opt);
    for (const auto& p : ps)
      for (const auto& q : qs)
        instance(Configuration::cut("x", a, Configuration::proc(p), Configuration::proc(q)));
    for (const auto& [b, r] : closers) {
      auto close = [&, b = b, r = r](const Process& s) {
        return Configuration::cut("y", b, Configuration::proc(s), Configuration::proc(r));
      };
      if (!qs.empty())
        for (const auto& p : enumerate_processes({{"x", a}, {"y", b}}, cfg.size, opt))
          for (const auto& q : qs) instance(Configuration::cut("x", a, close(p), Configuration::proc(q)));
      if (!ps.empty())
        for (const auto& q : enumerate_processes({{"x", dual(a)}, {"y", b}}, cfg.size, opt))
          for (const auto& p : ps) instance(Configuration::cut("x", a, Configuration::proc(p), close(q)));
    }
  }
}

TypingContext synchronizer_ctx(const Formula& a, const Name& z, const Name& w, const Name& s) {
  return {{z, Formula::tensor(dual(translate_formula_dual(a)), Formula::bot())},
          {w, Formula::tensor(dual(translate_formula_dual(dual(a))), Formula::bot())},
          {s, Formula::one()}};
}

// 3. synchronizer denotations against their graphs.
void suite_synchronizer(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  const Formula one = Formula::one(), bot = Formula::bot();
  std::vector<Formula> as = {one,
                             bot,
                             Formula::tensor(one, bot),
                             Formula::par(bot, one),
                             Formula::plus(one, one),
                             Formula::with(one, bot),
                             Formula::of_course(one),
                             Formula::why_not(bot)};
  for (const auto& f : enumerate_formulas(1, cfg.connectives))
    if (std::find(as.begin(), as.end(), f) == as.end()) as.push_back(f);
  for (const auto& a : as) {
    if (a.has_exponential()) run.bounded();
    run.guarded(
        [&](std::string& detail) {
          Process p = synchronizer(a, "z", "w", "s");
          TupleSet actual = denote(p, synchronizer_ctx(a, "z", "w", "s"), System::CP, cfg.K).tuples;
          Verdict v = compare_sets(synchronizer_graph(a, "z", "w", "s", cfg.K), actual);
          detail = v.detail;
          return v.holds;
        },
        "synchronizer " + a.str());
  }
  // The unit case, byte for byte.
  const std::string base = R"([{"s":"*","w":["pair","*","*"],"z":["pair",["pair","*","*"],"*"]}])";
  run.guarded(
      [&](std::string& detail) {
        TupleSet s = denote(synchronizer(one, "z", "w", "s"), synchronizer_ctx(one, "z", "w", "s"),
                            System::CP, cfg.K)
                         .tuples;
        detail = canonical(s);
        return detail == base;
      },
      "synchronizer 1 base value");
}

// 4. image of denote(P) against denote(L(P)).
void suite_translation(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  auto one = [&](const Process& p, const TypingContext& ctx) {
    run.guarded(
        [&](std::string& detail) {
          Verdict v = check_translation_theorem(p, ctx, cfg.sys, cfg.K, cfg.mutant);
          detail = v.detail;
          return v.holds;
        },
        at(p, ctx));
  };
  for (const auto& f : sh.families())
    for (const auto& p : f.procs) one(p, f.ctx);
  if (!sh.samples().empty()) run.bounded();
  run.count("samples", static_cast<long>(sh.samples().size()));
  for (const auto& s : sh.samples()) one(s.p, s.ctx);
}

std::string pair_failure(const Process& p, const Process& q, const TypingContext& ctx, bool src,
                         bool img) {
  return p.str() + " vs " + q.str() + " at " + ctx_str(ctx) + ": source " +
         (src ? "equal" : "different") + ", image " + (img ? "equal" : "different");
}

// 5. equivalence before and after translation, plus the transported sets.
void suite_fa1(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  for (const auto& f : sh.families()) {
    const Name w = "w";
    std::vector<TupleSet> src, img;
    for (const auto& p : f.procs) {
      Derivation d = check(p, f.ctx, cfg.sys);
      src.push_back(denote(d, cfg.K).tuples);
      Translated t = translate_process(d, w);
      img.push_back(denote(t.process, t.ctx, System::CP, cfg.K).tuples);
      TupleSet moved = l_set(f.ctx, src.back(), t.residual, cfg.mutant);
      run.check(moved == img.back(), [&] {
        return at(p, f.ctx) + ": transported " + canonical(moved) + " but translation denotes " +
               canonical(img.back());
      });
    }
    for (size_t i = 0; i < f.procs.size(); ++i)
      for (size_t j = i + 1; j < f.procs.size(); ++j) {
        bool s = src[i] == src[j], m = img[i] == img[j];
        run.count("pairs");
        run.check(s == m, [&] { return pair_failure(f.procs[i], f.procs[j], f.ctx, s, m); });
      }
  }
}

// 6. denote(T(A)) is the graph of l_obs.
void suite_transformer_graph(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  for (const auto& a : enumerate_formulas(cfg.depth, cfg.connectives)) {
    if (obs_space_size(a, cfg.K, 65) > 64) continue;
    if (a.has_exponential()) run.bounded();
    run.guarded(
        [&](std::string& detail) {
          Verdict v = check_transformer_graph(a, cfg.K);
          detail = v.detail;
          return v.holds;
        },
        "T(" + a.str() + ")");
  }
}

// 7. context denotation of the transformer context on random sets.
void suite_context_denotation(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  std::mt19937_64 rng(cfg.seed);
  std::vector<TypingContext> pool;
  for (const auto& ctx : enumerate_contexts(enumerate_formulas(1, cfg.connectives), 2))
    if (!ctx.empty() && ctx_space(ctx, cfg.K).size() <= 64) pool.push_back(ctx);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<TypingContext> ctxs;
  TypingContext fixed{{"x", Formula::bot()}, {"y", Formula::plus(Formula::one(), Formula::one())}};
  if (has(cfg.connectives, FK::Plus) && has(cfg.connectives, FK::Bot) && has(cfg.connectives, FK::One))
    ctxs.push_back(fixed);
  for (const auto& c : pool) {
    if (static_cast<int>(ctxs.size()) >= cfg.random_contexts) break;
    if (!(c == fixed)) ctxs.push_back(c);
  }
  std::bernoulli_distribution coin(0.5);
  for (const auto& ctx : ctxs) {
    if (ctx_has_exponential(ctx)) run.bounded();
    TupleSet space = ctx_space(ctx, cfg.K);
    run.count("contexts");
    for (int i = 0; i < cfg.sets_per_context; ++i) {
      run.count("sets");
      TupleSet x;
      for (const auto& t : space)
        if (coin(rng)) x.insert(t);
      run.guarded(
          [&](std::string& detail) {
            Verdict v = check_transformer_theorem(ctx, x, cfg.K, cfg.mutant);
            detail = v.detail;
            return v.holds;
          },
          "X = " + canonical(x) + " over " + ctx_str(ctx));
    }
  }
}

// 8. L(P) against T<P>.
void suite_transformer_correct(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  auto one = [&](const Process& p, const TypingContext& ctx) {
    run.guarded(
        [&](std::string& detail) {
          Verdict v = check_transformer_correct(p, ctx, cfg.sys, cfg.K);
          detail = v.detail;
          return v.holds;
        },
        at(p, ctx));
  };
  for (const auto& f : sh.families())
    for (const auto& p : f.procs) one(p, f.ctx);
  if (!sh.samples().empty()) run.bounded();
  run.count("samples", static_cast<long>(sh.samples().size()));
  for (const auto& s : sh.samples()) one(s.p, s.ctx);
}

// 9. equivalence before and after the transformer context.
void suite_fa2(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  for (const auto& f : sh.families()) {
    TransformerContext tc = transformer_context(f.ctx);
    std::vector<TupleSet> src, img;
    for (const auto& p : f.procs) {
      src.push_back(denote(p, f.ctx, System::CP02, cfg.K).tuples);
      Process filled = fill(tc.context, p, System::CP02);
      img.push_back(denote(filled, tc.context.result, System::CP02, cfg.K).tuples);
    }
    for (size_t i = 0; i < f.procs.size(); ++i)
      for (size_t j = i + 1; j < f.procs.size(); ++j) {
        bool s = src[i] == src[j], m = img[i] == img[j];
        run.count("pairs");
        run.check(s == m, [&] { return pair_failure(f.procs[i], f.procs[j], f.ctx, s, m); });
      }
  }
}

TypingContext merge(TypingContext a, const TypingContext& b) {
  a.insert(b.begin(), b.end());
  return a;
}

// 10. Mix2 permutes with case, cut and output.
void suite_mix(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  const Formula one = Formula::one(), bot = Formula::bot();
  EnumOptions opt;
  opt.sys = System::CP02;
  std::vector<std::pair<TypingContext, Process>> rs;
  for (const auto& b : {one, bot, Formula::plus(one, one), Formula::with(one, one)})
    for (const auto& r : enumerate_processes({{"z", b}}, 3, opt)) rs.push_back({{{"z", b}}, r});
  const std::vector<Formula> small = {one, bot};
  const System sys = System::CP02;

  auto equal_all = [&](const std::vector<Process>& ps, const TypingContext& ctx) {
    run.count("triples");
    run.guarded(
        [&](std::string& detail) {
          TupleSet first = denote(ps[0], ctx, sys, cfg.K).tuples;
          for (size_t i = 1; i < ps.size(); ++i) {
            TupleSet other = denote(ps[i], ctx, sys, cfg.K).tuples;
            if (other != first) {
              detail = ps[0].str() + " denotes " + canonical(first) + " but " + ps[i].str() +
                       " denotes " + canonical(other);
              return false;
            }
          }
          return true;
        },
        ps[0].str());
  };

  // case: P, Q use x at the two branch types and y at c.
  for (const auto& a1 : small)
    for (const auto& a2 : small)
      for (const auto& c : small) {
        TypingContext cp{{"x", a1}, {"y", c}}, cq{{"x", a2}, {"y", c}};
        for (const auto& p : enumerate_processes(cp, 3, opt))
          for (const auto& q : enumerate_processes(cq, 3, opt))
            for (const auto& [cr, r] : rs) {
              TypingContext all = merge({{"x", Formula::with(a1, a2)}, {"y", c}}, cr);
              equal_all({Process::par(Process::offer("x", p, q), r),
                         Process::offer("x", Process::par(p, r), Process::par(q, r))},
                        all);
            }
      }
  // cut: P uses x:A and y:c, Q uses x:A⊥.
  for (const auto& a : {one, bot, Formula::plus(one, one)})
    for (const auto& c : small) {
      TypingContext cp{{"x", a}, {"y", c}}, cq{{"x", dual(a)}};
      for (const auto& p : enumerate_processes(cp, 3, opt))
        for (const auto& q : enumerate_processes(cq, 3, opt))
          for (const auto& [cr, r] : rs) {
            TypingContext all = merge({{"y", c}}, cr);
            equal_all({Process::par(Process::cut("x", a, p, q), r),
                       Process::cut("x", a, p, Process::par(q, r)),
                       Process::cut("x", a, Process::par(p, r), q)},
                      all);
          }
    }
  // output: P uses y, Q uses x.
  for (const auto& a : small)
    for (const auto& b : small) {
      TypingContext cp{{"y", a}}, cq{{"x", b}};
      for (const auto& p : enumerate_processes(cp, 3, opt))
        for (const auto& q : enumerate_processes(cq, 3, opt))
          for (const auto& [cr, r] : rs) {
            TypingContext all = merge({{"x", Formula::tensor(a, b)}}, cr);
            equal_all({Process::out("x", "y", p, Process::par(q, r)),
                       Process::par(Process::out("x", "y", p, q), r)},
                      all);
          }
    }
}

// All multisets of size <= n over elems, as sorted vectors.
std::vector<std::vector<Obs>> multisets(const std::vector<Obs>& elems, int n) {
  std::vector<std::vector<Obs>> out{{}};
  std::vector<std::vector<Obs>> frontier{{}};
  std::vector<size_t> last{0};
  for (int k = 0; k < n; ++k) {
    std::vector<std::vector<Obs>> next;
    std::vector<size_t> next_last;
    for (size_t i = 0; i < frontier.size(); ++i)
      for (size_t e = last[i]; e < elems.size(); ++e) {
        auto m = frontier[i];
        m.push_back(elems[e]);
        next.push_back(std::move(m));
        next_last.push_back(e);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
    last = std::move(next_last);
  }
  return out;
}

// 11. l_obs is injective and lands in the right space; bags go homomorphically.
void suite_injectivity(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  const int K = 3;
  for (const auto& a : enumerate_formulas(cfg.depth, cfg.connectives)) {
    if (obs_space_size(a, K, 65) > 64) continue;
    const Formula target = translate_formula_dual(a);
    run.guarded(
        [&](std::string& detail) {
          std::map<Obs, Obs> seen;
          for (const auto& o : obs_space(a, K)) {
            Obs img = l_obs(a, o, cfg.mutant);
            if (!well_sorted(img, target) || img.max_bag() > K) {
              detail = img.str() + " is outside the space of " + target.str();
              return false;
            }
            auto [it, fresh] = seen.emplace(img, o);
            if (!fresh) {
              detail = o.str() + " and " + it->second.str() + " both map to " + img.str();
              return false;
            }
          }
          return true;
        },
        "l_obs at " + a.str());
  }
  // Two-name contexts.
  for (const auto& ctx : enumerate_contexts(enumerate_formulas(1, cfg.connectives), 2)) {
    if (ctx.size() != 2 || ctx_space(ctx, K).size() > 64) continue;
    run.guarded(
        [&](std::string& detail) {
          std::set<ObsTuple> seen;
          for (const auto& t : ctx_space(ctx, K))
            if (!seen.insert(l_ctx(ctx, t, "w", cfg.mutant)).second) {
              detail = "collision at " + tuple_str(t);
              return false;
            }
          return true;
        },
        "l_ctx at " + ctx_str(ctx));
  }
  if (!has(cfg.connectives, FK::WhyNot)) return;
  for (const auto& a : enumerate_formulas(1, cfg.connectives)) {
    auto elems = obs_space(a, K);
    if (elems.size() > 64) continue;
    const Formula wa = Formula::why_not(a);
    auto bags = multisets(elems, K);
    for (const auto& b1 : bags)
      for (const auto& b2 : bags) {
        if (b1.size() + b2.size() > static_cast<size_t>(K)) continue;
        Obs o1 = Obs::bag(b1), o2 = Obs::bag(b2);
        run.guarded(
            [&](std::string& detail) {
              Obs lhs = l_obs(wa, bag_union(o1, o2), cfg.mutant);
              Obs rhs = bag_union(l_obs(wa, o1, cfg.mutant), l_obs(wa, o2, cfg.mutant));
              detail = lhs.str() + " vs " + rhs.str();
              return lhs == rhs;
            },
            "bags " + o1.str() + ", " + o2.str() + " at " + wa.str());
      }
  }
}

// L(P; s) against L(Q; z){s/z}.
Verdict residual_renamed(const Process& p, const Process& q, const TypingContext& ctx, System sys,
                         int K) {
  Translated lp = translate_process(check(p, ctx, sys), "s");
  Translated lq = translate_process(check(q, ctx, sys), "z");
  Process renamed = substitute(lq.process, "s", lq.residual);
  TypingContext rctx = lq.ctx;
  rctx.erase(lq.residual);
  rctx["s"] = Formula::one();
  return compare_sets(denote(lp.process, lp.ctx, System::CP, K).tuples,
                      denote(renamed, rctx, System::CP, K).tuples);
}

// 12. the 1 / bot cut collapses after translation.
void suite_worked_example(Run& run, Shared& sh) {
  const auto& cfg = sh.cfg;
  auto one = [&](const Process& p, const TypingContext& ctx) {
    Process cut = Process::cut("x", Formula::one(), Process::empty_out("x"), Process::empty_in("x", p));
    run.guarded(
        [&](std::string& detail) {
          Verdict v = residual_renamed(cut, p, ctx, System::CP0, cfg.K);
          detail = v.detail;
          return v.holds;
        },
        at(cut, ctx));
  };
  one(Process::empty_out("y"), {{"y", Formula::one()}});
  EnumOptions opt;
  opt.sys = System::CP0;
  for (const auto& b : enumerate_formulas(1, without_exponentials(cfg.connectives))) {
    TypingContext ctx{{"y", b}};
    for (const auto& p : enumerate_processes(ctx, std::min(cfg.size, 4), opt)) one(p, ctx);
  }
}

using SuiteFn = void (*)(Run&, Shared&);

SuiteFn suite_fn(const std::string& name) {
  static const std::map<std::string, SuiteFn> m = {
      {"duality", suite_duality},
      {"adequacy", suite_adequacy},
      {"synchronizer", suite_synchronizer},
      {"translation", suite_translation},
      {"full-abstraction-1", suite_fa1},
      {"transformer-graph", suite_transformer_graph},
      {"context-denotation", suite_context_denotation},
      {"transformer-correct", suite_transformer_correct},
      {"full-abstraction-2", suite_fa2},
      {"mix-permutation", suite_mix},
      {"injectivity", suite_injectivity},
      {"worked-example", suite_worked_example}};
  auto it = m.find(name);
  if (it == m.end()) config_error("unknown suite " + name);
  return it->second;
}

SuiteResult run_named(const std::string& name, Shared& sh) {
  Run run(name, sh.cfg);
  suite_fn(name)(run, sh);
  return run.done();
}

}  // namespace

TupleSet synchronizer_graph(const Formula& a, const Name& z, const Name& w, const Name& s, int K) {
  TupleSet out;
  const Formula ad = dual(a);
  for (const auto& o : obs_space(a, K)) {
    ObsTuple t{{z, Obs::pair(l_obs(a, o), Obs::star())},
               {w, Obs::pair(l_obs(ad, o), Obs::star())},
               {s, Obs::star()}};
    if (tuple_max_bag(t) <= K) out.insert(std::move(t));
  }
  return out;
}

void validate(const SuiteConfig& cfg) {
  if (cfg.K < 1) config_error("K must be at least 1");
  if (cfg.size < 1) config_error("size must be at least 1");
  if (cfg.depth < 0 || cfg.deep_depth < 0 || cfg.deep_connectives < 0)
    config_error("depths must be non-negative");
  if (!has(cfg.connectives, FK::One) && !has(cfg.connectives, FK::Bot))
    config_error("connective set has no unit");
  if (cfg.exhaustive && has_exponential(cfg.connectives) && cfg.K > 2)
    config_error("exhaustive mode with exponentials needs K <= 2");
  if (cfg.random_contexts < 0 || cfg.sets_per_context < 0 || cfg.exponential_samples < 0)
    config_error("sample counts must be non-negative");
  for (const auto& s : cfg.suites) suite_fn(s);
}

SuiteConfig config_from_json(const json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  SuiteConfig cfg;
  auto get_int = [&](const json& v, const std::string& key) {
    if (!v.is_number_integer()) config_error(key + " must be an integer");
    return v.get<long long>();
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "depth") cfg.depth = static_cast<int>(get_int(v, key));
    else if (key == "deep_depth") cfg.deep_depth = static_cast<int>(get_int(v, key));
    else if (key == "deep_connectives") cfg.deep_connectives = static_cast<int>(get_int(v, key));
    else if (key == "size") cfg.size = static_cast<int>(get_int(v, key));
    else if (key == "K") cfg.K = static_cast<int>(get_int(v, key));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(get_int(v, key));
    else if (key == "exponential_samples") cfg.exponential_samples = static_cast<int>(get_int(v, key));
    else if (key == "random_contexts") cfg.random_contexts = static_cast<int>(get_int(v, key));
    else if (key == "sets_per_context") cfg.sets_per_context = static_cast<int>(get_int(v, key));
    else if (key == "max_reported") cfg.max_reported = static_cast<int>(get_int(v, key));
    else if (key == "exhaustive") {
      if (!v.is_boolean()) config_error("exhaustive must be a boolean");
      cfg.exhaustive = v.get<bool>();
    } else if (key == "connectives") {
      if (!v.is_array()) config_error("connectives must be an array");
      cfg.connectives.clear();
      for (const auto& c : v) {
        if (!c.is_string()) config_error("connectives must be strings");
        FK k = connective_from(c.get<std::string>());
        if (!has(cfg.connectives, k)) cfg.connectives.push_back(k);
      }
    } else if (key == "system") {
      std::string s = v.is_string() ? v.get<std::string>() : "";
      if (s == "cp") cfg.sys = System::CP;
      else if (s == "cp0") cfg.sys = System::CP0;
      else if (s == "cp02") cfg.sys = System::CP02;
      else config_error("system must be cp, cp0 or cp02");
    } else if (key == "suites") {
      if (!v.is_array()) config_error("suites must be an array");
      for (const auto& s : v) {
        if (!s.is_string()) config_error("suite names must be strings");
        cfg.suites.push_back(s.get<std::string>());
      }
    } else if (key == "mutant") {
      std::string s = v.is_string() ? v.get<std::string>() : "";
      if (s == "none") cfg.mutant = Mutant::None;
      else if (s == "swap-tags") cfg.mutant = Mutant::SwapTags;
      else config_error("mutant must be none or swap-tags");
    } else {
      config_error("unknown key " + key);
    }
  }
  validate(cfg);
  return cfg;
}

bool Report::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.failed == 0; });
}

const SuiteResult* Report::find(const std::string& name) const {
  for (const auto& s : suites)
    if (s.name == name) return &s;
  return nullptr;
}

std::string Report::text() const {
  std::ostringstream os;
  long total = 0, failed = 0;
  for (const auto& s : suites) {
    os << (s.failed == 0 ? "ok   " : "FAIL ") << s.name << ": " << s.instances << " instances, "
       << s.failed << " failed, " << s.millis << " ms" << (s.bounded ? " (bounded)" : "") << "\n";
    for (const auto& f : s.failures) os << "    " << f << "\n";
    if (s.failed > static_cast<long>(s.failures.size()))
      os << "    ... " << s.failed - static_cast<long>(s.failures.size()) << " more\n";
    total += s.instances;
    failed += s.failed;
  }
  os << total << " instances, " << failed << " failed\n";
  return os.str();
}

json Report::json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& s : suites) {
    out[s.name] = {{"instances", s.instances},
                   {"failed", s.failed},
                   {"failures", s.failures},
                   {"millis", s.millis},
                   {"bounded", s.bounded},
                   {"counts", s.counts}};
  }
  return out;
}

SuiteResult run_one(const std::string& name, const SuiteConfig& cfg) {
  validate(cfg);
  Shared sh{cfg, std::nullopt, std::nullopt};
  return run_named(name, sh);
}

Report run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  Shared sh{cfg, std::nullopt, std::nullopt};
  Report r;
  const auto& names = cfg.suites.empty() ? suite_names() : cfg.suites;
  for (const auto& n : names) r.suites.push_back(run_named(n, sh));
  return r;
}

}  // namespace cpwb
