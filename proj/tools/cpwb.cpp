// cpwb: command-line front end.
//
// Exit codes: 0 ok, 1 property failure (not equivalent, failing suite,
// search depth exceeded), 2 usage, 3 syntax error, 4 type error,
// 5 configuration or I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpwb/denotation.hpp"
#include "cpwb/harness.hpp"
#include "cpwb/oracle.hpp"
#include "cpwb/text.hpp"
#include "cpwb/transformers.hpp"
#include "cpwb/translation.hpp"

using namespace cpwb;
using ordered = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kProperty = 1, kUsage = 2, kSyntax = 3, kType = 4, kConfig = 5 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

System parse_system(const std::string& s) {
  if (s == "cp") return System::CP;
  if (s == "cp0") return System::CP0;
  return System::CP02;
}

struct Ctx {
  std::vector<std::pair<Name, Formula>> order;
  TypingContext map;
};

Ctx read_ctx(const std::string& text) {
  Ctx c;
  c.order = parse_context_list(text);
  for (const auto& [n, a] : c.order) c.map.emplace(n, a);
  return c;
}

// Tuple keys follow the order the names were given in; anything else after.
ordered tuple_ordered(const ObsTuple& t, const std::vector<Name>& order) {
  ordered o = ordered::object();
  for (const auto& n : order)
    if (auto it = t.find(n); it != t.end()) o[n] = ordered::parse(obs_json(it->second).dump());
  for (const auto& [n, a] : t)
    if (!o.contains(n)) o[n] = ordered::parse(obs_json(a).dump());
  return o;
}

std::string set_ordered(const TupleSet& s, const std::vector<Name>& order) {
  ordered arr = ordered::array();
  for (const auto& t : s) arr.push_back(tuple_ordered(t, order));
  return arr.dump();
}

std::vector<Name> names_of(const Ctx& c) {
  std::vector<Name> out;
  for (const auto& kv : c.order) out.push_back(kv.first);
  return out;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConfigError: return kConfig;
    case ErrorCode::DepthExceeded: return kProperty;
    default: return kType;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpwb: Classical Processes workbench"};
  app.require_subcommand(1);

  std::string file, file2, ctx_text, sys_text = "cp02", config_path;
  int K = 2, depth = 100000;
  std::uint64_t seed = 0;
  bool emit_typing = false, as_json = false;
  const std::vector<std::string> systems = {"cp", "cp0", "cp02"};

  auto* check_cmd = app.add_subcommand("check", "type-check a process and print its derivation");
  check_cmd->add_option("file", file, "process file")->required();
  check_cmd->add_option("--ctx", ctx_text, "typing context, e.g. 'x:1, y:bot'");
  check_cmd->add_option("--sys", sys_text, "cp, cp0 or cp02")->check(CLI::IsMember(systems));

  auto* denote_cmd = app.add_subcommand("denote", "print the denotation as JSON");
  denote_cmd->add_option("file", file, "process file")->required();
  denote_cmd->add_option("--ctx", ctx_text, "typing context");
  denote_cmd->add_option("-K", K, "bag bound")->check(CLI::PositiveNumber);
  denote_cmd->add_option("--sys", sys_text, "cp, cp0 or cp02")->check(CLI::IsMember(systems));

  auto* observe_cmd = app.add_subcommand("observe", "run a closed configuration");
  observe_cmd->add_option("file", file, "configuration file")->required();
  observe_cmd->add_option("-K", K, "bag bound")->check(CLI::PositiveNumber);
  observe_cmd->add_option("--depth", depth, "step budget")->check(CLI::PositiveNumber);
  observe_cmd->add_option("--seed", seed, "schedule seed, 0 for the fixed order");

  auto* translate_cmd = app.add_subcommand("translate", "print L(P)");
  translate_cmd->add_option("file", file, "process file")->required();
  translate_cmd->add_option("--ctx", ctx_text, "typing context");
  translate_cmd->add_option("--sys", sys_text, "cp, cp0 or cp02")->check(CLI::IsMember(systems));
  translate_cmd->add_flag("--emit-typing", emit_typing, "also print the typing of L(P)");

  auto* transform_cmd = app.add_subcommand("transform", "print P inside its transformer context");
  transform_cmd->add_option("file", file, "process file")->required();
  transform_cmd->add_option("--ctx", ctx_text, "typing context");
  transform_cmd->add_flag("--emit-typing", emit_typing, "also print the result typing");

  auto* equiv_cmd = app.add_subcommand("equiv", "compare two processes denotationally");
  equiv_cmd->add_option("p", file, "first process file")->required();
  equiv_cmd->add_option("q", file2, "second process file")->required();
  equiv_cmd->add_option("--ctx", ctx_text, "typing context");
  equiv_cmd->add_option("-K", K, "bag bound")->check(CLI::PositiveNumber);
  equiv_cmd->add_option("--sys", sys_text, "cp, cp0 or cp02")->check(CLI::IsMember(systems));

  auto* suite_cmd = app.add_subcommand("suite", "run the property suites");
  suite_cmd->add_option("--config", config_path, "JSON config file");
  suite_cmd->add_flag("--json", as_json, "print the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    const System sys = parse_system(sys_text);
    if (*check_cmd) {
      Ctx c = read_ctx(ctx_text);
      Derivation d = check(parse_process(slurp(file)), c.map, sys);
      std::cout << derivation_summary(d);
      return kOk;
    }
    if (*denote_cmd) {
      Ctx c = read_ctx(ctx_text);
      DenotationSet s = denote(parse_process(slurp(file)), c.map, sys, K);
      std::cout << set_ordered(s.tuples, names_of(c)) << "\n";
      return kOk;
    }
    if (*observe_cmd) {
      ObserveOptions o;
      o.K = K;
      o.depth = depth;
      o.schedule_seed = seed;
      ObserveResult r = observe(parse_config(slurp(file)), o);
      std::cout << canonical(r.observations) << "\n";
      if (r.depth_exceeded) {
        std::cerr << "depth " << depth << " exceeded after " << r.steps << " steps; the set is partial\n";
        return kProperty;
      }
      return kOk;
    }
    if (*translate_cmd) {
      Ctx c = read_ctx(ctx_text);
      Derivation d = check(parse_process(slurp(file)), c.map, sys);
      Translated t = translate_for_display(d);
      std::cout << t.process.str() << "\n";
      if (emit_typing) {
        std::string line;
        for (const auto& [n, a] : c.order) {
          const Name& shown = t.renamed.at(n);
          line += (line.empty() ? "" : ", ") + shown + ":" + t.ctx.at(shown).str();
        }
        line += (line.empty() ? "" : ", ") + t.residual + ":1";
        std::cout << line << "\n";
      }
      return kOk;
    }
    if (*transform_cmd) {
      Ctx c = read_ctx(ctx_text);
      TransformerContext tc = transformer_context(c.map);
      Process filled = fill(tc.context, parse_process(slurp(file)), System::CP02);
      std::cout << filled.str() << "\n";
      if (emit_typing) {
        std::string line;
        for (const auto& [n, a] : c.order) {
          const Name& shown = tc.renamed.at(n);
          line += (line.empty() ? "" : ", ") + shown + ":" + tc.context.result.at(shown).str();
        }
        line += (line.empty() ? "" : ", ") + tc.closing + ":1";
        std::cout << line << "\n";
      }
      return kOk;
    }
    if (*equiv_cmd) {
      Ctx c = read_ctx(ctx_text);
      EquivResult r = compare(parse_process(slurp(file)), parse_process(slurp(file2)), c.map, sys, K);
      if (r.equivalent) {
        std::cout << "equivalent\n";
        return kOk;
      }
      std::cout << "not equivalent\n";
      std::cout << "only " << file << ": " << set_ordered(r.only_left, names_of(c)) << "\n";
      std::cout << "only " << file2 << ": " << set_ordered(r.only_right, names_of(c)) << "\n";
      return kProperty;
    }
    if (*suite_cmd) {
      SuiteConfig cfg;
      if (!config_path.empty()) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(slurp(config_path));
        } catch (const nlohmann::json::parse_error& e) {
          throw Error(ErrorCode::ConfigError, std::string("bad JSON: ") + e.what());
        }
        cfg = config_from_json(j);
      }
      if (const char* env = std::getenv("CPWB_SEED")) {
        try {
          cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
          throw Error(ErrorCode::ConfigError, std::string("CPWB_SEED is not a number: ") + env);
        }
      }
      Report r = run_suite(cfg);
      if (as_json) {
        std::cout << r.json().dump(2) << "\n";
      } else {
        std::cout << r.text();
      }
      return r.ok() ? kOk : kProperty;
    }
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kSyntax;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  }
  return kUsage;
}
