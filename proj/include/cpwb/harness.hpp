#ifndef CPWB_HARNESS_HPP
#define CPWB_HARNESS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpwb/enumerate.hpp"
#include "cpwb/obs_transform.hpp"
#include "cpwb/typing.hpp"

namespace cpwb {

// Suite names, in run order.
const std::vector<std::string>& suite_names();

struct SuiteConfig {
  int depth = 2;             // exhaustive formula depth
  int deep_depth = 4;        // duality slice: this depth ...
  int deep_connectives = 4;  // ... with at most this many connectives
  int size = 5;              // process size bound
  int K = 2;
  Connectives connectives = all_connectives();
  System sys = System::CP02;
  std::vector<std::string> suites;  // empty: all of them
  std::uint64_t seed = 1;
  bool exhaustive = true;
  int exponential_samples = 60;
  int random_contexts = 10;
  int sets_per_context = 10;
  Mutant mutant = Mutant::None;
  // Failures kept per suite for the report; the count is always exact.
  int max_reported = 20;
};

// Throws Error(ConfigError) on unknown keys, bad values or inconsistent flags.
SuiteConfig config_from_json(const nlohmann::json& j);
void validate(const SuiteConfig& cfg);

struct SuiteResult {
  std::string name;
  long instances = 0;
  long failed = 0;
  std::vector<std::string> failures;
  long millis = 0;
  bool bounded = false;  // exponential instances checked at bound K only
  // Sub-counts some suites keep: samples, pairs, sets, triples.
  std::map<std::string, long> counts;
};

struct Report {
  std::vector<SuiteResult> suites;
  bool ok() const;
  const SuiteResult* find(const std::string& name) const;
  std::string text() const;
  nlohmann::json json() const;
};

Report run_suite(const SuiteConfig& cfg);
SuiteResult run_one(const std::string& name, const SuiteConfig& cfg);

// The synchronizer's expected graph over obs_space(A, K).
TupleSet synchronizer_graph(const Formula& a, const Name& z, const Name& w, const Name& s, int K);

}  // namespace cpwb

#endif
