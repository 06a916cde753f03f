#ifndef CPWB_ORACLE_HPP
#define CPWB_ORACLE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "cpwb/observation.hpp"
#include "cpwb/typing.hpp"

namespace cpwb {

// Trees of processes joined by observable cuts.
class Configuration {
 public:
  enum class Kind { Zero, Proc, Cut, Par, Weak, Con };

  static Configuration zero();
  static Configuration proc(const Process& p);
  static Configuration cut(const Name& x, const Formula& a, const Configuration& c1,
                           const Configuration& c2);
  static Configuration par(const Configuration& c1, const Configuration& c2);
  static Configuration weak(const Name& x, const Formula& a, const Configuration& c);
  // C{x1/x2}: x1 and x2 both free in C, merged into x1.
  static Configuration con(const Name& x1, const Name& x2, const Configuration& c);

  Kind kind() const { return node_->kind; }
  const Process& process() const { return node_->proc; }
  const Name& x() const { return node_->x; }
  const Name& x2() const { return node_->x2; }
  const Formula& annot() const { return node_->annot; }
  const Configuration& left() const { return *node_->c1; }
  const Configuration& right() const { return *node_->c2; }

  std::string str() const;

 private:
  struct Node {
    Kind kind = Kind::Zero;
    Process proc;
    Name x, x2;
    Formula annot;
    std::shared_ptr<const Configuration> c1, c2;
  };
  explicit Configuration(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

NameSet config_free_names(const Configuration& c);

struct ConfigTyping {
  TypingContext gamma;  // free names
  TypingContext theta;  // observable names
};

// Top-down: gamma gives the types of the free names.
ConfigTyping check_config(const Configuration& c, System sys,
                          const TypingContext& gamma = {});

// Denotation of a configuration: cuts keep their coordinate.
TupleSet config_denote(const Configuration& c, System sys, int K,
                       const TypingContext& gamma = {});

struct ObserveResult {
  TupleSet observations;
  bool depth_exceeded = false;
  int steps = 0;
};

struct ObserveOptions {
  int K = 2;
  int depth = 100000;
  // 0 fires redexes in a fixed order; anything else shuffles them.
  std::uint64_t schedule_seed = 0;
  System sys = System::CP02;
};

// Runs the closed configuration and collects what the observable names see.
// Throws OpenConfiguration for free names.
ObserveResult observe(const Configuration& c, const ObserveOptions& opt);

struct AdequacyResult {
  bool holds = false;
  TupleSet operational, denotational;
};

AdequacyResult adequacy_check(const Configuration& c, int K, int depth = 100000);

}  // namespace cpwb

#endif
