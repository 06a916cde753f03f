#ifndef CPWB_OBSERVATION_HPP
#define CPWB_OBSERVATION_HPP

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpwb/formula.hpp"
#include "cpwb/process.hpp"
#include "cpwb/typing.hpp"

namespace cpwb {

// Element of the observation space of a type. Bags keep their elements
// sorted, so structural comparison is multiset comparison.
class Obs {
 public:
  enum class Kind { Star, Pair, Tag, Bag };

  Obs();  // *
  static Obs star();
  static Obs pair(const Obs& a, const Obs& b);
  static Obs tag(int i, const Obs& a);
  static Obs bag(std::vector<Obs> items);

  Kind kind() const { return node_->kind; }
  const Obs& first() const;   // Pair left, Tag payload
  const Obs& second() const;  // Pair right
  int index() const { return node_->index; }
  const std::vector<Obs>& items() const { return node_->items; }

  // Largest bag size anywhere inside.
  int max_bag() const { return node_->max_bag; }

  std::string str() const;

  friend bool operator==(const Obs& a, const Obs& b);
  friend std::strong_ordering operator<=>(const Obs& a, const Obs& b);

 private:
  struct Node {
    Kind kind = Kind::Star;
    int index = 0;
    int max_bag = 0;
    std::shared_ptr<const Obs> a, b;
    std::vector<Obs> items;
  };
  explicit Obs(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Obs bag_union(const Obs& a, const Obs& b);
// Whether a is in the observation space of type t (no bound on bags).
bool well_sorted(const Obs& a, const Formula& t);

using ObsTuple = std::map<Name, Obs>;
using TupleSet = std::set<ObsTuple>;

std::string tuple_str(const ObsTuple& t);
int tuple_max_bag(const ObsTuple& t);

// The observation space with each bag bounded by k.
std::vector<Obs> obs_space(const Formula& a, int k);
// Size without materializing; saturates at `cap`.
long long obs_space_size(const Formula& a, int k, long long cap = 1LL << 40);
// All tuples over the context.
TupleSet ctx_space(const TypingContext& ctx, int k);

struct DenotationSet {
  TypingContext ctx;
  int K = 0;
  TupleSet tuples;
};

nlohmann::json obs_json(const Obs& a);
Obs obs_from_json(const nlohmann::json& j);
nlohmann::json tuple_json(const ObsTuple& t);
nlohmann::json set_json(const TupleSet& s);
// Single-line canonical encoding.
std::string canonical(const TupleSet& s);

}  // namespace cpwb

#endif
