#include "cpwb/observation.hpp"

#include <algorithm>
#include <stdexcept>

namespace cpwb {

using FK = Formula::Kind;

Obs::Obs() : Obs(star()) {}

Obs Obs::star() {
  static const Obs s(std::make_shared<const Node>());
  return s;
}

Obs Obs::pair(const Obs& a, const Obs& b) {
  Node n;
  n.kind = Kind::Pair;
  n.a = std::make_shared<const Obs>(a);
  n.b = std::make_shared<const Obs>(b);
  n.max_bag = std::max(a.max_bag(), b.max_bag());
  return Obs(std::make_shared<const Node>(std::move(n)));
}

Obs Obs::tag(int i, const Obs& a) {
  if (i != 1 && i != 2) throw std::invalid_argument("tag index must be 1 or 2");
  Node n;
  n.kind = Kind::Tag;
  n.index = i;
  n.a = std::make_shared<const Obs>(a);
  n.max_bag = a.max_bag();
  return Obs(std::make_shared<const Node>(std::move(n)));
}

Obs Obs::bag(std::vector<Obs> items) {
  std::sort(items.begin(), items.end());
  Node n;
  n.kind = Kind::Bag;
  n.max_bag = static_cast<int>(items.size());
  for (const auto& o : items) n.max_bag = std::max(n.max_bag, o.max_bag());
  n.items = std::move(items);
  return Obs(std::make_shared<const Node>(std::move(n)));
}

const Obs& Obs::first() const {
  if (!node_->a) throw std::logic_error("observation has no component");
  return *node_->a;
}

const Obs& Obs::second() const {
  if (!node_->b) throw std::logic_error("observation has no second component");
  return *node_->b;
}

std::string Obs::str() const {
  switch (kind()) {
    case Kind::Star: return "*";
    case Kind::Pair: return "(" + first().str() + "," + second().str() + ")";
    case Kind::Tag: return "(" + std::to_string(index()) + "," + first().str() + ")";
    case Kind::Bag: {
      std::string out = "[";
      for (size_t i = 0; i < items().size(); ++i) {
        if (i) out += ",";
        out += items()[i].str();
      }
      return out + "]";
    }
  }
  return "?";
}

bool operator==(const Obs& a, const Obs& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Obs& a, const Obs& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Obs::Kind::Star: return std::strong_ordering::equal;
    case Obs::Kind::Pair:
      if (auto c = a.first() <=> b.first(); c != 0) return c;
      return a.second() <=> b.second();
    case Obs::Kind::Tag:
      if (auto c = a.index() <=> b.index(); c != 0) return c;
      return a.first() <=> b.first();
    case Obs::Kind::Bag: {
      const auto& x = a.items();
      const auto& y = b.items();
      return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
    }
  }
  return std::strong_ordering::equal;
}

Obs bag_union(const Obs& a, const Obs& b) {
  if (a.kind() != Obs::Kind::Bag || b.kind() != Obs::Kind::Bag)
    throw Error(ErrorCode::SortMismatch, "multiset union of non-bags");
  std::vector<Obs> items;
  items.reserve(a.items().size() + b.items().size());
  std::merge(a.items().begin(), a.items().end(), b.items().begin(), b.items().end(),
             std::back_inserter(items));
  return Obs::bag(std::move(items));
}

bool well_sorted(const Obs& a, const Formula& t) {
  switch (t.kind()) {
    case FK::One:
    case FK::Bot: return a.kind() == Obs::Kind::Star;
    case FK::Tensor:
    case FK::Par:
      return a.kind() == Obs::Kind::Pair && well_sorted(a.first(), t.left()) &&
             well_sorted(a.second(), t.right());
    case FK::Plus:
    case FK::With:
      return a.kind() == Obs::Kind::Tag &&
             well_sorted(a.first(), a.index() == 1 ? t.left() : t.right());
    case FK::OfCourse:
    case FK::WhyNot:
      if (a.kind() != Obs::Kind::Bag) return false;
      for (const auto& o : a.items())
        if (!well_sorted(o, t.left())) return false;
      return true;
  }
  return false;
}

std::string tuple_str(const ObsTuple& t) {
  std::string out = "(";
  bool first = true;
  for (const auto& [n, o] : t) {
    if (!first) out += ", ";
    first = false;
    out += n + "=" + o.str();
  }
  return out + ")";
}

int tuple_max_bag(const ObsTuple& t) {
  int m = 0;
  for (const auto& kv : t) m = std::max(m, kv.second.max_bag());
  return m;
}

namespace {

void multisets(const std::vector<Obs>& elems, size_t from, int left,
               std::vector<Obs>& cur, std::vector<Obs>& out) {
  out.push_back(Obs::bag(cur));
  if (left == 0) return;
  for (size_t i = from; i < elems.size(); ++i) {
    cur.push_back(elems[i]);
    multisets(elems, i, left - 1, cur, out);
    cur.pop_back();
  }
}

long long sat_mul(long long a, long long b, long long cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap;
  return std::min(cap, a * b);
}

}  // namespace

std::vector<Obs> obs_space(const Formula& a, int k) {
  std::vector<Obs> out;
  switch (a.kind()) {
    case FK::One:
    case FK::Bot: out.push_back(Obs::star()); break;
    case FK::Tensor:
    case FK::Par: {
      auto l = obs_space(a.left(), k);
      auto r = obs_space(a.right(), k);
      for (const auto& x : l)
        for (const auto& y : r) out.push_back(Obs::pair(x, y));
      break;
    }
    case FK::Plus:
    case FK::With: {
      for (const auto& x : obs_space(a.left(), k)) out.push_back(Obs::tag(1, x));
      for (const auto& x : obs_space(a.right(), k)) out.push_back(Obs::tag(2, x));
      break;
    }
    case FK::OfCourse:
    case FK::WhyNot: {
      auto inner = obs_space(a.left(), k);
      std::vector<Obs> cur;
      multisets(inner, 0, k, cur, out);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long obs_space_size(const Formula& a, int k, long long cap) {
  switch (a.kind()) {
    case FK::One:
    case FK::Bot: return 1;
    case FK::Tensor:
    case FK::Par:
      return sat_mul(obs_space_size(a.left(), k, cap), obs_space_size(a.right(), k, cap), cap);
    case FK::Plus:
    case FK::With:
      return std::min(cap, obs_space_size(a.left(), k, cap) + obs_space_size(a.right(), k, cap));
    case FK::OfCourse:
    case FK::WhyNot: {
      // multisets of size <= k over n elements: C(n + k, k)
      long long n = obs_space_size(a.left(), k, cap);
      long long total = 1;
      for (int i = 1; i <= k; ++i) {
        total = sat_mul(total, n + i, cap);
        total /= i;
        if (total >= cap) return cap;
      }
      return total;
    }
  }
  return 0;
}

TupleSet ctx_space(const TypingContext& ctx, int k) {
  std::vector<ObsTuple> acc{ObsTuple{}};
  for (const auto& [n, a] : ctx) {
    std::vector<ObsTuple> next;
    for (const auto& o : obs_space(a, k))
      for (const auto& t : acc) {
        ObsTuple u = t;
        u.emplace(n, o);
        next.push_back(std::move(u));
      }
    acc = std::move(next);
  }
  return TupleSet(acc.begin(), acc.end());
}

nlohmann::json obs_json(const Obs& a) {
  using nlohmann::json;
  switch (a.kind()) {
    case Obs::Kind::Star: return "*";
    case Obs::Kind::Pair: return json::array({"pair", obs_json(a.first()), obs_json(a.second())});
    case Obs::Kind::Tag: return json::array({"tag", a.index(), obs_json(a.first())});
    case Obs::Kind::Bag: {
      json items = json::array();
      for (const auto& o : a.items()) items.push_back(obs_json(o));
      return json::array({"bag", items});
    }
  }
  return nullptr;
}

Obs obs_from_json(const nlohmann::json& j) {
  if (j.is_string() && j.get<std::string>() == "*") return Obs::star();
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw Error(ErrorCode::SortMismatch, "not an observation: " + j.dump());
  const std::string tag = j[0].get<std::string>();
  if (tag == "pair" && j.size() == 3) return Obs::pair(obs_from_json(j[1]), obs_from_json(j[2]));
  if (tag == "tag" && j.size() == 3 && j[1].is_number_integer()) {
    int i = j[1].get<int>();
    if (i == 1 || i == 2) return Obs::tag(i, obs_from_json(j[2]));
  }
  if (tag == "bag" && j.size() == 2 && j[1].is_array()) {
    std::vector<Obs> items;
    for (const auto& e : j[1]) items.push_back(obs_from_json(e));
    return Obs::bag(std::move(items));
  }
  throw Error(ErrorCode::SortMismatch, "not an observation: " + j.dump());
}

nlohmann::json tuple_json(const ObsTuple& t) {
  nlohmann::json o = nlohmann::json::object();
  for (const auto& [n, a] : t) o[n] = obs_json(a);
  return o;
}

nlohmann::json set_json(const TupleSet& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : s) arr.push_back(tuple_json(t));
  return arr;
}

std::string canonical(const TupleSet& s) { return set_json(s).dump(); }

}  // namespace cpwb
