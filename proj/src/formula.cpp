#include "cpwb/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace cpwb {

Formula::Formula() : Formula(make(Kind::One, nullptr, nullptr)) {}

Formula Formula::make(Kind k, const Formula* a, const Formula* b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  if (a) n->a = std::make_shared<const Formula>(*a);
  if (b) n->b = std::make_shared<const Formula>(*b);
  return Formula(std::move(n));
}

Formula Formula::one() {
  static const Formula f = make(Kind::One, nullptr, nullptr);
  return f;
}
Formula Formula::bot() {
  static const Formula f = make(Kind::Bot, nullptr, nullptr);
  return f;
}
Formula Formula::tensor(const Formula& a, const Formula& b) {
  return make(Kind::Tensor, &a, &b);
}
Formula Formula::par(const Formula& a, const Formula& b) {
  return make(Kind::Par, &a, &b);
}
Formula Formula::plus(const Formula& a, const Formula& b) {
  return make(Kind::Plus, &a, &b);
}
Formula Formula::with(const Formula& a, const Formula& b) {
  return make(Kind::With, &a, &b);
}
Formula Formula::of_course(const Formula& a) {
  return make(Kind::OfCourse, &a, nullptr);
}
Formula Formula::why_not(const Formula& a) {
  return make(Kind::WhyNot, &a, nullptr);
}

const Formula& Formula::left() const {
  if (!node_->a) throw std::logic_error("formula has no operand: " + str());
  return *node_->a;
}

const Formula& Formula::right() const {
  if (!node_->b) throw std::logic_error("formula has no right operand: " + str());
  return *node_->b;
}

bool Formula::is_binary() const {
  switch (kind()) {
    case Kind::Tensor:
    case Kind::Par:
    case Kind::Plus:
    case Kind::With:
      return true;
    default:
      return false;
  }
}

bool Formula::is_positive() const {
  switch (kind()) {
    case Kind::One:
    case Kind::Tensor:
    case Kind::Plus:
    case Kind::OfCourse:
      return true;
    default:
      return false;
  }
}

int Formula::depth() const {
  if (is_unit()) return 0;
  if (is_exponential()) return 1 + left().depth();
  return 1 + std::max(left().depth(), right().depth());
}

int Formula::size() const {
  if (is_unit()) return 1;
  if (is_exponential()) return 1 + left().size();
  return 1 + left().size() + right().size();
}

bool Formula::has_exponential() const {
  if (is_unit()) return false;
  if (is_exponential()) return true;
  return left().has_exponential() || right().has_exponential();
}

std::string Formula::str() const {
  switch (kind()) {
    case Kind::One: return "1";
    case Kind::Bot: return "bot";
    case Kind::Tensor: return "(" + left().str() + " * " + right().str() + ")";
    case Kind::Par: return "(" + left().str() + " % " + right().str() + ")";
    case Kind::Plus: return "(" + left().str() + " + " + right().str() + ")";
    case Kind::With: return "(" + left().str() + " & " + right().str() + ")";
    case Kind::OfCourse: return "!" + left().str();
    case Kind::WhyNot: return "?" + left().str();
  }
  return "?";
}

bool operator==(const Formula& a, const Formula& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_unit()) return std::strong_ordering::equal;
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  if (a.is_exponential()) return std::strong_ordering::equal;
  return a.right() <=> b.right();
}

Formula dual(const Formula& a) {
  using K = Formula::Kind;
  switch (a.kind()) {
    case K::One: return Formula::bot();
    case K::Bot: return Formula::one();
    case K::Tensor: return Formula::par(dual(a.left()), dual(a.right()));
    case K::Par: return Formula::tensor(dual(a.left()), dual(a.right()));
    case K::Plus: return Formula::with(dual(a.left()), dual(a.right()));
    case K::With: return Formula::plus(dual(a.left()), dual(a.right()));
    case K::OfCourse: return Formula::why_not(dual(a.left()));
    case K::WhyNot: return Formula::of_course(dual(a.left()));
  }
  throw std::logic_error("dual: bad formula");
}

IllFormula::IllFormula() : IllFormula(make(Kind::Unit, nullptr, nullptr)) {}

IllFormula IllFormula::make(Kind k, const IllFormula* a, const IllFormula* b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  if (a) n->a = std::make_shared<const IllFormula>(*a);
  if (b) n->b = std::make_shared<const IllFormula>(*b);
  return IllFormula(std::move(n));
}

IllFormula IllFormula::unit() { return IllFormula(); }
IllFormula IllFormula::tensor(const IllFormula& a, const IllFormula& b) {
  return make(Kind::Tensor, &a, &b);
}
IllFormula IllFormula::lollipop(const IllFormula& a, const IllFormula& b) {
  return make(Kind::Lollipop, &a, &b);
}
IllFormula IllFormula::plus(const IllFormula& a, const IllFormula& b) {
  return make(Kind::Plus, &a, &b);
}
IllFormula IllFormula::with(const IllFormula& a, const IllFormula& b) {
  return make(Kind::With, &a, &b);
}
IllFormula IllFormula::of_course(const IllFormula& a) {
  return make(Kind::OfCourse, &a, nullptr);
}

const IllFormula& IllFormula::left() const {
  if (!node_->a) throw std::logic_error("ILL formula has no operand");
  return *node_->a;
}

const IllFormula& IllFormula::right() const {
  if (!node_->b) throw std::logic_error("ILL formula has no right operand");
  return *node_->b;
}

std::string IllFormula::str() const {
  switch (kind()) {
    case Kind::Unit: return "1";
    case Kind::Tensor: return "(" + left().str() + " * " + right().str() + ")";
    case Kind::Lollipop: return "(" + left().str() + " -o " + right().str() + ")";
    case Kind::Plus: return "(" + left().str() + " + " + right().str() + ")";
    case Kind::With: return "(" + left().str() + " & " + right().str() + ")";
    case Kind::OfCourse: return "!" + left().str();
  }
  return "?";
}

bool operator==(const IllFormula& a, const IllFormula& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const IllFormula& a, const IllFormula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.kind() == IllFormula::Kind::Unit) return std::strong_ordering::equal;
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  if (a.kind() == IllFormula::Kind::OfCourse) return std::strong_ordering::equal;
  return a.right() <=> b.right();
}

}  // namespace cpwb
