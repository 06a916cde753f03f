#ifndef CPWB_FORMULA_HPP
#define CPWB_FORMULA_HPP

#include <compare>
#include <memory>
#include <string>

namespace cpwb {

// Session types of classical linear logic. Values are immutable and share
// structure, so copying a Formula is cheap.
class Formula {
 public:
  enum class Kind { One, Bot, Tensor, Par, Plus, With, OfCourse, WhyNot };

  Formula();  // 1

  static Formula one();
  static Formula bot();
  static Formula tensor(const Formula& a, const Formula& b);
  static Formula par(const Formula& a, const Formula& b);
  static Formula plus(const Formula& a, const Formula& b);
  static Formula with(const Formula& a, const Formula& b);
  static Formula of_course(const Formula& a);
  static Formula why_not(const Formula& a);

  Kind kind() const { return node_->kind; }
  // Left operand of a binary connective, or the operand of ! and ?.
  const Formula& left() const;
  const Formula& right() const;

  bool is_binary() const;
  bool is_unit() const { return kind() == Kind::One || kind() == Kind::Bot; }
  bool is_exponential() const {
    return kind() == Kind::OfCourse || kind() == Kind::WhyNot;
  }
  // 1, ⊗, ⊕ and ! are positive.
  bool is_positive() const;

  int depth() const;
  int size() const;
  bool has_exponential() const;

  std::string str() const;  // surface syntax

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::shared_ptr<const Formula> a, b;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind k, const Formula* a, const Formula* b);
  std::shared_ptr<const Node> node_;
};

Formula dual(const Formula& a);

// Formulas of intuitionistic linear logic, the target of the negative
// translation.
class IllFormula {
 public:
  enum class Kind { Unit, Tensor, Lollipop, Plus, With, OfCourse };

  IllFormula();  // 1

  static IllFormula unit();
  static IllFormula tensor(const IllFormula& a, const IllFormula& b);
  static IllFormula lollipop(const IllFormula& a, const IllFormula& b);
  static IllFormula plus(const IllFormula& a, const IllFormula& b);
  static IllFormula with(const IllFormula& a, const IllFormula& b);
  static IllFormula of_course(const IllFormula& a);

  Kind kind() const { return node_->kind; }
  const IllFormula& left() const;
  const IllFormula& right() const;

  std::string str() const;

  friend bool operator==(const IllFormula& a, const IllFormula& b);
  friend std::strong_ordering operator<=>(const IllFormula& a,
                                          const IllFormula& b);

 private:
  struct Node {
    Kind kind;
    std::shared_ptr<const IllFormula> a, b;
  };
  explicit IllFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static IllFormula make(Kind k, const IllFormula* a, const IllFormula* b);
  std::shared_ptr<const Node> node_;
};

}  // namespace cpwb

#endif
