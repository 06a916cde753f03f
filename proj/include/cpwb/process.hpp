#ifndef CPWB_PROCESS_HPP
#define CPWB_PROCESS_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cpwb/formula.hpp"

namespace cpwb {

using Name = std::string;
using NameSet = std::set<Name>;

// CP process terms. Binding structure:
//   Cut(x, A, P, Q)         x bound in P and Q; P uses x at A
//   Out(x, y, P, Q)         x[y].(P | Q), y bound in P
//   In(x, y, P)             x(y).P
//   Server(x, y, P)         !x(y).P
//   Client(x, y, P)         ?x[y].P
//   Contract(x, x1, x2, P)  x1 and x2 bound in P, both become x
class Process {
 public:
  enum class Kind {
    Inact,
    Cut,
    Par,
    Fwd,
    Out,
    In,
    Server,
    Client,
    Select,
    Case,
    EmptyOut,
    EmptyIn,
    Weak,
    Contract
  };

  Process();  // 0

  static Process inact();
  static Process cut(const Name& x, const Formula& a, const Process& p,
                     const Process& q);
  static Process par(const Process& p, const Process& q);
  static Process fwd(const Name& x, const Name& y);
  static Process out(const Name& x, const Name& y, const Process& p,
                     const Process& q);
  static Process in(const Name& x, const Name& y, const Process& p);
  static Process server(const Name& x, const Name& y, const Process& p);
  static Process client(const Name& x, const Name& y, const Process& p);
  static Process select(const Name& x, int i, const Process& p);
  static Process offer(const Name& x, const Process& p, const Process& q);
  static Process empty_out(const Name& x);
  static Process empty_in(const Name& x, const Process& p);
  static Process weak(const Name& x, const Formula& a, const Process& p);
  static Process contract(const Name& x, const Name& x1, const Name& x2,
                          const Process& p);

  Kind kind() const { return node_->kind; }
  // Subject name (the channel acted on); Fwd's first name.
  const Name& x() const { return node_->x; }
  // Bound name for Out/In/Server/Client; Fwd's second name; Contract's x1.
  const Name& y() const { return node_->y; }
  // Contract's x2.
  const Name& z() const { return node_->z; }
  const Formula& annot() const { return node_->annot; }
  int index() const { return node_->index; }
  const Process& p() const;
  const Process& q() const;

  bool same_node(const Process& o) const { return node_ == o.node_; }

  std::string str() const;

 private:
  struct Node {
    Kind kind = Kind::Inact;
    Name x, y, z;
    Formula annot;
    int index = 0;
    std::shared_ptr<const Process> p, q;
  };
  explicit Process(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Process make(Node n, const Process* p, const Process* q);
  std::shared_ptr<const Node> node_;
};

// Structural equality (bound names must match literally).
bool operator==(const Process& a, const Process& b);

NameSet free_names(const Process& p);
// Every name occurring in p, free or bound.
NameSet all_names(const Process& p);
bool occurs_free(const Process& p, const Name& x);

// Number of constructors.
int size(const Process& p);

// P{y/x}: replace free occurrences of x by y, renaming binders as needed.
Process substitute(const Process& p, const Name& y, const Name& x);
// Simultaneous capture-avoiding renaming of free names.
Process rename(const Process& p, const std::map<Name, Name>& m);

bool alpha_eq(const Process& a, const Process& b);

// Deterministic supply of names that avoid everything registered with it.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(const NameSet& avoid) : used_(avoid) {}
  void avoid(const Name& n) { used_.insert(n); }
  void avoid(const NameSet& ns) { used_.insert(ns.begin(), ns.end()); }
  void avoid(const Process& p);
  // base itself when unused, otherwise base followed by a counter.
  Name fresh(const Name& base);

 private:
  NameSet used_;
  std::map<Name, int> next_;
};

}  // namespace cpwb

#endif
