// cmatel :: formula
//
// Syntax trees for linear-time temporal logic with distributed (D) and
// common (C) knowledge over coalitions of agents.  Formulas are immutable
// values sharing structure through reference-counted nodes.

#ifndef CMATEL_FORMULA_HPP_
#define CMATEL_FORMULA_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cmatel {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Agent universe or closure grew beyond its configured limit.
class CapacityError : public Error {
public:
  using Error::Error;
};

// Node budget of the pretableau construction exhausted.
class BudgetError : public Error {
public:
  using Error::Error;
};

using AgentId = std::uint8_t;

inline constexpr std::size_t kMaxAgents = 32;

// Set of agents encoded as a bitmask over agent ids.
class Coalition {
public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint32_t mask) : mask_(mask) {}
  Coalition(std::initializer_list<AgentId> members);

  static Coalition singleton(AgentId a) { return Coalition(std::uint32_t{1} << a); }

  std::uint32_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  std::size_t size() const;
  bool contains(AgentId a) const { return (mask_ >> a) & 1U; }
  bool subset_of(Coalition other) const { return (mask_ & ~other.mask_) == 0; }
  std::vector<AgentId> members() const;

  Coalition operator|(Coalition o) const { return Coalition(mask_ | o.mask_); }
  bool operator==(const Coalition&) const = default;

  // Lexicographic over the ascending member lists.
  int compare(Coalition other) const;

private:
  std::uint32_t mask_ = 0;
};

struct Agent {
  AgentId id;
  std::string name;
};

// Ordered agent names; ids are dense indices in declaration order.
class AgentUniverse {
public:
  explicit AgentUniverse(std::size_t capacity = 8);
  AgentUniverse(std::initializer_list<std::string> names, std::size_t capacity = 8);

  // Returns the id of `name`, declaring it if new.  Throws CapacityError.
  AgentId intern(std::string_view name);
  std::optional<AgentId> find(std::string_view name) const;

  std::size_t size() const { return agents_.size(); }
  std::size_t capacity() const { return capacity_; }
  const std::string& name(AgentId id) const { return agents_.at(id).name; }
  const std::vector<Agent>& agents() const { return agents_; }
  Coalition all() const;

  // Every coalition B with base ⊆ B ⊆ all(), in ascending mask order.
  std::vector<Coalition> supersets(Coalition base) const;

  bool operator==(const AgentUniverse& o) const { return agents_.size() == o.agents_.size() && names() == o.names(); }
  std::vector<std::string> names() const;

private:
  std::vector<Agent> agents_;
  std::size_t capacity_;
};

// Tag order doubles as the first key of the canonical formula order.
enum class Op : std::uint8_t { True, Atom, Not, And, Next, Until, Dk, Ck };

enum class Eventuality { None, Epistemic, Temporal };

class Formula {
public:
  static Formula top();
  static Formula atom(std::string name);
  static Formula negation(Formula f);  // literal Not, never simplifies
  static Formula conj(Formula l, Formula r);
  static Formula next(Formula f);
  static Formula until(Formula l, Formula r);
  static Formula dk(Coalition a, Formula f);
  static Formula ck(Coalition a, Formula f);

  Op op() const { return node_->op; }
  bool is(Op o) const { return node_->op == o; }
  const std::string& atom_name() const { return node_->name; }
  Coalition coalition() const { return node_->coalition; }
  // Unary operand, or left operand of a binary node.
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  Formula body() const { return Formula(node_->lhs); }

  std::size_t hash() const { return node_->hash; }
  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }

  // Canonical total order: tag, then children left to right, then coalition,
  // atoms by name.
  int compare(const Formula& other) const;
  bool operator==(const Formula& o) const { return node_ == o.node_ || (hash() == o.hash() && compare(o) == 0); }
  bool operator<(const Formula& o) const { return compare(o) < 0; }

  // Convenience predicates on the outer shape.
  bool is_negated(Op inner) const { return is(Op::Not) && body().is(inner); }

private:
  struct Node {
    Op op;
    std::string name;
    Coalition coalition;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t hash = 0;
    std::size_t size = 1;
    std::size_t depth = 0;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);
  static int compare_nodes(const Node* a, const Node* b);

  std::shared_ptr<const Node> node_;
};

using FormulaSet = std::set<Formula>;

// Strips exactly one leading negation, otherwise adds one.
Formula negate(const Formula& f);

Eventuality is_eventuality(const Formula& f);

// All subformulas of f including f itself.
FormulaSet subformulas(const Formula& f);

// Agents mentioned in any coalition of f.
Coalition agents_of(const Formula& f);

bool has_epistemic(const Formula& f);
bool has_temporal(const Formula& f);

std::set<std::string> atoms_of(const Formula& f);

// Lexicographic order on canonically ordered sets.
int compare_sets(const FormulaSet& a, const FormulaSet& b);

struct FormulaSetLess {
  bool operator()(const FormulaSet& a, const FormulaSet& b) const { return compare_sets(a, b) < 0; }
};

}  // namespace cmatel

template <>
struct std::hash<cmatel::Formula> {
  std::size_t operator()(const cmatel::Formula& f) const noexcept { return f.hash(); }
};

#endif  // CMATEL_FORMULA_HPP_
