#include "cmatel/formula.hpp"

#include <algorithm>
#include <bit>

namespace cmatel {

Coalition::Coalition(std::initializer_list<AgentId> members) {
  for (AgentId a : members) mask_ |= std::uint32_t{1} << a;
}

std::size_t Coalition::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<AgentId> Coalition::members() const {
  std::vector<AgentId> out;
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<AgentId>(std::countr_zero(m)));
  return out;
}

int Coalition::compare(Coalition other) const {
  if (mask_ == other.mask_) return 0;
  // Walk both ascending member lists; the first differing position decides,
  // and a proper prefix sorts first.
  std::uint32_t a = mask_, b = other.mask_;
  while (a != 0 && b != 0) {
    int x = std::countr_zero(a), y = std::countr_zero(b);
    if (x != y) return x < y ? -1 : 1;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 ? -1 : 1;
}

AgentUniverse::AgentUniverse(std::size_t capacity) : capacity_(std::min(capacity, kMaxAgents)) {}

AgentUniverse::AgentUniverse(std::initializer_list<std::string> names, std::size_t capacity)
    : AgentUniverse(capacity) {
  for (const auto& n : names) intern(n);
}

AgentId AgentUniverse::intern(std::string_view name) {
  if (auto id = find(name)) return *id;
  if (agents_.size() >= capacity_)
    throw CapacityError("agent capacity " + std::to_string(capacity_) + " exceeded by '" + std::string(name) + "'");
  auto id = static_cast<AgentId>(agents_.size());
  agents_.push_back({id, std::string(name)});
  return id;
}

std::optional<AgentId> AgentUniverse::find(std::string_view name) const {
  for (const auto& a : agents_)
    if (a.name == name) return a.id;
  return std::nullopt;
}

Coalition AgentUniverse::all() const {
  return agents_.empty() ? Coalition{} : Coalition((agents_.size() >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << agents_.size()) - 1));
}

std::vector<Coalition> AgentUniverse::supersets(Coalition base) const {
  std::vector<Coalition> out;
  const std::uint32_t full = all().mask();
  const std::uint32_t free = full & ~base.mask();
  // Enumerate subsets of `free` in ascending numeric order.
  std::uint32_t s = 0;
  while (true) {
    out.emplace_back(base.mask() | s);
    if (s == free) break;
    s = (s - free) & free;
  }
  std::sort(out.begin(), out.end(), [](Coalition x, Coalition y) { return x.mask() < y.mask(); });
  return out;
}

std::vector<std::string> AgentUniverse::names() const {
  std::vector<std::string> out;
  for (const auto& a : agents_) out.push_back(a.name);
  return out;
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Node n) {
  std::size_t h = static_cast<std::size_t>(n.op) * 0x100000001b3ULL;
  if (n.op == Op::Atom) h = mix(h, std::hash<std::string>{}(n.name));
  if (n.op == Op::Dk || n.op == Op::Ck) h = mix(h, n.coalition.mask());
  if (n.lhs) {
    h = mix(h, n.lhs->hash);
    n.size += n.lhs->size;
    n.depth = n.lhs->depth + 1;
  }
  if (n.rhs) {
    h = mix(h, n.rhs->hash);
    n.size += n.rhs->size;
    n.depth = std::max(n.depth, n.rhs->depth + 1);
  }
  n.hash = h;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::top() {
  static const Formula t = make(Node{Op::True, {}, {}, nullptr, nullptr});
  return t;
}

Formula Formula::atom(std::string name) { return make(Node{Op::Atom, std::move(name), {}, nullptr, nullptr}); }
Formula Formula::negation(Formula f) { return make(Node{Op::Not, {}, {}, f.node_, nullptr}); }
Formula Formula::conj(Formula l, Formula r) { return make(Node{Op::And, {}, {}, l.node_, r.node_}); }
Formula Formula::next(Formula f) { return make(Node{Op::Next, {}, {}, f.node_, nullptr}); }
Formula Formula::until(Formula l, Formula r) { return make(Node{Op::Until, {}, {}, l.node_, r.node_}); }

Formula Formula::dk(Coalition a, Formula f) {
  if (a.empty()) throw Error("empty coalition");
  return make(Node{Op::Dk, {}, a, f.node_, nullptr});
}

Formula Formula::ck(Coalition a, Formula f) {
  if (a.empty()) throw Error("empty coalition");
  return make(Node{Op::Ck, {}, a, f.node_, nullptr});
}

int Formula::compare_nodes(const Node* a, const Node* b) {
  if (a == b) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  switch (a->op) {
    case Op::True:
      return 0;
    case Op::Atom:
      return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
    default:
      break;
  }
  if (int c = compare_nodes(a->lhs.get(), b->lhs.get())) return c;
  if (a->rhs) {
    if (int c = compare_nodes(a->rhs.get(), b->rhs.get())) return c;
  }
  return a->coalition.compare(b->coalition);
}

int Formula::compare(const Formula& other) const { return compare_nodes(node_.get(), other.node_.get()); }

Formula negate(const Formula& f) { return f.is(Op::Not) ? f.body() : Formula::negation(f); }

Eventuality is_eventuality(const Formula& f) {
  if (f.is(Op::Until)) return Eventuality::Temporal;
  if (f.is_negated(Op::Ck)) return Eventuality::Epistemic;
  return Eventuality::None;
}

namespace {

template <typename Fn>
void walk(const Formula& f, Fn&& fn) {
  fn(f);
  switch (f.op()) {
    case Op::True:
    case Op::Atom:
      return;
    case Op::And:
    case Op::Until:
      walk(f.lhs(), fn);
      walk(f.rhs(), fn);
      return;
    default:
      walk(f.body(), fn);
  }
}

}  // namespace

FormulaSet subformulas(const Formula& f) {
  FormulaSet out;
  walk(f, [&](const Formula& g) { out.insert(g); });
  return out;
}

Coalition agents_of(const Formula& f) {
  Coalition c;
  walk(f, [&](const Formula& g) {
    if (g.is(Op::Dk) || g.is(Op::Ck)) c = c | g.coalition();
  });
  return c;
}

bool has_epistemic(const Formula& f) { return !agents_of(f).empty(); }

bool has_temporal(const Formula& f) {
  bool found = false;
  walk(f, [&](const Formula& g) { found = found || g.is(Op::Next) || g.is(Op::Until); });
  return found;
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (g.is(Op::Atom)) out.insert(g.atom_name());
  });
  return out;
}

int compare_sets(const FormulaSet& a, const FormulaSet& b) {
  auto i = a.begin(), j = b.begin();
  for (; i != a.end() && j != b.end(); ++i, ++j)
    if (int c = i->compare(*j)) return c;
  if (i == a.end() && j == b.end()) return 0;
  return i == a.end() ? -1 : 1;
}

}  // namespace cmatel
