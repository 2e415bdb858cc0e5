#include "cmatel/oracle.hpp"

#include <bit>
#include <map>

#include <json.hpp>

#include "cmatel/closure.hpp"

namespace cmatel {

namespace {

using Mask = std::uint64_t;

// Postorder flattening of a formula; children precede parents.
struct Program {
  struct Instr {
    Op op;
    std::size_t atom = 0;  // index into atoms
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    Coalition coalition;
  };
  std::vector<Instr> code;
  std::vector<std::string> atoms;

  explicit Program(const Formula& f) {
    auto names = atoms_of(f);
    atoms.assign(names.begin(), names.end());
    emit(f);
  }

  std::size_t emit(const Formula& f) {
    Instr in{f.op()};
    switch (f.op()) {
      case Op::True:
        break;
      case Op::Atom:
        in.atom = static_cast<std::size_t>(std::lower_bound(atoms.begin(), atoms.end(), f.atom_name()) - atoms.begin());
        break;
      case Op::And:
      case Op::Until:
        in.lhs = emit(f.lhs());
        in.rhs = emit(f.rhs());
        break;
      default:
        in.lhs = emit(f.body());
        in.coalition = f.coalition();
    }
    code.push_back(in);
    return code.size() - 1;
  }
};

Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// atom_at[i]: bitmask over atoms true at position/world i.
Mask eval_ltl_mask(const Program& p, const std::vector<Mask>& atom_at, std::size_t loop_start) {
  const std::size_t n = atom_at.size();
  const Mask all = full_mask(n);
  // pre(m)[i] = m[succ(i)], succ(i) = i+1 except the last position wraps to loop_start.
  auto pre = [&](Mask m) {
    Mask r = m >> 1;
    if ((m >> loop_start) & 1U) r |= Mask{1} << (n - 1);
    return r & all;
  };
  std::vector<Mask> val(p.code.size());
  for (std::size_t k = 0; k < p.code.size(); ++k) {
    const auto& in = p.code[k];
    switch (in.op) {
      case Op::True:
        val[k] = all;
        break;
      case Op::Atom: {
        Mask m = 0;
        for (std::size_t i = 0; i < n; ++i)
          if ((atom_at[i] >> in.atom) & 1U) m |= Mask{1} << i;
        val[k] = m;
        break;
      }
      case Op::Not:
        val[k] = ~val[in.lhs] & all;
        break;
      case Op::And:
        val[k] = val[in.lhs] & val[in.rhs];
        break;
      case Op::Next:
        val[k] = pre(val[in.lhs]);
        break;
      case Op::Until: {
        Mask r = val[in.rhs];
        while (true) {
          Mask next = val[in.rhs] | (val[in.lhs] & pre(r));
          if (next == r) break;
          r = next;
        }
        val[k] = r;
        break;
      }
      default:
        throw Error("epistemic operator in a pure-LTL evaluation");
    }
  }
  return val.back();
}

Mask eval_epistemic_mask(const Program& p, const KripkeModel& m) {
  const std::size_t n = m.worlds;
  const Mask all = full_mask(n);
  // related(A, w): worlds sharing w's block for every agent of A.
  auto related = [&](Coalition a, std::size_t w) {
    Mask r = all;
    for (AgentId ag : a.members()) {
      Mask same = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (m.blocks[ag][v] == m.blocks[ag][w]) same |= Mask{1} << v;
      r &= same;
    }
    return r;
  };
  auto reachable = [&](Coalition a, std::size_t w) {
    Mask seen = Mask{1} << w, frontier = seen;
    while (frontier) {
      Mask grow = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (!((frontier >> v) & 1U)) continue;
        for (AgentId ag : a.members()) grow |= related(Coalition::singleton(ag), v);
      }
      frontier = grow & ~seen;
      seen |= grow;
    }
    return seen;
  };

  std::vector<Mask> val(p.code.size());
  for (std::size_t k = 0; k < p.code.size(); ++k) {
    const auto& in = p.code[k];
    switch (in.op) {
      case Op::True:
        val[k] = all;
        break;
      case Op::Atom: {
        Mask r = 0;
        for (std::size_t w = 0; w < n; ++w)
          if (m.valuation[w].count(p.atoms[in.atom])) r |= Mask{1} << w;
        val[k] = r;
        break;
      }
      case Op::Not:
        val[k] = ~val[in.lhs] & all;
        break;
      case Op::And:
        val[k] = val[in.lhs] & val[in.rhs];
        break;
      case Op::Dk:
      case Op::Ck: {
        if (in.coalition.members().back() >= m.blocks.size()) throw Error("model lacks an agent of the formula");
        Mask r = 0;
        for (std::size_t w = 0; w < n; ++w) {
          Mask scope = in.op == Op::Dk ? related(in.coalition, w) : reachable(in.coalition, w);
          if ((scope & ~val[in.lhs]) == 0) r |= Mask{1} << w;
        }
        val[k] = r;
        break;
      }
      default:
        throw Error("temporal operator in a pure-epistemic evaluation");
    }
  }
  return val.back();
}

std::vector<Valuation> decode(const Program& p, const std::vector<Mask>& atom_at, std::size_t from, std::size_t to) {
  std::vector<Valuation> out;
  for (std::size_t i = from; i < to; ++i) {
    Valuation v;
    for (std::size_t a = 0; a < p.atoms.size(); ++a)
      if ((atom_at[i] >> a) & 1U) v.insert(p.atoms[a]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

bool eval_ltl(const Formula& f, const Lasso& run, std::size_t position) {
  if (has_epistemic(f)) throw Error("eval_ltl: formula has epistemic operators");
  if (run.loop.empty()) throw Error("eval_ltl: empty loop");
  if (run.length() > 64) throw Error("eval_ltl: lasso longer than 64 positions");
  if (position >= run.length()) throw Error("eval_ltl: position outside the lasso presentation");
  Program p(f);
  std::vector<Mask> atom_at;
  for (const auto* part : {&run.prefix, &run.loop})
    for (const auto& v : *part) {
      Mask m = 0;
      for (std::size_t a = 0; a < p.atoms.size(); ++a)
        if (v.count(p.atoms[a])) m |= Mask{1} << a;
      atom_at.push_back(m);
    }
  return (eval_ltl_mask(p, atom_at, run.prefix.size()) >> position) & 1U;
}

std::size_t ltl_completeness_threshold(const Formula& f) {
  const std::size_t n = extended_closure(f, AgentUniverse{}).size();
  return n >= 63 ? std::numeric_limits<std::size_t>::max() : std::size_t{1} << n;
}

OracleAnswer ltl_oracle(const Formula& f, std::size_t max_len) {
  if (has_epistemic(f)) throw Error("ltl_oracle: formula has epistemic operators");
  if (max_len == 0) throw Error("ltl_oracle: bound must be positive");
  if (max_len > 64) throw Error("ltl_oracle: bound above 64");
  Program p(f);
  const std::size_t width = p.atoms.size();
  const Mask per_pos = Mask{1} << width;
  std::vector<Mask> atom_at;
  for (std::size_t len = 1; len <= max_len; ++len) {
    atom_at.assign(len, 0);
    for (std::size_t start = 0; start < len; ++start) {
      // Odometer over len digits of base 2^width.
      std::fill(atom_at.begin(), atom_at.end(), 0);
      while (true) {
        if (eval_ltl_mask(p, atom_at, start) & 1U) {
          Lasso l{decode(p, atom_at, 0, start), decode(p, atom_at, start, len)};
          return {OracleVerdict::Sat, max_len, std::move(l), std::nullopt, 0};
        }
        std::size_t i = 0;
        while (i < len && ++atom_at[i] == per_pos) atom_at[i++] = 0;
        if (i == len) break;
      }
    }
  }
  const auto verdict =
      max_len >= ltl_completeness_threshold(f) ? OracleVerdict::ExhaustivelyUnsat : OracleVerdict::UnsatUpToBound;
  return {verdict, max_len, std::nullopt, std::nullopt, 0};
}

bool eval_epistemic(const Formula& f, const KripkeModel& m, std::size_t world) {
  if (has_temporal(f)) throw Error("eval_epistemic: formula has temporal operators");
  if (world >= m.worlds || m.worlds > 64) throw Error("eval_epistemic: world out of range");
  return (eval_epistemic_mask(Program(f), m) >> world) & 1U;
}

std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> rgs(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) return {{}};
  rgs[0] = 0;
  rec(rec, 1, 1);
  return out;
}

OracleAnswer epistemic_oracle(const Formula& f, std::size_t agents, std::size_t max_worlds) {
  if (has_temporal(f)) throw Error("epistemic_oracle: formula has temporal operators");
  if (max_worlds == 0 || max_worlds > 8) throw Error("epistemic_oracle: world bound must be in 1..8");
  const Coalition used = agents_of(f);
  if (!used.empty() && used.members().back() >= agents) throw Error("epistemic_oracle: too few agents for formula");
  Program p(f);
  const std::size_t width = p.atoms.size();

  for (std::size_t n = 1; n <= max_worlds; ++n) {
    const auto parts = set_partitions(n);
    // Odometer over one partition choice per agent.
    std::vector<std::size_t> choice(agents, 0);
    while (true) {
      KripkeModel m;
      m.worlds = n;
      for (std::size_t a = 0; a < agents; ++a) m.blocks.push_back(parts[choice[a]]);
      const std::uint64_t valuations = std::uint64_t{1} << (width * n);
      for (std::uint64_t code = 0; code < valuations; ++code) {
        m.valuation.assign(n, {});
        for (std::size_t w = 0; w < n; ++w)
          for (std::size_t a = 0; a < width; ++a)
            if ((code >> (w * width + a)) & 1U) m.valuation[w].insert(p.atoms[a]);
        if (Mask sat = eval_epistemic_mask(p, m)) {
          const auto w = static_cast<std::size_t>(std::countr_zero(sat));
          return {OracleVerdict::Sat, max_worlds, std::nullopt, std::move(m), w};
        }
      }
      std::size_t i = 0;
      while (i < agents && ++choice[i] == parts.size()) choice[i++] = 0;
      if (i == agents) break;
    }
  }
  return {OracleVerdict::UnsatUpToBound, max_worlds, std::nullopt, std::nullopt, 0};
}

std::string witness_json(const Lasso& l) {
  nlohmann::ordered_json j;
  j["prefix"] = nlohmann::ordered_json::array();
  j["loop"] = nlohmann::ordered_json::array();
  for (const auto& v : l.prefix) j["prefix"].push_back(v);
  for (const auto& v : l.loop) j["loop"].push_back(v);
  return j.dump();
}

std::string witness_json(const KripkeModel& m, std::size_t world, const AgentUniverse& universe) {
  nlohmann::ordered_json j;
  j["worlds"] = m.worlds;
  nlohmann::ordered_json parts = nlohmann::ordered_json::object();
  for (std::size_t a = 0; a < m.blocks.size(); ++a) {
    std::map<std::size_t, std::vector<std::size_t>> blocks;
    for (std::size_t w = 0; w < m.worlds; ++w) blocks[m.blocks[a][w]].push_back(w + 1);
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (auto& [b, ws] : blocks) list.push_back(ws);
    const std::string name = a < universe.size() ? universe.name(static_cast<AgentId>(a)) : "#" + std::to_string(a);
    parts[name] = std::move(list);
  }
  j["partitions"] = std::move(parts);
  nlohmann::ordered_json val = nlohmann::ordered_json::object();
  for (std::size_t w = 0; w < m.worlds; ++w) val[std::to_string(w + 1)] = m.valuation[w];
  j["valuation"] = std::move(val);
  j["at"] = world + 1;
  return j.dump();
}

}  // namespace cmatel
