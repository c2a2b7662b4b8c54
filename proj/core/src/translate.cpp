#include "rice/translate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <utility>
#include <variant>

#include "rice/decimal.hpp"
#include "rice/errors.hpp"
#include "rice/eval.hpp"

namespace rice {

namespace {

// Stack of renaming scopes; a name inside nested projections resolves by
// applying the innermost renaming first and continuing outward.
class RenameStack {
 public:
  void push(const std::vector<RenamePair>& renaming) { scopes_.push_back(&renaming); }
  void pop() { scopes_.pop_back(); }

  ArgName resolve(ArgName name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      for (const RenamePair& pair : **it)
        if (pair.from == name) {
          name = pair.to;
          break;
        }
    }
    return name;
  }

 private:
  std::vector<const std::vector<RenamePair>*> scopes_;
};

Literal eq_literal(ArgName arg, double v) {
  Literal lit;
  lit.kind = Literal::Kind::eq;
  lit.arg = std::move(arg);
  lit.value = v;
  return lit;
}

Literal lt_literal(ArgName arg, double v) {
  Literal lit;
  lit.kind = Literal::Kind::lt;
  lit.arg = std::move(arg);
  lit.value = v;
  return lit;
}

Literal neg_literal(std::vector<Literal> conj) {
  Literal lit;
  lit.kind = Literal::Kind::neg;
  lit.negated = std::move(conj);
  return lit;
}

std::vector<Clause> branches(const Program& p, RenameStack& names);

std::vector<Clause> iif_branches(const IifNode& n, RenameStack& names) {
  std::vector<Clause> conds = branches(n.cond, names);
  ArgName out = names.resolve(reserved_output());
  std::vector<Clause> result;
  // One clause per way the condition can hold; later ways deny the earlier
  // ones so the clause set stays disjoint.
  for (std::size_t i = 0; i < conds.size(); ++i) {
    Clause clause = conds[i];
    for (std::size_t j = 0; j < i; ++j)
      clause.body.push_back(neg_literal(conds[j].body));
    clause.body.push_back(eq_literal(out, n.then_value));
    result.push_back(std::move(clause));
  }
  Clause otherwise;
  for (const Clause& c : conds) otherwise.body.push_back(neg_literal(c.body));
  otherwise.body.push_back(eq_literal(out, n.else_value));
  result.push_back(std::move(otherwise));
  return result;
}

std::vector<Clause> branches(const Program& p, RenameStack& names) {
  return std::visit(
      [&](const auto& n) -> std::vector<Clause> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return {Clause{{eq_literal(names.resolve(n.arg), n.value)}}};
        } else if constexpr (std::is_same_v<T, LtValueNode>) {
          return {Clause{{lt_literal(names.resolve(n.arg), n.value)}}};
        } else if constexpr (std::is_same_v<T, IifNode>) {
          return iif_branches(n, names);
        } else if constexpr (std::is_same_v<T, ProjNode>) {
          names.push(n.renaming);
          auto result = branches(n.inner, names);
          names.pop();
          return result;
        } else if constexpr (std::is_same_v<T, AndeNode>) {
          auto lefts = branches(n.left, names);
          auto rights = branches(n.right, names);
          std::vector<Clause> result;
          result.reserve(lefts.size() * rights.size());
          for (const Clause& l : lefts)
            for (const Clause& r : rights) {
              Clause joined = l;
              joined.body.insert(joined.body.end(), r.body.begin(), r.body.end());
              result.push_back(std::move(joined));
            }
          return result;
        } else {
          static_assert(std::is_same_v<T, OreNode>);
          auto result = branches(n.left, names);
          auto rights = branches(n.right, names);
          std::move(rights.begin(), rights.end(), std::back_inserter(result));
          return result;
        }
      },
      p.node());
}

// Does the conjunction hold outright under the bindings?  Used for negated
// conditions, whose arguments are always already bound.
bool conj_holds(const std::vector<Literal>& conj, const Binding& bound) {
  for (const Literal& lit : conj) {
    const double* v = bound.find(lit.arg);
    if (v == nullptr) return false;
    bool ok = lit.kind == Literal::Kind::eq ? std::fabs(*v - lit.value) <= kValueTolerance
                                            : *v < lit.value;
    if (!ok) return false;
  }
  return true;
}

// Single-clause firing test: equalities bind or test left to right,
// strict-less tests wait until their argument is bound, negations deny a
// fully bound conjunction.
bool clause_fires(const Clause& clause, const Binding& input, Binding& bound) {
  bound = input;
  std::vector<const Literal*> pending;
  for (const Literal& lit : clause.body) {
    switch (lit.kind) {
      case Literal::Kind::eq: {
        const double* v = bound.find(lit.arg);
        if (v == nullptr) bound.set(lit.arg, lit.value);
        else if (std::fabs(*v - lit.value) > kValueTolerance) return false;
        break;
      }
      case Literal::Kind::lt: {
        const double* v = bound.find(lit.arg);
        if (v == nullptr) pending.push_back(&lit);
        else if (!(*v < lit.value)) return false;
        break;
      }
      case Literal::Kind::neg:
        if (conj_holds(lit.negated, bound)) return false;
        break;
    }
  }
  for (const Literal* lit : pending) {
    const double* v = bound.find(lit->arg);
    if (v == nullptr || !(*v < lit->value)) return false;
  }
  return true;
}

std::string capitalized(const ArgName& name) {
  std::string text = name.str();
  if (!text.empty()) text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  return text;
}

void render_literal(std::string& out, const Literal& lit, bool ascii) {
  switch (lit.kind) {
    case Literal::Kind::eq:
      out += capitalized(lit.arg) + "=" + format_constant(lit.value);
      break;
    case Literal::Kind::lt:
      out += capitalized(lit.arg) + "<" + format_constant(lit.value);
      break;
    case Literal::Kind::neg: {
      out += ascii ? "\\+(" : "¬(";
      for (std::size_t i = 0; i < lit.negated.size(); ++i) {
        if (i > 0) out += ascii ? ", " : " ∧ ";
        render_literal(out, lit.negated[i], ascii);
      }
      out += ")";
      break;
    }
  }
}

// Grid step for the ambiguity scan; coarser as the input dimension grows.
double overlap_step(std::size_t in_count) {
  if (in_count <= 2) return 0.01;
  if (in_count == 3) return 0.05;
  return 0.1;
}

void scan_for_overlap(ClauseSet& cs, const std::vector<ArgName>& in_names) {
  if (cs.clauses.size() < 2 || in_names.size() > 5) return;
  const double step = overlap_step(in_names.size());
  const int points = static_cast<int>(std::lround(1.0 / step)) + 1;
  std::vector<int> idx(in_names.size(), 0);
  Binding input, bound;
  while (true) {
    input = Binding{};
    for (std::size_t i = 0; i < in_names.size(); ++i) input.set(in_names[i], idx[i] * step);
    int first_fire = -1;
    for (std::size_t c = 0; c < cs.clauses.size(); ++c) {
      if (!clause_fires(cs.clauses[c], input, bound)) continue;
      if (first_fire < 0) {
        first_fire = static_cast<int>(c);
        continue;
      }
      std::string where;
      for (const auto& [name, value] : input.entries()) {
        if (!where.empty()) where += ", ";
        where += name.str() + "=" + format_field(value);
      }
      cs.warnings.push_back("ambiguous disjunction: clauses " + std::to_string(first_fire + 1) +
                            " and " + std::to_string(c + 1) + " both cover " + where +
                            "; the earlier clause takes priority");
      return;
    }
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == points) idx[d++] = 0;
    if (d == idx.size()) return;
  }
}

bool renders_as_sentence(const Program& p) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ProjNode>) return renders_as_sentence(n.inner);
        else return !std::is_same_v<T, ConstNode> && !std::is_same_v<T, LtValueNode>;
      },
      p.node());
}

// Tests nested inside an iif condition read as a plain conjunction
// ("X and Y"); only clause position gets the sentence-forming "If X, Y".
std::string english(const Program& p, RenameStack& names, bool in_condition) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return "the " + names.resolve(n.arg).str() + " is " + format_constant(n.value);
        } else if constexpr (std::is_same_v<T, LtValueNode>) {
          return "the " + names.resolve(n.arg).str() + " is less than " + format_constant(n.value);
        } else if constexpr (std::is_same_v<T, IifNode>) {
          const std::string out = names.resolve(reserved_output()).str();
          return "when " + english(n.cond, names, true) + " assign " + out + " to " +
                 format_constant(n.then_value) + ", otherwise assign " + out + " to " +
                 format_constant(n.else_value);
        } else if constexpr (std::is_same_v<T, ProjNode>) {
          names.push(n.renaming);
          std::string result = english(n.inner, names, in_condition);
          names.pop();
          return result;
        } else if constexpr (std::is_same_v<T, AndeNode>) {
          if (in_condition)
            return english(n.left, names, true) + " and " + english(n.right, names, true);
          return "If " + english(n.left, names, false) + ", " + english(n.right, names, false);
        } else {
          static_assert(std::is_same_v<T, OreNode>);
          if (in_condition)
            return "either " + english(n.left, names, true) + " or " +
                   english(n.right, names, true);
          return "either " + english(n.left, names, false) + ", or " +
                 english(n.right, names, false);
        }
      },
      p.node());
}

void check_over_valence(const Program& p, const Valence& valence) {
  for (const ArgName& arg : p.args())
    if (!valence.has(arg))
      throw SignatureError("program argument '" + arg.str() + "' is not in the valence");
}

}  // namespace

std::string ClauseSet::to_text(bool ascii) const {
  std::string head_text = "model(";
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (i > 0) head_text += ",";
    head_text += capitalized(head[i]);
  }
  head_text += ")";

  std::string out;
  for (const Clause& clause : clauses) {
    out += head_text;
    out += ascii ? " :- " : " ← ";
    for (std::size_t i = 0; i < clause.body.size(); ++i) {
      if (i > 0) out += ascii ? ", " : " ∧ ";
      render_literal(out, clause.body[i], ascii);
    }
    out += "\n";
  }
  for (const std::string& warning : warnings) out += "% warning: " + warning + "\n";
  return out;
}

ClauseSet to_clauses(const Program& p, const Valence& valence) {
  check_over_valence(p, valence);
  ClauseSet cs;
  cs.head = valence.names();
  RenameStack names;
  for (Clause& clause : branches(p, names)) cs.clauses.push_back(std::move(clause));

  scan_for_overlap(cs, valence.in_names());
  return cs;
}

std::optional<double> clause_output(const ClauseSet& cs, const Binding& input,
                                    const ArgName& out) {
  Binding bound;
  for (const Clause& clause : cs.clauses)
    if (clause_fires(clause, input, bound)) {
      const double* v = bound.find(out);
      if (v == nullptr) return std::nullopt;
      return *v;
    }
  return std::nullopt;
}

std::string to_english(const Program& p, const Valence& valence) {
  check_over_valence(p, valence);
  RenameStack names;
  std::string text = english(p, names, false);
  if (renders_as_sentence(p)) text += ".";
  return text;
}

}  // namespace rice
