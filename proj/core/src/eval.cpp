#include "rice/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "rice/errors.hpp"

namespace rice {

namespace {

bool values_equal(double a, double b) { return std::fabs(a - b) <= kValueTolerance; }

// Merge right into left; false when the two solutions bind a shared name to
// different values.
bool merge_into(Solution& acc, const Solution& other) {
  for (const auto& [name, value] : other.outputs.entries()) {
    if (const double* prior = acc.outputs.find(name)) {
      if (!values_equal(*prior, value)) return false;
    } else {
      acc.outputs.set(name, value);
    }
  }
  acc.residuals.insert(acc.residuals.end(), other.residuals.begin(), other.residuals.end());
  return true;
}

void canonicalize(Solution& s) {
  std::sort(s.residuals.begin(), s.residuals.end(), [](const Residual& a, const Residual& b) {
    if (a.arg != b.arg) return a.arg < b.arg;
    return a.bound < b.bound;
  });
  s.residuals.erase(std::unique(s.residuals.begin(), s.residuals.end(),
                                [](const Residual& a, const Residual& b) {
                                  return a.arg == b.arg && a.bound == b.bound;
                                }),
                    s.residuals.end());
}

int compare_solutions(const Solution& a, const Solution& b) {
  const auto& ea = a.outputs.entries();
  const auto& eb = b.outputs.entries();
  for (std::size_t i = 0; i < std::min(ea.size(), eb.size()); ++i) {
    if (ea[i].first != eb[i].first) return ea[i].first < eb[i].first ? -1 : 1;
    if (ea[i].second != eb[i].second) return ea[i].second < eb[i].second ? -1 : 1;
  }
  if (ea.size() != eb.size()) return ea.size() < eb.size() ? -1 : 1;
  const auto& ra = a.residuals;
  const auto& rb = b.residuals;
  for (std::size_t i = 0; i < std::min(ra.size(), rb.size()); ++i) {
    if (!(ra[i].arg == rb[i].arg)) return ra[i].arg < rb[i].arg ? -1 : 1;
    if (ra[i].bound != rb[i].bound) return ra[i].bound < rb[i].bound ? -1 : 1;
  }
  if (ra.size() != rb.size()) return ra.size() < rb.size() ? -1 : 1;
  return 0;
}

std::vector<Solution> solve(const Program& p, const Binding& input) {
  return std::visit(
      [&](const auto& n) -> std::vector<Solution> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          if (const double* v = input.find(n.arg)) {
            if (values_equal(*v, n.value)) return {Solution{}};
            return {};
          }
          Solution s;
          s.outputs.set(n.arg, n.value);
          return {std::move(s)};
        } else if constexpr (std::is_same_v<T, LtValueNode>) {
          if (const double* v = input.find(n.arg)) {
            if (*v < n.value) return {Solution{}};
            return {};
          }
          Solution s;
          s.residuals.push_back({n.arg, n.value});
          return {std::move(s)};
        } else if constexpr (std::is_same_v<T, IifNode>) {
          for (const auto& a : n.cond.args())
            if (!input.has(a))
              throw SignatureError("iif condition argument '" + a.str() +
                                   "' is not bound by the inputs");
          bool holds = !solve(n.cond, input).empty();
          Solution s;
          s.outputs.set(reserved_output(), holds ? n.then_value : n.else_value);
          return {std::move(s)};
        } else if constexpr (std::is_same_v<T, ProjNode>) {
          // Build the full induced map over the inner program's names.
          std::vector<std::pair<ArgName, ArgName>> map;  // inner name -> outer name
          for (const auto& a : n.inner.args()) {
            bool renamed = false;
            for (const auto& pair : n.renaming)
              if (pair.from == a) {
                map.emplace_back(a, pair.to);
                renamed = true;
                break;
              }
            if (!renamed) map.emplace_back(a, a);
          }
          Binding translated;
          for (const auto& [from, to] : map)
            if (const double* v = input.find(to)) translated.set(from, *v);
          auto rename = [&](const ArgName& from) -> const ArgName& {
            for (const auto& [f, t] : map)
              if (f == from) return t;
            return from;  // unreachable for well-formed programs
          };
          std::vector<Solution> out;
          for (const auto& sol : solve(n.inner, translated)) {
            Solution mapped;
            for (const auto& [name, value] : sol.outputs.entries())
              mapped.outputs.set(rename(name), value);
            for (const auto& r : sol.residuals) mapped.residuals.push_back({rename(r.arg), r.bound});
            out.push_back(std::move(mapped));
          }
          return out;
        } else if constexpr (std::is_same_v<T, AndeNode>) {
          auto lefts = solve(n.left, input);
          if (lefts.empty()) return {};
          auto rights = solve(n.right, input);
          // Conjunction must be order-symmetric: rank merged pairs by the sum
          // of the operand positions (so each operand's own preference order is
          // respected), breaking ties by solution content rather than by which
          // operand came first.
          std::vector<std::pair<std::size_t, Solution>> ranked;
          for (std::size_t i = 0; i < lefts.size(); ++i)
            for (std::size_t j = 0; j < rights.size(); ++j) {
              Solution merged = lefts[i];
              if (!merge_into(merged, rights[j])) continue;
              canonicalize(merged);
              ranked.emplace_back(i + j, std::move(merged));
            }
          std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return compare_solutions(a.second, b.second) < 0;
          });
          std::vector<Solution> out;
          out.reserve(ranked.size());
          for (auto& [rank, sol] : ranked) out.push_back(std::move(sol));
          return out;
        } else {
          auto out = solve(n.left, input);
          auto rights = solve(n.right, input);
          out.insert(out.end(), std::make_move_iterator(rights.begin()),
                     std::make_move_iterator(rights.end()));
          return out;
        }
      },
      p.node());
}

}  // namespace

std::vector<Solution> solutions(const Program& p, const Binding& input) {
  return solve(p, input);
}

std::optional<Binding> evaluate(const Program& p, const Binding& input, const Valence& valence) {
  for (const auto& a : p.args())
    if (!valence.has(a))
      throw SignatureError("program argument '" + a.str() + "' is not in the valence");
  auto ins = valence.in_names();
  if (input.size() != ins.size())
    throw SignatureError("input must bind exactly the in-mode names");
  for (const auto& name : ins)
    if (!input.has(name))
      throw SignatureError("input does not bind in-mode name '" + name.str() + "'");

  auto outs = valence.out_names();
  bool saw_incomplete = false;
  for (const auto& sol : solve(p, input)) {
    // A residual on a bound name is decided here; one on an unbound name
    // leaves the solution denoting infinitely many tuples, i.e. not
    // functional, which surfaces as an unbound output below.
    bool rejected = false;
    bool unresolved = false;
    for (const auto& r : sol.residuals) {
      const double* v = sol.outputs.find(r.arg);
      if (!v) v = input.find(r.arg);
      if (!v) {
        unresolved = true;
      } else if (!(*v < r.bound)) {
        rejected = true;
        break;
      }
    }
    if (rejected) continue;
    bool complete = !unresolved &&
                    std::all_of(outs.begin(), outs.end(),
                                [&](const ArgName& o) { return sol.outputs.has(o); });
    if (!complete) {
      saw_incomplete = true;
      continue;
    }
    Binding result;
    for (const auto& o : outs) result.set(o, sol.outputs.at(o));
    return result;
  }
  if (saw_incomplete)
    throw UnboundOutputError("a solution survived its checks without binding every out-mode name");
  return std::nullopt;
}

}  // namespace rice
