#include "rice/program.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rice/decimal.hpp"
#include "rice/errors.hpp"

namespace rice {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  auto lower = [](char c) { return c >= 'a' && c <= 'z'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!lower(s[0]) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(),
                     [&](char c) { return lower(c) || digit(c) || c == '_'; });
}

void check_finite(double v, const char* where) {
  if (!std::isfinite(v)) throw WellFormednessError(std::string(where) + ": value must be finite");
}

}  // namespace

ArgName::ArgName(std::string text) : text_(std::move(text)) {
  if (!valid_name(text_))
    throw WellFormednessError("invalid argument name '" + text_ + "'");
}

const ArgName& reserved_output() {
  static const ArgName o("o");
  return o;
}

Valence::Valence(std::vector<ValenceEntry> entries) : entries_(std::move(entries)) {
  std::set<ArgName> seen;
  for (const auto& e : entries_)
    if (!seen.insert(e.name).second)
      throw WellFormednessError("duplicate name '" + e.name.str() + "' in valence");
}

bool Valence::has(const ArgName& name) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const ValenceEntry& e) { return e.name == name; });
}

Mode Valence::mode_of(const ArgName& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e.mode;
  throw SignatureError("name '" + name.str() + "' not in valence");
}

std::vector<ArgName> Valence::names() const {
  std::vector<ArgName> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

std::vector<ArgName> Valence::in_names() const {
  std::vector<ArgName> out;
  for (const auto& e : entries_)
    if (e.mode == Mode::in) out.push_back(e.name);
  return out;
}

std::vector<ArgName> Valence::out_names() const {
  std::vector<ArgName> out;
  for (const auto& e : entries_)
    if (e.mode == Mode::out) out.push_back(e.name);
  return out;
}

Binding::Binding(std::initializer_list<std::pair<ArgName, double>> init) {
  for (const auto& [name, value] : init) set(name, value);
}

void Binding::set(const ArgName& name, double value) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                             [](const auto& e, const ArgName& n) { return e.first < n; });
  if (it != entries_.end() && it->first == name)
    it->second = value;
  else
    entries_.insert(it, {name, value});
}

const double* Binding::find(const ArgName& name) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                             [](const auto& e, const ArgName& n) { return e.first < n; });
  if (it != entries_.end() && it->first == name) return &it->second;
  return nullptr;
}

double Binding::at(const ArgName& name) const {
  if (const double* v = find(name)) return *v;
  throw SignatureError("binding has no value for '" + name.str() + "'");
}

struct Program::Data {
  explicit Data(ProgramNode n) : node(std::move(n)) {}
  ProgramNode node;
  std::vector<ArgName> args;  // sorted
  int size = 0;
  bool condition_class = false;
};

namespace {

std::vector<ArgName> merge_args(const std::vector<ArgName>& a, const std::vector<ArgName>& b) {
  std::vector<ArgName> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Program Program::make(ProgramNode node) {
  auto data = std::make_shared<Data>(std::move(node));
  auto& d = *data;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode> || std::is_same_v<T, LtValueNode>) {
          d.args = {n.arg};
          d.size = 1;
          d.condition_class = true;
        } else if constexpr (std::is_same_v<T, IifNode>) {
          d.args = merge_args(n.cond.args(), {reserved_output()});
          d.size = n.cond.size() + 1;
          d.condition_class = false;
        } else if constexpr (std::is_same_v<T, ProjNode>) {
          std::vector<ArgName> mapped;
          std::set<ArgName> sources;
          for (const auto& pair : n.renaming) sources.insert(pair.from);
          for (const auto& a : n.inner.args()) {
            if (sources.count(a)) continue;
            mapped.push_back(a);  // pass-through
          }
          for (const auto& pair : n.renaming) mapped.push_back(pair.to);
          std::sort(mapped.begin(), mapped.end());
          d.args = std::move(mapped);
          d.size = n.inner.size() + 1;
          d.condition_class = n.inner.condition_class();
        } else {
          d.args = merge_args(n.left.args(), n.right.args());
          d.size = n.left.size() + n.right.size() + 1;
          d.condition_class = n.left.condition_class() && n.right.condition_class();
        }
      },
      data->node);
  return Program(std::move(data));
}

Program Program::constant(ArgName arg, double value) {
  check_finite(value, "const");
  if (arg == reserved_output())
    throw WellFormednessError("'o' is reserved for iif and cannot name a const argument");
  return make(ConstNode{std::move(arg), value});
}

Program Program::lt_value(ArgName arg, double value) {
  check_finite(value, "ltValue");
  if (arg == reserved_output())
    throw WellFormednessError("'o' is reserved for iif and cannot name a ltValue argument");
  return make(LtValueNode{std::move(arg), value});
}

Program Program::iif(Program cond, double then_value, double else_value) {
  check_finite(then_value, "iif");
  check_finite(else_value, "iif");
  if (!cond.condition_class())
    throw WellFormednessError("iif condition must not contain iif");
  if (cond.mentions(reserved_output()))
    throw WellFormednessError("iif condition must not mention the reserved name 'o'");
  return make(IifNode{std::move(cond), then_value, else_value});
}

Program Program::proj(Program inner, std::vector<RenamePair> renaming) {
  std::set<ArgName> sources, targets;
  for (const auto& pair : renaming) {
    if (!inner.mentions(pair.from))
      throw WellFormednessError("proj renames '" + pair.from.str() +
                                "' which the inner program does not mention");
    if (!sources.insert(pair.from).second)
      throw WellFormednessError("proj renames '" + pair.from.str() + "' twice");
    if (!targets.insert(pair.to).second)
      throw WellFormednessError("proj maps two names to '" + pair.to.str() + "'");
    if (pair.to == reserved_output())
      throw WellFormednessError("'o' is reserved for iif and cannot be a proj target");
  }
  // Pass-through names are implicitly mapped to themselves; the whole induced
  // map must stay injective.
  for (const auto& a : inner.args())
    if (!sources.count(a) && targets.count(a))
      throw WellFormednessError("proj target '" + a.str() +
                                "' collides with a pass-through name");
  return make(ProjNode{std::move(inner), std::move(renaming)});
}

Program Program::ande(Program left, Program right) {
  return make(AndeNode{std::move(left), std::move(right)});
}

Program Program::ore(Program left, Program right) {
  return make(OreNode{std::move(left), std::move(right)});
}

const ProgramNode& Program::node() const { return data_->node; }
const std::vector<ArgName>& Program::args() const { return data_->args; }
int Program::size() const { return data_->size; }
bool Program::condition_class() const { return data_->condition_class; }

bool Program::mentions(const ArgName& name) const {
  const auto& a = data_->args;
  return std::binary_search(a.begin(), a.end(), name);
}

const std::vector<ArgName>& args_of(const Program& p) { return p.args(); }

namespace {

int kind_rank(const ProgramNode& n) { return static_cast<int>(n.index()); }

int cmp_double(double a, double b) { return a < b ? -1 : (a > b ? 1 : 0); }

int cmp_name(const ArgName& a, const ArgName& b) {
  return a.str().compare(b.str()) < 0 ? -1 : (a.str() == b.str() ? 0 : 1);
}

}  // namespace

int compare(const Program& a, const Program& b) {
  const auto& na = a.node();
  const auto& nb = b.node();
  if (int d = kind_rank(na) - kind_rank(nb); d != 0) return d < 0 ? -1 : 1;
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(nb);
        if constexpr (std::is_same_v<T, ConstNode> || std::is_same_v<T, LtValueNode>) {
          if (int d = cmp_name(x.arg, y.arg)) return d;
          return cmp_double(x.value, y.value);
        } else if constexpr (std::is_same_v<T, IifNode>) {
          if (int d = compare(x.cond, y.cond)) return d;
          if (int d = cmp_double(x.then_value, y.then_value)) return d;
          return cmp_double(x.else_value, y.else_value);
        } else if constexpr (std::is_same_v<T, ProjNode>) {
          if (int d = compare(x.inner, y.inner)) return d;
          const auto na_ = x.renaming.size(), nb_ = y.renaming.size();
          for (std::size_t i = 0; i < std::min(na_, nb_); ++i) {
            if (int d = cmp_name(x.renaming[i].from, y.renaming[i].from)) return d;
            if (int d = cmp_name(x.renaming[i].to, y.renaming[i].to)) return d;
          }
          return na_ < nb_ ? -1 : (na_ > nb_ ? 1 : 0);
        } else {
          const auto& xl = x.left;
          const auto& yl = y.left;
          if (int d = compare(xl, yl)) return d;
          return compare(x.right, y.right);
        }
      },
      na);
}

bool structurally_equal(const Program& a, const Program& b) { return compare(a, b) == 0; }

namespace {

void print(const Program& p, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          out += "const(" + n.arg.str() + "," + format_constant(n.value) + ")";
        } else if constexpr (std::is_same_v<T, LtValueNode>) {
          out += "ltValue(" + n.arg.str() + "," + format_constant(n.value) + ")";
        } else if constexpr (std::is_same_v<T, IifNode>) {
          out += "iif(";
          print(n.cond, out);
          out += "," + format_constant(n.then_value) + "," + format_constant(n.else_value) + ")";
        } else if constexpr (std::is_same_v<T, ProjNode>) {
          out += "proj(";
          print(n.inner, out);
          out += ",[";
          for (std::size_t i = 0; i < n.renaming.size(); ++i) {
            if (i) out += ",";
            out += n.renaming[i].from.str() + "->" + n.renaming[i].to.str();
          }
          out += "])";
        } else if constexpr (std::is_same_v<T, AndeNode>) {
          out += "ande(";
          print(n.left, out);
          out += ",";
          print(n.right, out);
          out += ")";
        } else {
          out += "ore(";
          print(n.left, out);
          out += ",";
          print(n.right, out);
          out += ")";
        }
      },
      p.node());
}

}  // namespace

std::string Program::to_text() const {
  std::string out;
  print(*this, out);
  return out;
}

}  // namespace rice
