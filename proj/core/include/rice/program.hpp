#pragma once

// Variable-free relational programs over named arguments.
//
// A program denotes a relation over its argument names.  The six node kinds:
//
//   const(a, v)      the tuples where argument a equals v
//   ltValue(a, v)    the tuples where argument a is strictly below v
//   iif(c, t, e)     total choice: binds the reserved name `o` to t when the
//                    condition c holds and to e otherwise
//   proj(p, [r])     renames arguments of p; unmentioned arguments pass through
//   ande(p, q)       conjunction (join on shared names)
//   ore(p, q)        disjunction with left priority
//
// Nodes are immutable and shared; copying a Program is cheap.

#include <compare>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace rice {

// A lowercase argument-name token: [a-z_][a-z0-9_]*.
class ArgName {
 public:
  explicit ArgName(std::string text);
  const std::string& str() const { return text_; }
  bool operator==(const ArgName& other) const { return text_ == other.text_; }
  auto operator<=>(const ArgName& other) const { return text_ <=> other.text_; }

 private:
  std::string text_;
};

// The output name bound by iif (and conventionally renamed away by proj).
const ArgName& reserved_output();  // "o"

enum class Mode { in, out };

struct ValenceEntry {
  ArgName name;
  Mode mode;
  bool operator==(const ValenceEntry&) const = default;
};

// An ordered argument signature such as [rd:in, dist:in, go:out].
class Valence {
 public:
  Valence() = default;
  explicit Valence(std::vector<ValenceEntry> entries);

  const std::vector<ValenceEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool has(const ArgName& name) const;
  Mode mode_of(const ArgName& name) const;  // throws SignatureError if absent
  std::vector<ArgName> names() const;
  std::vector<ArgName> in_names() const;
  std::vector<ArgName> out_names() const;
  bool operator==(const Valence&) const = default;

 private:
  std::vector<ValenceEntry> entries_;
};

// A finite map from argument names to values, kept sorted by name.
class Binding {
 public:
  Binding() = default;
  Binding(std::initializer_list<std::pair<ArgName, double>> init);

  void set(const ArgName& name, double value);  // insert or overwrite
  const double* find(const ArgName& name) const;
  double at(const ArgName& name) const;  // throws SignatureError if absent
  bool has(const ArgName& name) const { return find(name) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<std::pair<ArgName, double>>& entries() const { return entries_; }
  bool operator==(const Binding&) const = default;

 private:
  std::vector<std::pair<ArgName, double>> entries_;
};

struct ConstNode;
struct LtValueNode;
struct IifNode;
struct ProjNode;
struct AndeNode;
struct OreNode;

using ProgramNode = std::variant<ConstNode, LtValueNode, IifNode, ProjNode, AndeNode, OreNode>;

struct RenamePair {
  ArgName from;
  ArgName to;
};

class Program {
 public:
  // Factories validate structure and throw WellFormednessError on violations.
  static Program constant(ArgName arg, double value);
  static Program lt_value(ArgName arg, double value);
  static Program iif(Program cond, double then_value, double else_value);
  static Program proj(Program inner, std::vector<RenamePair> renaming);
  static Program ande(Program left, Program right);
  static Program ore(Program left, Program right);

  const ProgramNode& node() const;

  // Argument names, sorted ascending.
  const std::vector<ArgName>& args() const;
  bool mentions(const ArgName& name) const;

  // Node count; each node counts one regardless of payload.
  int size() const;

  // True when the program contains no iif and may guard one.
  bool condition_class() const;

  std::string to_text() const;

 private:
  struct Data;
  explicit Program(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  static Program make(ProgramNode node);
  std::shared_ptr<const Data> data_;
};

struct ConstNode {
  ArgName arg;
  double value;
};

struct LtValueNode {
  ArgName arg;
  double value;
};

struct IifNode {
  Program cond;
  double then_value;
  double else_value;
};

struct ProjNode {
  Program inner;
  std::vector<RenamePair> renaming;
};

struct AndeNode {
  Program left;
  Program right;
};

struct OreNode {
  Program left;
  Program right;
};

// Sorted set of argument names the program mentions.
const std::vector<ArgName>& args_of(const Program& p);

// Total structural order: node kinds rank const < ltValue < iif < proj <
// ande < ore, then fields compare lexicographically.  Returns <0, 0, >0.
int compare(const Program& a, const Program& b);
bool structurally_equal(const Program& a, const Program& b);

}  // namespace rice
