#include "rice/parse.hpp"

#include <cctype>
#include <string>

#include "rice/decimal.hpp"
#include "rice/errors.hpp"

namespace rice {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool eat_arrow() {
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return true;
    }
    return false;
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      bool name_char = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
      if (!name_char) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  // Operator heads allow uppercase letters (ltValue); argument names do not.
  std::string keyword() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      bool kw_char = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                     (c >= '0' && c <= '9') || c == '_';
      if (!kw_char) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' ||
          ((c == '-' || c == '+') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected a number");
    return parse_number(text_.substr(start, pos_ - start));
  }

  void end() {
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Program parse_expr(Cursor& cur) {
  std::string head = cur.keyword();
  cur.expect('(');
  if (head == "const" || head == "ltValue") {
    ArgName arg(cur.word());
    cur.expect(',');
    double v = cur.number();
    cur.expect(')');
    return head == "const" ? Program::constant(std::move(arg), v)
                           : Program::lt_value(std::move(arg), v);
  }
  if (head == "iif") {
    Program cond = parse_expr(cur);
    cur.expect(',');
    double t = cur.number();
    cur.expect(',');
    double e = cur.number();
    cur.expect(')');
    return Program::iif(std::move(cond), t, e);
  }
  if (head == "proj") {
    Program inner = parse_expr(cur);
    cur.expect(',');
    cur.expect('[');
    std::vector<RenamePair> renaming;
    if (!cur.eat(']')) {
      while (true) {
        ArgName from(cur.word());
        if (!cur.eat_arrow()) cur.fail("expected '->'");
        ArgName to(cur.word());
        renaming.push_back({std::move(from), std::move(to)});
        if (cur.eat(']')) break;
        cur.expect(',');
      }
    }
    cur.expect(')');
    return Program::proj(std::move(inner), std::move(renaming));
  }
  if (head == "ande" || head == "ore") {
    Program left = parse_expr(cur);
    cur.expect(',');
    Program right = parse_expr(cur);
    cur.expect(')');
    return head == "ande" ? Program::ande(std::move(left), std::move(right))
                          : Program::ore(std::move(left), std::move(right));
  }
  cur.fail("unknown operator '" + head + "'");
}

}  // namespace

Program parse_program(std::string_view text) {
  Cursor cur(text);
  Program p = parse_expr(cur);
  cur.end();
  return p;
}

}  // namespace rice
