#include "rice/job.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rice/decimal.hpp"
#include "rice/errors.hpp"
#include "rice/eval.hpp"

namespace rice {

namespace {

bool values_equal(double a, double b) { return std::fabs(a - b) <= kValueTolerance; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits "a, b, c" at top-level commas (no nesting occurs inside brackets
// in this format, so a flat split suffices).
std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

// Extracts the "..." of fact("...").  and validates the trailing ")."
std::string_view fact_body(std::string_view line, std::string_view head, int lineno) {
  std::string_view rest = line.substr(head.size());
  rest = trim(rest);
  if (rest.size() < 3 || rest.front() != '(' || rest.substr(rest.size() - 2) != ").")
    throw ParseError("malformed fact", lineno);
  return trim(rest.substr(1, rest.size() - 3));
}

}  // namespace

Binding SynthesisJob::in_part(const Observable& row) const {
  Binding b;
  for (const auto& e : valence.entries())
    if (e.mode == Mode::in) b.set(e.name, row.fields.at(e.name));
  return b;
}

Binding SynthesisJob::out_part(const Observable& row) const {
  Binding b;
  for (const auto& e : valence.entries())
    if (e.mode == Mode::out) b.set(e.name, row.fields.at(e.name));
  return b;
}

SynthesisJob parse_job(std::string_view text) {
  SynthesisJob job;
  bool saw_valence = false;
  std::vector<double> constants;

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++lineno;
    if (line.empty() || line.front() == '%') continue;

    if (line.starts_with("jobValence")) {
      if (saw_valence) throw ParseError("duplicate jobValence", lineno);
      std::string_view body = fact_body(line, "jobValence", lineno);
      if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw ParseError("jobValence expects a [...] list", lineno);
      std::vector<ValenceEntry> entries;
      for (auto part : split_commas(body.substr(1, body.size() - 2))) {
        auto colon = part.find(':');
        if (colon == std::string_view::npos)
          throw ParseError("valence entry needs name:mode", lineno);
        std::string_view mode = trim(part.substr(colon + 1));
        Mode m;
        if (mode == "in")
          m = Mode::in;
        else if (mode == "out")
          m = Mode::out;
        else
          throw ParseError("mode must be 'in' or 'out'", lineno);
        try {
          entries.push_back({ArgName(std::string(trim(part.substr(0, colon)))), m});
        } catch (const WellFormednessError& e) {
          throw ParseError(e.what(), lineno);
        }
      }
      try {
        job.valence = Valence(std::move(entries));
      } catch (const WellFormednessError& e) {
        throw ParseError(e.what(), lineno);
      }
      saw_valence = true;
    } else if (line.starts_with("jobConstant")) {
      std::string_view body = fact_body(line, "jobConstant", lineno);
      try {
        constants.push_back(parse_number(body));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
      }
    } else if (line.starts_with("jobObservable")) {
      if (!saw_valence) throw ParseError("jobObservable before jobValence", lineno);
      std::string_view body = fact_body(line, "jobObservable", lineno);
      auto close = body.rfind(']');
      if (body.empty() || body.front() != '[' || close == std::string_view::npos)
        throw ParseError("jobObservable expects [fields], polarity", lineno);
      std::string_view fields = body.substr(1, close - 1);
      std::string_view tail = trim(body.substr(close + 1));
      if (tail.empty() || tail.front() != ',')
        throw ParseError("jobObservable needs a polarity flag", lineno);
      tail = trim(tail.substr(1));
      Observable row;
      if (tail == "true")
        row.positive = true;
      else if (tail == "false")
        row.positive = false;
      else
        throw ParseError("polarity must be 'true' or 'false'", lineno);
      std::size_t count = 0;
      for (auto part : split_commas(fields)) {
        auto colon = part.find(':');
        if (colon == std::string_view::npos)
          throw ParseError("observable field needs name:value", lineno);
        try {
          ArgName name(std::string(trim(part.substr(0, colon))));
          if (!job.valence.has(name))
            throw ParseError("field '" + name.str() + "' not in valence", lineno);
          if (row.fields.has(name))
            throw ParseError("duplicate field '" + name.str() + "'", lineno);
          row.fields.set(name, parse_number(trim(part.substr(colon + 1))));
        } catch (const WellFormednessError& e) {
          throw ParseError(e.what(), lineno);
        }
        ++count;
      }
      if (count != job.valence.size())
        throw ParseError("observable arity does not match the valence", lineno);
      job.observables.push_back(std::move(row));
    } else {
      throw ParseError("unknown fact '" + std::string(line.substr(0, line.find('('))) + "'",
                       lineno);
    }
  }
  if (!saw_valence) throw ParseError("missing jobValence");

  std::sort(constants.begin(), constants.end());
  constants.erase(std::unique(constants.begin(), constants.end(),
                              [](double a, double b) { return values_equal(a, b); }),
                  constants.end());
  job.constants = std::move(constants);
  return job;
}

std::string serialize_job(const SynthesisJob& job) {
  std::string out = "jobValence([";
  const auto& entries = job.valence.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ", ";
    out += entries[i].name.str() + (entries[i].mode == Mode::in ? ":in" : ":out");
  }
  out += "]).\n";
  for (double c : job.constants) out += "jobConstant(" + format_constant(c) + ").\n";
  for (const auto& row : job.observables) {
    out += "jobObservable([";
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i) out += ", ";
      out += entries[i].name.str() + ":" + format_field(row.fields.at(entries[i].name));
    }
    out += row.positive ? "], true).\n" : "], false).\n";
  }
  return out;
}

bool satisfies(const Program& p, const SynthesisJob& job) {
  for (const auto& row : job.observables) {
    Binding input = job.in_part(row);
    Binding expected = job.out_part(row);
    bool produced = false;
    try {
      if (auto result = evaluate(p, input, job.valence)) {
        produced = std::all_of(expected.entries().begin(), expected.entries().end(),
                               [&](const auto& e) {
                                 const double* got = result->find(e.first);
                                 return got && values_equal(*got, e.second);
                               });
      }
    } catch (const UnboundOutputError&) {
      produced = false;  // no functional tuple for this row
    }
    if (produced != row.positive) return false;
  }
  return true;
}

SynthesisJob slice(const SynthesisJob& job, const std::map<ArgName, double>& fixed,
                   const std::set<ArgName>& drop) {
  for (const auto& [name, value] : fixed)
    if (!job.valence.has(name))
      throw SignatureError("fixed name '" + name.str() + "' not in valence");
  for (const auto& name : drop) {
    if (!job.valence.has(name))
      throw SignatureError("dropped name '" + name.str() + "' not in valence");
    if (job.valence.mode_of(name) == Mode::out)
      throw UnsafeSliceError("cannot drop the out-mode name '" + name.str() + "'");
  }

  std::vector<Observable> kept;
  for (const auto& row : job.observables) {
    bool match = std::all_of(fixed.begin(), fixed.end(), [&](const auto& f) {
      return values_equal(row.fields.at(f.first), f.second);
    });
    if (match) kept.push_back(row);
  }

  // A dropped name must be constant over the kept rows, otherwise the slice
  // would erase a distinction the observables still depend on.
  for (const auto& name : drop) {
    for (std::size_t i = 1; i < kept.size(); ++i)
      if (!values_equal(kept[i].fields.at(name), kept[0].fields.at(name)))
        throw UnsafeSliceError("dropped name '" + name.str() +
                               "' still varies among the kept rows");
  }

  SynthesisJob out;
  std::vector<ValenceEntry> entries;
  for (const auto& e : job.valence.entries())
    if (!drop.count(e.name)) entries.push_back(e);
  out.valence = Valence(std::move(entries));

  for (auto& row : kept) {
    Observable r;
    r.positive = row.positive;
    for (const auto& e : out.valence.entries()) r.fields.set(e.name, row.fields.at(e.name));
    out.observables.push_back(std::move(r));
  }

  std::vector<double> pool;
  for (const auto& row : out.observables)
    for (const auto& [name, value] : row.fields.entries()) pool.push_back(value);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end(),
                         [](double a, double b) { return values_equal(a, b); }),
             pool.end());
  out.constants = std::move(pool);
  return out;
}

}  // namespace rice
