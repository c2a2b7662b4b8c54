#include "rice/dataset.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "rice/decimal.hpp"
#include "rice/errors.hpp"

namespace rice {

double uniform_unit(std::uint64_t random_bits) {
  return static_cast<double>(random_bits >> 11) * 0x1.0p-53;
}

Dataset generate_dataset(int n, double noise, std::uint64_t seed) {
  if (n <= 0) throw Error("dataset size must be positive");
  if (!(noise >= 0.0 && noise < 0.5)) throw Error("noise fraction must be in [0, 0.5)");

  std::mt19937_64 rng(seed);
  Dataset d;
  d.seed = seed;
  d.noise = noise;
  d.rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    DataRow row;
    switch (rng() % 3) {
      case 0: row.features.rd = 1.0; break;
      case 1: row.features.am = 1.0; break;
      default: row.features.gr = 1.0; break;
    }
    row.features.dist = uniform_unit(rng());
    row.label = rule_label(row.features);
    d.rows.push_back(row);
  }

  // Flip exactly round(noise*n) labels, positions drawn without replacement.
  auto flips = static_cast<std::size_t>(std::llrint(noise * n));
  std::vector<std::size_t> order(d.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < flips; ++i) {
    std::size_t j = i + rng() % (order.size() - i);
    std::swap(order[i], order[j]);
    d.rows[order[i]].label = 1.0 - d.rows[order[i]].label;
  }
  return d;
}

void write_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "rd,am,gr,dist,label\n";
  char line[96];
  for (const auto& row : d.rows) {
    std::snprintf(line, sizeof(line), "%d,%d,%d,%.6f,%d\n", static_cast<int>(row.features.rd),
                  static_cast<int>(row.features.am), static_cast<int>(row.features.gr),
                  row.features.dist, static_cast<int>(row.label));
    out << line;
  }
  if (!out) throw Error("failed writing '" + path + "'");
}

Dataset read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty dataset file", 1);
  if (line == "rd,am,gr,dist,label\r") line.pop_back();
  if (line != "rd,am,gr,dist,label")
    throw ParseError("unexpected CSV header '" + line + "'", 1);

  Dataset d;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 5> cells{};
    std::size_t pos = 0;
    for (int c = 0; c < 5; ++c) {
      std::size_t comma = c < 4 ? line.find(',', pos) : line.size();
      if (comma == std::string::npos) throw ParseError("expected 5 CSV fields", lineno);
      try {
        cells[static_cast<std::size_t>(c)] =
            parse_number(std::string_view(line).substr(pos, comma - pos));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
      }
      pos = comma + 1;
    }
    DataRow row;
    row.features = {cells[0], cells[1], cells[2], cells[3]};
    row.label = cells[4];
    d.rows.push_back(row);
  }
  return d;
}

}  // namespace rice
