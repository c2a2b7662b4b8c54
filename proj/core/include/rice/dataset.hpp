#pragma once

// Labeled training data for the decision model.

#include <cstdint>
#include <string>
#include <vector>

#include "rice/oracle.hpp"

namespace rice {

struct DataRow {
  FeatureVector features;
  double label = 0.0;  // 0.0 = stop, 1.0 = go
};

struct Dataset {
  std::vector<DataRow> rows;
  std::uint64_t seed = 0;
  double noise = 0.0;
};

// n rows: light state uniform over {red, amber, green}, dist uniform [0,1],
// labels from the stop/go rule, then exactly round(noise*n) labels flipped
// at positions chosen uniformly without replacement.  Deterministic in seed.
Dataset generate_dataset(int n, double noise, std::uint64_t seed);

// CSV with header `rd,am,gr,dist,label`; lights and label as integers,
// dist with six decimals.
void write_csv(const Dataset& d, const std::string& path);
Dataset read_csv(const std::string& path);

// Uniform double in [0,1) from 53 random bits; used everywhere a uniform
// draw is needed so results are identical across standard libraries.
double uniform_unit(std::uint64_t random_bits);

}  // namespace rice
