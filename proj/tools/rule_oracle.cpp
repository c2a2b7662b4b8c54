// Reference oracle server for the external-process protocol: one request
// per line ("rd am gr dist"), one decimal prediction per line, "QUIT" to
// finish.  Any malformed request is a protocol error and ends the process
// with a nonzero status.

#include <iostream>
#include <sstream>
#include <string>

#include "rice/decimal.hpp"
#include "rice/oracle.hpp"

int main() {
  std::ios::sync_with_stdio(false);
  rice::RuleOracle oracle;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line == "QUIT") return 0;
    std::istringstream fields(line);
    rice::FeatureVector f;
    if (!(fields >> f.rd >> f.am >> f.gr >> f.dist)) {
      std::cerr << "malformed request: " << line << "\n";
      return 1;
    }
    std::string rest;
    if (fields >> rest) {
      std::cerr << "trailing fields in request: " << line << "\n";
      return 1;
    }
    try {
      std::cout << rice::format_constant(oracle.predict(f)) << "\n" << std::flush;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 0;
}
