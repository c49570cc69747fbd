#include "growthflow/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace growthflow {

std::string g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::vector<double> load_values_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::vector<double> values;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) {
      continue;
    }
    std::size_t end = line.find_last_not_of(" \t");
    const std::string token = line.substr(start, end - start + 1);
    char* rest = nullptr;
    const double v = std::strtod(token.c_str(), &rest);
    if (rest == token.c_str() || *rest != '\0') {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected a single numeric value, got \"" + token + "\"");
    }
    values.push_back(v);
  }
  return values;
}

int log_level() {
  static const int level = [] {
    const char* raw = std::getenv("GROWTHFLOW_LOG");
    if (raw == nullptr || *raw == '\0') {
      return 0;
    }
    char* rest = nullptr;
    const long v = std::strtol(raw, &rest, 10);
    if (rest == raw || *rest != '\0' || v < 0) {
      return 0;
    }
    return static_cast<int>(v);
  }();
  return level;
}

void log_info(const std::string& message) {
  if (log_level() >= 1) {
    std::cerr << "[growthflow] " << message << "\n";
  }
}

void log_debug(const std::string& message) {
  if (log_level() >= 2) {
    std::cerr << "[growthflow] " << message << "\n";
  }
}

}  // namespace growthflow
