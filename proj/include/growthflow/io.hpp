#pragma once

#include <string>
#include <vector>

namespace growthflow {

// Shortest decimal form that round-trips a double exactly.
std::string g17(double value);

// One numeric value per line; blank lines are skipped.
std::vector<double> load_values_csv(const std::string& path);

// Verbosity from GROWTHFLOW_LOG: 0 silent (default), 1 info, 2 debug.
int log_level();
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace growthflow
