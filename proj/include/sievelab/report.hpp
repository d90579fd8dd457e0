#pragma once

#include <string>

#include "sievelab/equidist.hpp"

namespace sievelab {

/// %.17g rendering: shortest representation that round-trips a double,
/// identical across runs and worker counts.
std::string fmt_double(double v);

/// CSV per the fixed schema: q, count, main_term_num, main_term_den,
/// discrepancy_float, weight. Header row always present; newline-terminated.
std::string to_csv(const DiscrepancyReport& rep);

/// One JSON object per row, same fields, plus nothing else.
std::string to_jsonl(const DiscrepancyReport& rep);

/// Writes bytes to path ("-" = stdout); failures raise resource_error.
void write_output(const std::string& path, const std::string& bytes);

}  // namespace sievelab
