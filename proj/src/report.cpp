#include "sievelab/report.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace sievelab {

Rat Rat::parse(const std::string& s) {
  // "p" or "p/q", optional leading '-' on p; anything else is rejected so a
  // float sneaking in through a flag fails loudly instead of rounding.
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit((unsigned char)t[i])) return false;
    return true;
  };
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) throw domain_error("");
      return Rat(std::stoll(s));
    }
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!is_int(p) || !is_int(q)) throw domain_error("");
    return Rat(std::stoll(p), std::stoll(q));
  } catch (const std::exception&) {
    throw domain_error("Rat::parse: expected \"p\" or \"p/q\", got \"" + s +
                       "\"");
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_csv(const DiscrepancyReport& rep) {
  std::string out = "q,count,main_term_num,main_term_den,discrepancy_float,weight\n";
  for (const ReportRow& r : rep.rows) {
    out += std::to_string(r.q);
    out += ',';
    out += std::to_string(r.count);
    out += ',';
    out += std::to_string(r.main_num);
    out += ',';
    out += std::to_string(r.main_den);
    out += ',';
    out += fmt_double(r.discrepancy);
    out += ',';
    out += r.weight.str();
    out += '\n';
  }
  return out;
}

std::string to_jsonl(const DiscrepancyReport& rep) {
  std::string out;
  for (const ReportRow& r : rep.rows) {
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["count"] = r.count;
    j["main_term_num"] = r.main_num;
    j["main_term_den"] = r.main_den;
    j["discrepancy_float"] = fmt_double(r.discrepancy);
    j["weight"] = r.weight.str();
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw resource_error("cannot open output file: " + path);
  f << bytes;
  if (!f) throw resource_error("write failed: " + path);
}

}  // namespace sievelab
