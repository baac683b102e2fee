#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tielab/errors.hpp"

namespace tielab {

// Shortest round-trip-exact decimal form.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

// A CDF sampled on a grid, with truncation diagnostics and metadata.
struct DistributionTable {
  std::vector<double> arg;  // strictly increasing knots (integers for lattice laws)
  std::vector<double> cdf;  // Prob(X <= arg[i])
  bool integer_arg = true;
  double tail_bound = 0.0;  // certified bound on mass not represented by the table
  std::vector<std::pair<std::string, std::string>> meta;

  void validate() const {
    require(!arg.empty() && arg.size() == cdf.size(), "distribution table is empty or ragged");
    for (std::size_t i = 0; i + 1 < arg.size(); ++i) {
      require(arg[i] < arg[i + 1], "table knots must strictly increase");
      require(cdf[i] <= cdf[i + 1] + 1e-12, "table cdf must be nondecreasing");
    }
    for (double v : cdf)
      require(v >= -1e-12 && v <= 1.0 + tail_bound + 1e-9, "table cdf out of [0,1]");
  }

  // Evaluate at x: step interpolation on integer lattices, linear otherwise.
  double at(double x) const {
    if (x < arg.front()) return integer_arg ? 0.0 : cdf.front();
    if (x >= arg.back()) return cdf.back();
    auto it = std::upper_bound(arg.begin(), arg.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - arg.begin());
    std::size_t lo = hi - 1;
    if (integer_arg) return cdf[lo];
    double t = (x - arg[lo]) / (arg[hi] - arg[lo]);
    return cdf[lo] + t * (cdf[hi] - cdf[lo]);
  }

  // pmf on the integer knots (requires integer_arg); mass below the first
  // knot is attributed to the first knot.
  std::map<long long, double> pmf() const {
    require(integer_arg, "pmf extraction needs an integer lattice table");
    std::map<long long, double> out;
    double prev = 0.0;
    for (std::size_t i = 0; i < arg.size(); ++i) {
      long long k = static_cast<long long>(std::llround(arg[i]));
      out[k] = cdf[i] - prev;
      prev = cdf[i];
    }
    return out;
  }
};

inline void write_table_csv(const std::string& path, const DistributionTable& table) {
  table.validate();
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open output file: " + path);
  for (auto& kv : table.meta) out << "# " << kv.first << ": " << kv.second << "\n";
  out << "# tail_bound: " << format_g17(table.tail_bound) << "\n";
  out << (table.integer_arg ? "k,cdf" : "s,F") << "\n";
  for (std::size_t i = 0; i < table.arg.size(); ++i) {
    if (table.integer_arg)
      out << static_cast<long long>(std::llround(table.arg[i]));
    else
      out << format_g17(table.arg[i]);
    out << "," << format_g17(table.cdf[i]) << "\n";
  }
  require(out.good(), "write failed: " + path);
}

inline DistributionTable read_table_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open input file: " + path);
  DistributionTable t;
  t.integer_arg = true;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto colon = line.find(':');
      if (colon != std::string::npos) {
        std::string key = line.substr(1, colon - 1);
        std::string val = line.substr(colon + 1);
        auto trim = [](std::string& s) {
          while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
          while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
        };
        trim(key);
        trim(val);
        if (key == "tail_bound")
          t.tail_bound = std::stod(val);
        else
          t.meta.emplace_back(key, val);
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      if (line.substr(0, 2) == "s," || line.substr(0, 2) == "x,") t.integer_arg = false;
      continue;
    }
    auto comma = line.find(',');
    require(comma != std::string::npos, "malformed table row: " + line);
    double a = std::stod(line.substr(0, comma));
    double c = std::stod(line.substr(comma + 1));
    if (t.integer_arg && a != std::floor(a)) t.integer_arg = false;
    t.arg.push_back(a);
    t.cdf.push_back(c);
  }
  t.validate();
  return t;
}

// One Monte-Carlo record of the longest path and its shifted first part.
struct SampleRow {
  long long index;
  long long L;
  long long kappa1;
  long long lambda1;
};

inline void write_samples_csv(const std::string& path, const std::vector<SampleRow>& rows,
                              const std::vector<std::pair<std::string, std::string>>& meta) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open output file: " + path);
  for (auto& kv : meta) out << "# " << kv.first << ": " << kv.second << "\n";
  out << "sample_index,L,kappa1,lambda1\n";
  for (const auto& r : rows)
    out << r.index << "," << r.L << "," << r.kappa1 << "," << r.lambda1 << "\n";
  require(out.good(), "write failed: " + path);
}

inline std::vector<SampleRow> read_samples_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open input file: " + path);
  std::vector<SampleRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    SampleRow r{};
    char* end = nullptr;
    const char* p = line.c_str();
    r.index = std::strtoll(p, &end, 10);
    require(*end == ',', "malformed sample row: " + line);
    r.L = std::strtoll(end + 1, &end, 10);
    require(*end == ',', "malformed sample row: " + line);
    r.kappa1 = std::strtoll(end + 1, &end, 10);
    require(*end == ',', "malformed sample row: " + line);
    r.lambda1 = std::strtoll(end + 1, &end, 10);
    rows.push_back(r);
  }
  require(!rows.empty(), "no sample rows in " + path);
  return rows;
}

}  // namespace tielab
