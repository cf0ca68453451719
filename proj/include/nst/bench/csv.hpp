#pragma once

#include <cinttypes>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "nst/bench/experiment.hpp"
#include "nst/core/errors.hpp"

namespace nst {
namespace csv {

/// 17 significant digits: enough to round-trip any double, few enough to be
/// byte-stable across runs.
inline std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

inline std::string format_optional(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

/// RFC-4180 quoting: fields containing a comma, quote, or line break are
/// wrapped in double quotes with inner quotes doubled.
inline std::string escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline std::string render_trials(const std::vector<TrialRecord>& records) {
  std::string out =
      "algorithm,s,eps,trial,seed,rel_error,iterations,wall_time_s,termination,success\n";
  char buf[64];
  for (const TrialRecord& rec : records) {
    out += escape(rec.algorithm);
    std::snprintf(buf, sizeof buf, ",%d,", rec.s);
    out += buf;
    out += format_double(rec.eps);
    std::snprintf(buf, sizeof buf, ",%d,%" PRIu64 ",", rec.trial_index, rec.seed);
    out += buf;
    out += format_double(rec.rel_error);
    std::snprintf(buf, sizeof buf, ",%d,", rec.iterations);
    out += buf;
    out += format_double(rec.wall_time_s);
    out += ',';
    out += escape(rec.termination);
    out += rec.success ? ",true\n" : ",false\n";
  }
  return out;
}

inline std::string render_aggregate(const std::vector<AggregateRow>& rows) {
  std::string out =
      "algorithm,s,s_over_n,eps,kappa,mean_rel_error,success_freq,mean_iters,"
      "mean_time_s,median_time_s\n";
  char buf[32];
  for (const AggregateRow& row : rows) {
    out += escape(row.algorithm);
    std::snprintf(buf, sizeof buf, ",%d,", row.s);
    out += buf;
    out += format_double(row.s_over_n);
    out += ',';
    out += format_optional(row.eps);
    out += ',';
    out += format_optional(row.kappa);
    out += ',';
    out += format_double(row.mean_rel_error);
    out += ',';
    out += format_double(row.success_freq);
    out += ',';
    out += format_double(row.mean_iters);
    out += ',';
    out += format_optional(row.mean_time_s);
    out += ',';
    out += format_optional(row.median_time_s);
    out += '\n';
  }
  return out;
}

inline std::string render_trace(const std::vector<TraceRow>& rows) {
  std::string out = "algorithm,s,trial,iteration,rel_error\n";
  char buf[48];
  for (const TraceRow& row : rows) {
    out += escape(row.algorithm);
    std::snprintf(buf, sizeof buf, ",%d,%d,%d,", row.s, row.trial_index, row.iteration);
    out += buf;
    out += format_double(row.rel_error);
    out += '\n';
  }
  return out;
}

}  // namespace csv

/// Writes the whole buffer in one shot (binary mode, LF endings). On any
/// failure the partial file is removed before IoError is thrown, so callers
/// never observe a half-written output.
inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    out.close();
    std::remove(path.c_str());
    throw IoError("write failed: " + path);
  }
}

}  // namespace nst
