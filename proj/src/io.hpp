#pragma once

// Field files and result records.  A field is stored as a pair of files:
// <base>.json (text header: n, N, kind, layout) and <base>.f64 (raw
// little-endian 8-byte floats in layout order, re/im pairs when complex).

#include <string>
#include <vector>

#include "continuity.hpp"

namespace fcy {

struct RunConfig;

struct StoredField {
  GridSpec grid;
  bool is_real = true;
  std::vector<double> raw;  // values, interleaved re/im when complex
};

void write_field(const std::string& basepath, const RealField& f);
void write_field(const std::string& basepath, const ComplexField& f);
void write_field(const std::string& basepath, const StoredField& f);
StoredField read_field(const std::string& basepath);
RealField to_real_field(const StoredField& stored);

// Extra scalar outputs appended to a record (e.g. recovery error).
using RecordExtras = std::vector<std::pair<std::string, double>>;

// Self-describing result record: version, full config echo, seed, result
// block, timestamp.  Identical for identical (config, seed) up to the
// timestamp field.
std::string result_record_json(const RunConfig& cfg, const SolveResult& result,
                               const RecordExtras& extras = {});

// Convergence history as CSV with header t,iter,residual_sup,min_eig,constant.
std::string history_csv(const SolveResult& result);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Aggregates result records (*.json with a version field) found in a
// directory into a summary CSV; returns the CSV text.
std::string aggregate_records(const std::string& dir);

namespace checks {
struct SelfTestReport;
struct EquivalenceReport;
}  // namespace checks

std::string selftest_report_json(const checks::SelfTestReport& rep);
std::string equivalence_report_json(const checks::EquivalenceReport& rep);

}  // namespace fcy
