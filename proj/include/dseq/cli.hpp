#pragma once

#include "dseq/convergence.hpp"
#include "dseq/double_seq.hpp"
#include "dseq/matrix4d.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dseq::cli {

struct SequenceDef {
  std::string name;
  FamilySpec family;
  std::size_t rows = 16;
  std::size_t cols = 16;
  /// Grid read from a CSV file instead of a family.
  std::optional<std::string> csv;
  bool seed_given = false;
};

struct MatrixDef {
  std::string name;
  MatrixSpec spec;
  bool seed_given = false;
};

struct JobDef {
  std::string id;
  std::string command;
  std::vector<std::string> args;
  /// Optional CSV export of the job's output grid.
  std::optional<std::string> csv;
};

struct CommandInfo {
  std::string name;
  /// Argument pattern, e.g. "SEQ SPACE [Q]". SEQ and MATRIX name config entries; a trailing "..." repeats.
  std::string usage;
};

const std::vector<CommandInfo>& commands();
const CommandInfo& find_command(const std::string& name);

struct JobConfig {
  std::vector<SequenceDef> sequences;
  std::vector<MatrixDef> matrices;
  DetectParams detect;
  Mode mode = Mode::exact;
  std::vector<JobDef> jobs;
  unsigned threads = 1;

  /// INI text: [detect], [sequence.NAME], [matrix.NAME], [job.ID] sections.
  static JobConfig parse(std::istream& in);
  static JobConfig load(const std::string& path);
  /// Every command is known, argument counts fit and every referenced name is defined.
  void validate() const;
};

struct Overrides {
  std::optional<Mode> mode;
  std::optional<double> epsilon;
  std::optional<std::size_t> window;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> size;
  std::optional<unsigned> threads;
  bool timestamp = false;

  void apply(JobConfig& cfg) const;
};

struct Summary {
  /// Records without a verdict, such as grid exports.
  std::size_t ok = 0;
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t inconclusive = 0;
  std::size_t unsupported = 0;
  std::size_t errors = 0;
};

struct Report {
  std::string id;
  std::optional<std::string> timestamp;
  /// One per job or check, each with a "status" field.
  std::vector<nlohmann::json> records;

  Summary summary() const;
  /// Header line, one line per record, summary line.
  std::string to_jsonl() const;
  std::string human_summary() const;
};

struct RunResult {
  int exit_code = 0;
  Report report;
};

/// 0 when nothing failed, 1 on any Fails, 2 on any error.
int exit_code_for(const Summary& s);

RunResult run(const JobConfig& cfg, const std::string& id = "run");
RunResult run_file(const std::string& path, const Overrides& overrides);

std::vector<std::string> verify_suites();
RunResult verify(const std::string& suite, std::size_t size, std::uint64_t seed, Mode mode = Mode::exact,
                 unsigned threads = 1);

template <class S>
nlohmann::json to_json(const Verdict<S>& v);
template <class S>
nlohmann::json to_json(const ClassReport<S>& r);

/// Full command line entry; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace dseq::cli
