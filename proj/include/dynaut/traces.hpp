#pragma once

// Trace corpora and the plan-filtering harness.
//
// Corpus files hold one trace per line as a JSON array of letters, each letter
// an array of atom names, optionally wrapped as {"id": ..., "trace": [...]}.
// Blank lines and lines starting with `#` are ignored.

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dynaut/formula.hpp"
#include "dynaut/semantics.hpp"

namespace dynaut {

struct CorpusEntry {
  std::string id;
  Trace trace;

  friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

/// Ordered traces with unique ids.
class TraceCorpus {
 public:
  TraceCorpus() = default;

  /// Throws InputError on a duplicate id.
  void add(std::string id, Trace trace);
  const std::vector<CorpusEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const CorpusEntry& operator[](std::size_t i) const { return entries_[i]; }
  std::vector<std::string> ids() const;

  friend bool operator==(const TraceCorpus&, const TraceCorpus&) = default;

 private:
  std::vector<CorpusEntry> entries_;
};

/// Throws InputError naming the offending line.
TraceCorpus read_traces(std::istream& in);
TraceCorpus read_traces_file(const std::string& path);
/// Always writes the wrapped form, one record per line.
void write_traces(const TraceCorpus& c, std::ostream& out);

enum class Backend { Oracle, Afw, Dfa };

std::optional<Backend> parse_backend(const std::string& name);
std::string backend_name(Backend b);

struct Verdict {
  std::string id;
  bool accepted = false;
  /// DFA backend only: first letter after which the trace cannot be accepted.
  std::optional<std::size_t> first_failure;
};

struct FilterReport {
  Backend backend = Backend::Oracle;
  std::size_t total = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<Verdict> verdicts;
  /// Compilation plus checking.
  std::chrono::duration<double> wall_time{0};
};

struct FilterResult {
  TraceCorpus accepted;
  FilterReport report;
};

/// Checks every trace with `backend`; `jobs` worker threads share the
/// compiled automaton. Order of the result follows the corpus.
FilterResult filter_traces(const Formula& f, const TraceCorpus& c, Backend backend, std::size_t jobs = 1);

}  // namespace dynaut
