#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tmlab/annotated_run.hpp"
#include "tmlab/execution.hpp"

namespace tmlab {

// Pattern indices are positions within E|k (the transaction's own event
// subsequence), so interleaving foreign events never changes a report.
// `op` is the 0-based ordinal of the enclosing t-operation, -1 if the
// fragment carries no invocations.
struct RawPattern {
  std::size_t i = 0;  // the write
  std::size_t j = 0;  // the read
  BaseObjectId write_base = 0;
  BaseObjectId read_base = 0;
  int op_i = -1;
  int op_j = -1;

  bool operator==(const RawPattern&) const = default;
};

struct AwarPattern {
  std::size_t i = 0;
  BaseObjectId base = 0;
  int op = -1;

  bool operator==(const AwarPattern&) const = default;
};

// A write for clause (1) is any nontrivial event on its base object; a read
// for clause (2) is any event whose response function depends on the
// pre-state. AWAR-shaped events count as both.
std::vector<RawPattern> find_raw(std::span<const Event> pi, TxnId k);
std::vector<AwarPattern> find_awar(std::span<const Event> pi, TxnId k);

struct OpKey {
  TxnId txn = kNoTxn;
  int op = -1;
  auto operator<=>(const OpKey&) const = default;
};

struct PatternReport {
  std::map<TxnId, std::vector<RawPattern>> raws;
  std::map<TxnId, std::vector<AwarPattern>> awars;

  std::size_t raw_count(TxnId k) const;
  std::size_t awar_count(TxnId k) const;
  std::size_t total(TxnId k) const { return raw_count(k) + awar_count(k); }
  // Patterns fully contained in one t-operation (both endpoints for RAW).
  std::size_t within_op(TxnId k, int op) const;
  std::string render() const;  // RAW/AWAR lines
};

PatternReport pattern_report(const Execution& e);

// Every nontrivial event of every read-only transaction.
std::vector<std::pair<TxnId, std::size_t>> invisible_reads_violations(const Execution& e);

struct ContentionPair {
  std::size_t i = 0;
  std::size_t j = 0;
  BaseObjectId base = 0;

  bool operator==(const ContentionPair&) const = default;
};

// Pairs of events of different transactions on the same base object with at
// least one nontrivial.
std::vector<ContentionPair> contentions(const Execution& e);

struct DapViolation {
  enum class Kind : std::uint8_t { strict, weak };

  Kind kind = Kind::strict;
  TxnId t1 = kNoTxn;
  TxnId t2 = kNoTxn;
  BaseObjectId base = 0;
  std::size_t i = 0;           // strict: contending event indices
  std::size_t j = 0;
  std::size_t prefix_len = 0;  // weak: prefix after which both are poised

  std::string render() const;  // SDAP-VIOLATION / WDAP-VIOLATION line
};

// Contention pairs whose transactions have disjoint data sets.
std::vector<DapViolation> check_strict_dap(const Execution& e);

struct ConflictGraph {
  std::set<TxnId> tau;  // transactions concurrent to t1 or t2, plus both
  std::set<TObjectId> vertices;
  std::set<std::pair<TObjectId, TObjectId>> edges;  // normalized first<second

  bool has_path(const std::set<TObjectId>& from, const std::set<TObjectId>& to) const;
};

ConflictGraph conflict_graph(const Execution& e, TxnId t1, TxnId t2);

// No conflict-graph path between the two data sets (a shared t-object is a
// zero-length path).
bool disjoint_access(const Execution& e, TxnId t1, TxnId t2);

// Scans every annotated prefix for pairs poised to apply contending events
// on a common base object while disjoint-access. Throws std::invalid_argument
// if the run lacks poised annotations.
std::vector<DapViolation> check_weak_dap(const AnnotatedRun& run);

}  // namespace tmlab
