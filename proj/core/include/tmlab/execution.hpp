#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmlab/configuration.hpp"
#include "tmlab/event.hpp"
#include "tmlab/ids.hpp"

namespace tmlab {

struct MalformedError : std::runtime_error {
  explicit MalformedError(const std::string& what,
                          std::size_t event_index = static_cast<std::size_t>(-1))
      : std::runtime_error(what), event_index(event_index) {}
  std::size_t event_index;  // offending event, if known
};

enum class TxnStatus : std::uint8_t { live, committed, aborted };
enum class TxnClass : std::uint8_t { read_only, write_only, updating };

struct TxnRecord {
  TxnId id = kNoTxn;
  std::set<TObjectId> rset;
  std::set<TObjectId> wset;
  TxnStatus status = TxnStatus::live;
  bool complete = false;    // last event is a response
  bool t_complete = false;  // last event is A_k or C_k
  std::size_t first_event = 0;
  std::size_t last_event = 0;
  std::size_t op_count = 0;

  std::set<TObjectId> dset() const;
  TxnClass classification() const;
  bool read_only() const { return wset.empty(); }
};

// The t-operation subsequence of an execution. Also parsed directly from
// history files.
class History {
 public:
  History() = default;
  explicit History(std::vector<TOpEvent> events);

  const std::vector<TOpEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  const std::map<TxnId, TxnRecord>& txns() const { return records_; }
  const TxnRecord& record(TxnId k) const;
  bool participates(TxnId k) const { return records_.count(k) != 0; }

  std::vector<TOpEvent> project(TxnId k) const;

  // Throws MalformedError if per-transaction projections are not sequential
  // or extend past A_k/C_k.
  void validate() const;

  bool operator==(const History&) const = default;

 private:
  std::vector<TOpEvent> events_;
  std::map<TxnId, TxnRecord> records_;
};

// A validated sequence of events. Construction replays every RMW response
// against the initial configuration and rejects mismatches.
class Execution {
 public:
  Execution() = default;

  // `initial` supplies declared base-object initial values (anything not
  // declared starts at 0). Throws MalformedError on any violation.
  static Execution from_events(std::vector<Event> events,
                               const Configuration& initial = Configuration{});

  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  const std::map<TxnId, TxnRecord>& txns() const { return records_; }
  const TxnRecord& record(TxnId k) const;
  bool participates(TxnId k) const { return records_.count(k) != 0; }

  // E|k: the subsequence of events of transaction k, original order.
  std::vector<Event> project(TxnId k) const;
  const std::vector<std::size_t>& projection_index(TxnId k) const;

  const Configuration& final_config() const { return final_config_; }
  const Configuration& initial_config() const { return initial_config_; }

  History export_history() const;

 private:
  std::vector<Event> events_;
  std::map<TxnId, TxnRecord> records_;
  std::map<TxnId, std::vector<std::size_t>> proj_;
  Configuration initial_config_;
  Configuration final_config_;
  static const std::vector<std::size_t> kEmptyIndex;
};

// Real-time order: a precedes b iff a is t-complete and a's last event is
// before b's first. Throws std::out_of_range for unknown transactions.
bool real_time_precedes(const History& h, TxnId a, TxnId b);
bool concurrent(const History& h, TxnId a, TxnId b);

// Same order over full executions (first/last positions include RMW events).
bool real_time_precedes(const Execution& e, TxnId a, TxnId b);
bool concurrent(const Execution& e, TxnId a, TxnId b);

// Step contention freedom: the scoped events are contiguous in E.
bool is_step_contention_free(const Execution& e);             // every txn
bool is_step_contention_free(const Execution& e, TxnId k);    // one txn
// One t-operation of txn k, identified by its 0-based ordinal within E|k's
// t-operations (invocation, its RMW events, response).
bool is_step_contention_free_op(const Execution& e, TxnId k, std::size_t op_ordinal);

struct ContentionFlags {
  bool is_quiescent = false;
  bool is_t_quiescent = false;
  bool is_complete = false;
  bool is_t_complete = false;
  bool is_sequential = false;
  bool is_t_sequential = false;
};

ContentionFlags contention_predicates(const Execution& e);
ContentionFlags contention_predicates(const History& h);

// Same transaction sets and identical per-transaction projections.
bool equivalent(const History& a, const History& b);

}  // namespace tmlab
