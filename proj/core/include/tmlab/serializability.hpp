#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmlab/execution.hpp"

namespace tmlab {

// A completion of H: pending read/write operations abort, each pending
// tryCommit resolves to C or A, and complete-but-not-t-complete transactions
// get tryC . A_k appended. Insertions are canonicalized to the end of the
// history; the per-transaction projections (and hence the verdict) do not
// depend on the insertion position.
struct Completion {
  History history;  // the completed history H-bar
  std::vector<TxnId> pending_ops_aborted;     // pending read/write -> A_k
  std::map<TxnId, bool> trycommit_committed;  // pending tryC: true -> C_k
  std::vector<TxnId> trycommit_appended;      // complete-but-not-t-complete
};

std::vector<Completion> enumerate_completions(const History& h);

// Subsequence of a t-complete history reduced to committed transactions.
History committed_projection(const History& hbar);

// The latest written value visible to the read at `read_index` in the
// t-sequential history s. Case (1): the latest preceding write within the
// same transaction; case (2): the latest write to X by the latest committed
// transaction preceding T_k; the imaginary initial transaction supplies
// `initial` when no such write exists.
Value latest_written_value(const History& s, std::size_t read_index,
                           Value initial = 0);

// Every read that does not return A_k returns the latest written value.
bool is_legal_tsequential(const History& s);

struct CheckBounds {
  std::size_t max_txns = 10;
  std::uint64_t max_orders = 1'000'000;
};

struct SerializationWitness {
  std::vector<TxnId> order;  // committed transactions, serialization order
  Completion completion;
  History serialization;  // S: the witness t-sequential history
};

struct ExhaustionCertificate {
  std::uint64_t completions_examined = 0;
  std::uint64_t orders_examined = 0;
};

struct SerializationVerdict {
  enum class Outcome : std::uint8_t { serializable, not_serializable, bound_exceeded };

  Outcome outcome = Outcome::not_serializable;
  std::optional<SerializationWitness> witness;  // serializable only
  ExhaustionCertificate exhaustion;

  bool serializable() const { return outcome == Outcome::serializable; }
  // "VERDICT ..." plus a WITNESS or EXHAUSTED line.
  std::string report() const;
};

// Brute-force strict serializability: searches every completion and every
// total order of committed transactions extending the real-time partial
// order of H. Deterministic: the all-commit completion is tried first and
// orders are enumerated lexicographically by transaction id.
SerializationVerdict check_strict_serializability(const History& h,
                                                  const CheckBounds& bounds = {});

// Lays out the committed transactions of the completion t-sequentially in
// the given order (helper shared with the witness and the tests).
History lay_out_serialization(const Completion& c, const std::vector<TxnId>& order);

}  // namespace tmlab
