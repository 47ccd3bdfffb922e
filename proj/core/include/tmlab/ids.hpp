#pragma once

#include <cstdint>

namespace tmlab {

// Transaction identifiers are small non-negative integers chosen by the
// scheduler (scenario code picks ids matching the roles it scripts).
using TxnId = std::int32_t;
// Processes are numbered 1..n; a process runs at most one live transaction.
using ProcessId = std::int32_t;
// T-objects X_1..X_L are numbered from 1.
using TObjectId = std::int32_t;
// Base objects are numbered from 0; layout is chosen by each TM.
using BaseObjectId = std::int64_t;

inline constexpr TxnId kNoTxn = -1;

}  // namespace tmlab
