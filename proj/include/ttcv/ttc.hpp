#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ttcv/matrix.hpp"
#include "ttcv/prefs.hpp"

namespace ttcv {

struct TtcRound {
  std::vector<AgentId> remaining;
  std::vector<std::pair<AgentId, AgentId>> edges;  // i points at the owner of i's top remaining object
  std::vector<AgentId> cycle;                      // in pointing order
  std::vector<std::pair<AgentId, ObjectId>> assigned;
};

struct TtcTrace {
  std::vector<TtcRound> rounds;
};

// Top Trading Cycles with agent i endowed with object i. Each round removes
// one cycle of the pointing graph: the one containing the lowest-indexed
// agent that lies on any cycle.
DeterministicAssignment ttc(const Profile& profile, TtcTrace* trace = nullptr);

/// TTC where agent i owns endowment[i]. Relabels so the identity convention
/// holds internally and maps the result back to the caller's object ids.
DeterministicAssignment ttc_with_endowment(const Profile& profile, const DeterministicAssignment& endowment,
                                           TtcTrace* trace = nullptr);

/// Variant that removes every cycle of the pointing graph in each round.
DeterministicAssignment ttc_all_cycles(const Profile& profile);

}  // namespace ttcv
