#include "ttcv/ttc.hpp"

#include <stdexcept>

namespace ttcv {

namespace {

// Owner of each agent's favourite object among those still present.
std::vector<AgentId> pointers(const Profile& profile, const std::vector<char>& present) {
  const int n = profile.size();
  std::vector<AgentId> to(n, -1);
  for (AgentId i = 0; i < n; ++i) {
    if (!present[i]) continue;
    for (ObjectId x : profile[i].ranking()) {
      if (present[x]) {
        to[i] = x;
        break;
      }
    }
  }
  return to;
}

// Cycle through the functional graph starting from `start`, or empty.
std::vector<AgentId> cycle_through(const std::vector<AgentId>& to, AgentId start) {
  std::vector<AgentId> cycle{start};
  for (AgentId a = to[start]; a != start; a = to[a]) {
    if (static_cast<int>(cycle.size()) > static_cast<int>(to.size())) return {};
    cycle.push_back(a);
  }
  return cycle;
}

std::vector<char> on_cycle(const std::vector<AgentId>& to, const std::vector<char>& present) {
  const int n = static_cast<int>(to.size());
  std::vector<char> mark(n, 0);
  for (AgentId i = 0; i < n; ++i) {
    if (!present[i] || mark[i]) continue;
    // Walk n steps to land on the cycle reached from i, then mark it.
    AgentId a = i;
    for (int s = 0; s < n; ++s) a = to[a];
    for (AgentId b = a;;) {
      mark[b] = 1;
      b = to[b];
      if (b == a) break;
    }
  }
  return mark;
}

}  // namespace

DeterministicAssignment ttc(const Profile& profile, TtcTrace* trace) {
  const int n = profile.size();
  std::vector<char> present(n, 1);
  std::vector<ObjectId> assign(n, -1);
  int left = n;
  while (left > 0) {
    auto to = pointers(profile, present);
    auto mark = on_cycle(to, present);
    AgentId first = 0;
    while (!mark[first]) ++first;
    auto cycle = cycle_through(to, first);

    TtcRound round;
    if (trace) {
      for (AgentId i = 0; i < n; ++i) {
        if (!present[i]) continue;
        round.remaining.push_back(i);
        round.edges.emplace_back(i, to[i]);
      }
      round.cycle = cycle;
    }
    for (AgentId i : cycle) {
      assign[i] = to[i];
      if (trace) round.assigned.emplace_back(i, to[i]);
    }
    for (AgentId i : cycle) present[i] = 0;
    left -= static_cast<int>(cycle.size());
    if (trace) trace->rounds.push_back(std::move(round));
  }
  return DeterministicAssignment(std::move(assign));
}

DeterministicAssignment ttc_with_endowment(const Profile& profile, const DeterministicAssignment& endowment,
                                           TtcTrace* trace) {
  const int n = profile.size();
  if (endowment.size() != n) throw std::invalid_argument("endowment size does not match profile");
  // Internal object i is the caller's endowment[i].
  std::vector<ObjectId> to_internal(n);
  for (AgentId i = 0; i < n; ++i) to_internal[endowment[i]] = i;
  std::vector<Preference> prefs;
  for (const auto& p : profile.prefs()) {
    std::vector<ObjectId> r;
    for (ObjectId x : p.ranking()) r.push_back(to_internal[x]);
    prefs.emplace_back(std::move(r));
  }
  auto internal = ttc(Profile(std::move(prefs)), trace);
  if (trace) {
    for (auto& round : trace->rounds) {
      for (auto& [agent, object] : round.assigned) object = endowment[object];
    }
  }
  std::vector<ObjectId> out(n);
  for (AgentId i = 0; i < n; ++i) out[i] = endowment[internal[i]];
  return DeterministicAssignment(std::move(out));
}

DeterministicAssignment ttc_all_cycles(const Profile& profile) {
  const int n = profile.size();
  std::vector<char> present(n, 1);
  std::vector<ObjectId> assign(n, -1);
  int left = n;
  while (left > 0) {
    auto to = pointers(profile, present);
    auto mark = on_cycle(to, present);
    for (AgentId i = 0; i < n; ++i) {
      if (!mark[i]) continue;
      assign[i] = to[i];
      present[i] = 0;
      --left;
    }
  }
  return DeterministicAssignment(std::move(assign));
}

}  // namespace ttcv
