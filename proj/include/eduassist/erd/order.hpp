#pragma once

#include "eduassist/erd/model.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace eduassist::erd {

class CyclicDependency : public std::runtime_error {
public:
    explicit CyclicDependency(std::vector<std::string> cycle);

    // Entity names along one cycle; each entry references the next and the
    // last references the first.
    const std::vector<std::string>& cycle() const noexcept { return cycle_; }

private:
    std::vector<std::string> cycle_;
};

// Kahn's algorithm over the ref graph: every referenced entity precedes its
// referencers. Among ready entities the earliest declared goes first, so the
// result is the lexicographically smallest valid order by declaration index.
// Self-references impose no ordering. Expects a validated model.
std::vector<std::string> topo_order(const ErdModel& model);

} // namespace eduassist::erd
