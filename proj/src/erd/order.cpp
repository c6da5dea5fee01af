#include "eduassist/erd/order.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace eduassist::erd {

namespace {

std::string describe_cycle(const std::vector<std::string>& cycle)
{
    std::string s = "cyclic reference dependency: ";
    for (const auto& n : cycle)
        s += n + " -> ";
    s += cycle.empty() ? std::string() : cycle.front();
    return s;
}

} // namespace

CyclicDependency::CyclicDependency(std::vector<std::string> cycle)
    : std::runtime_error(describe_cycle(cycle)), cycle_(std::move(cycle))
{
}

std::vector<std::string> topo_order(const ErdModel& model)
{
    const std::size_t n = model.entities.size();

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i)
        index.emplace(model.entities[i].name, i);

    // depends_on[i]: entities i references. dependents[j]: entities referencing j.
    std::vector<std::set<std::size_t>> depends_on(n), dependents(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& a : model.entities[i].attributes) {
            if (!a.ref)
                continue;
            auto it = index.find(a.ref->entity);
            if (it == index.end() || it->second == i)
                continue;
            depends_on[i].insert(it->second);
            dependents[it->second].insert(i);
        }
    }

    std::vector<std::size_t> indegree(n);
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i) {
        indegree[i] = depends_on[i].size();
        if (indegree[i] == 0)
            ready.push(i);
    }

    std::vector<std::string> order;
    order.reserve(n);
    while (!ready.empty()) {
        const std::size_t i = ready.top();
        ready.pop();
        order.push_back(model.entities[i].name);
        for (std::size_t j : dependents[i])
            if (--indegree[j] == 0)
                ready.push(j);
    }

    if (order.size() == n)
        return order;

    // Every leftover entity still references another leftover one, so
    // following references from any of them must revisit a node.
    std::size_t start = 0;
    while (indegree[start] == 0)
        ++start;
    std::vector<std::size_t> path;
    std::vector<std::size_t> pos_in_path(n, n);
    std::size_t cur = start;
    while (pos_in_path[cur] == n) {
        pos_in_path[cur] = path.size();
        path.push_back(cur);
        for (std::size_t next : depends_on[cur]) {
            if (indegree[next] > 0) {
                cur = next;
                break;
            }
        }
    }
    std::vector<std::string> cycle;
    for (std::size_t k = pos_in_path[cur]; k < path.size(); ++k)
        cycle.push_back(model.entities[path[k]].name);
    throw CyclicDependency(std::move(cycle));
}

} // namespace eduassist::erd
