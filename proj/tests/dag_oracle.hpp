// Random DAG generation and a brute-force path oracle, shared by the
// property test and the acceptance binary.
#pragma once

#include "ucm/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace ucm::testing {

/// Random multigraph DAG: a hidden topological order decides edge direction,
/// node names are shuffled so they carry no order information.
inline InvocationGraph randomDag(std::mt19937& rng, int maxNodes = 12, int maxEdges = 20)
{
    const int n = std::uniform_int_distribution<int>(1, maxNodes)(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
        names.push_back("U" + std::to_string(i));
    std::vector<int> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    std::shuffle(rank.begin(), rank.end(), rng);

    std::vector<InvocationEdge> edges;
    const int m = n < 2 ? 0 : std::uniform_int_distribution<int>(0, maxEdges)(rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int e = 0; e < m; ++e)
    {
        int a = pick(rng);
        int b = pick(rng);
        if (a == b)
            continue;
        if (rank[a] > rank[b])
            std::swap(a, b);
        edges.push_back({names[a], names[b], std::to_string(e + 1), {}});
    }
    return InvocationGraph(names, edges);
}

/// Every simple path from any root to `target`, found by exhaustive forward
/// search over edge lists. Parallel edges give distinct paths.
inline std::vector<std::vector<std::string>> bruteForcePaths(const InvocationGraph& g, const std::string& target)
{
    std::vector<std::string> roots;
    for (const auto& n : g.nodes())
    {
        const bool hasIncoming = std::any_of(g.edges().begin(), g.edges().end(),
                                             [&](const InvocationEdge& e) { return e.callee == n; });
        if (!hasIncoming)
            roots.push_back(n);
    }

    std::vector<std::vector<std::string>> found;
    std::vector<std::string> stack;
    auto walk = [&](auto&& self, const std::string& node) -> void {
        if (std::find(stack.begin(), stack.end(), node) != stack.end())
            return;
        stack.push_back(node);
        if (node == target)
            found.push_back(stack);
        for (const auto& e : g.edges())
            if (e.caller == node)
                self(self, e.callee);
        stack.pop_back();
    };
    for (const auto& r : roots)
        walk(walk, r);
    std::sort(found.begin(), found.end());
    return found;
}

inline std::vector<std::vector<std::string>> asSequences(const std::vector<PathRecord>& paths)
{
    std::vector<std::vector<std::string>> out;
    for (const auto& p : paths)
        out.push_back(p.useCases);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ucm::testing
