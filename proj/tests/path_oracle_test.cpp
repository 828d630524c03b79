#include "dag_oracle.hpp"

#include <gtest/gtest.h>

#include <chrono>

namespace ucm {
namespace {

TEST(PathOracle, RandomDagsMatchBruteForce)
{
    std::mt19937 rng(20240611);
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 200; ++i)
    {
        const auto g = testing::randomDag(rng);
        ASSERT_LE(g.nodes().size(), 12u);
        ASSERT_LE(g.edges().size(), 20u);
        ASSERT_TRUE(findInvocationCycle(g).empty());
        for (const auto& target : g.nodes())
        {
            const auto got = enumeratePaths(g, target);
            ASSERT_TRUE(got.ok());
            ASSERT_EQ(testing::asSequences(got.value), testing::bruteForcePaths(g, target))
                << "graph " << i << " target " << target;
            ASSERT_TRUE(std::is_sorted(got.value.begin(), got.value.end()));
        }
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_LT(std::chrono::duration<double>(elapsed).count(), 5.0);
}

TEST(PathOracle, BetweenAgreesWithRootedEnumeration)
{
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i)
    {
        const auto g = testing::randomDag(rng);
        for (const auto& target : g.nodes())
        {
            std::vector<PathRecord> merged;
            for (const auto& root : g.roots())
            {
                const auto part = enumeratePathsBetween(g, root, target).value;
                merged.insert(merged.end(), part.begin(), part.end());
            }
            std::sort(merged.begin(), merged.end());
            EXPECT_EQ(merged, enumeratePaths(g, target).value);
        }
    }
}

} // namespace
} // namespace ucm
