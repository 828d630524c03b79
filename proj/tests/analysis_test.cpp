#include "test_support.hpp"

#include "ucm/analysis.hpp"

#include <gtest/gtest.h>

namespace ucm {
namespace {

InvocationEdge edge(std::string a, std::string b, std::string at = "1")
{
    return {std::move(a), std::move(b), std::move(at), {}};
}

std::vector<std::string> strs(const std::vector<PathRecord>& paths)
{
    std::vector<std::string> out;
    for (const auto& p : paths)
        out.push_back(p.str());
    return out;
}

TEST(Graph, DropsEdgesToUnknownNodes)
{
    InvocationGraph g({"A", "B"}, {edge("A", "B"), edge("A", "Z")});
    EXPECT_EQ(g.edges().size(), 1u);
    EXPECT_EQ(g.roots(), std::vector<std::string>{"A"});
    EXPECT_EQ(g.outgoing("A").size(), 1u);
    EXPECT_EQ(g.incoming("B").size(), 1u);
    EXPECT_FALSE(g.hasNode("Z"));
}

TEST(Paths, DiamondYieldsTwoSortedPaths)
{
    InvocationGraph g({"A", "B", "C", "D"}, {edge("A", "C"), edge("A", "B"), edge("B", "D"), edge("C", "D")});
    const auto r = enumeratePaths(g, "D");
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(strs(r.value), (std::vector<std::string>{"A -> B -> D", "A -> C -> D"}));
}

TEST(Paths, RootTargetIsItsOwnPath)
{
    InvocationGraph g({"A", "B"}, {edge("A", "B")});
    EXPECT_EQ(strs(enumeratePaths(g, "A").value), std::vector<std::string>{"A"});
}

TEST(Paths, ParallelEdgesCountSeparately)
{
    InvocationGraph g({"A", "B"}, {edge("A", "B", "1"), edge("A", "B", "3")});
    EXPECT_EQ(enumeratePaths(g, "B").value.size(), 2u);
}

TEST(Paths, UnknownTargetHasNoPaths)
{
    InvocationGraph g({"A"}, {});
    const auto r = enumeratePaths(g, "Q");
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.value.empty());
}

TEST(Paths, CycleIsE015WithWitness)
{
    InvocationGraph g({"R", "A", "B"}, {edge("R", "A"), edge("A", "B"), edge("B", "A")});
    const auto r = enumeratePaths(g, "B");
    EXPECT_FALSE(r.ok());
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].code, DiagCode::E015);
    EXPECT_EQ(r.diagnostics[0].related.size(), 2u);
    EXPECT_TRUE(findInvocationCycle(InvocationGraph({"A"}, {})).empty());
}

TEST(Paths, BetweenTwoNodes)
{
    InvocationGraph g({"A", "B", "C"}, {edge("A", "B"), edge("B", "C"), edge("A", "C")});
    const auto r = enumeratePathsBetween(g, "A", "C");
    EXPECT_EQ(strs(r.value), (std::vector<std::string>{"A -> B -> C", "A -> C"}));
    EXPECT_TRUE(enumeratePathsBetween(g, "C", "A").value.empty());
}

TEST(Graph, HandlersAreNotNodes)
{
    const auto m = testing::checkText(testing::kMiniModel).model;
    const auto g = buildInvocationGraph(*m);
    EXPECT_EQ(g.nodes(), (std::vector<std::string>{"Top", "Mid"}));
    ASSERT_EQ(g.edges().size(), 1u);
    EXPECT_EQ(g.edges()[0].atStep, "2");
}

TEST(ExceptionSummary, MiniGlobalView)
{
    const auto m = testing::checkText(testing::kMiniModel).model;
    const auto r = exceptionSummary(*m, ExceptionView::globalView());
    ASSERT_TRUE(r.ok());
    ASSERT_EQ(r.value.size(), 2u);
    const auto& global = r.value[0];
    EXPECT_TRUE(global.isGlobal);
    EXPECT_EQ(global.sourceUseCase, kGlobalSource);
    EXPECT_EQ(global.handlers, std::vector<std::string>{"Reroute"});
    EXPECT_TRUE(global.paths.empty());
    const auto& jam = r.value[1];
    EXPECT_EQ(jam.exception, "HardwareException::Jam");
    EXPECT_EQ(jam.sourceUseCase, "Mid");
    EXPECT_EQ(jam.situation, "Box jams");
    EXPECT_EQ(jam.participatingActors, std::vector<std::string>{"Box"});
    EXPECT_EQ(strs(jam.paths), std::vector<std::string>{"Top -> Mid"});
}

TEST(ExceptionSummary, UseCaseViewReroots)
{
    const auto m = testing::checkText(testing::kMiniModel).model;
    const auto mid = exceptionSummary(*m, ExceptionView::of("Mid"));
    ASSERT_EQ(mid.value.size(), 1u);
    EXPECT_EQ(strs(mid.value[0].paths), std::vector<std::string>{"Mid"});
    const auto top = exceptionSummary(*m, ExceptionView::of("Top"));
    EXPECT_EQ(top.value.size(), 2u);
}

TEST(HandlerSummary, MarksExceptionalActors)
{
    const auto m = testing::checkText(testing::kMiniModel).model;
    const auto r = handlerSummary(*m);
    ASSERT_EQ(r.value.size(), 2u);
    EXPECT_EQ(r.value[0].handler, "Unjam");
    EXPECT_EQ(r.value[0].actors, std::vector<std::string>{"Tech*"});
    EXPECT_EQ(r.value[0].dependentUseCases, std::vector<std::string>{"Mid"});
    EXPECT_EQ(r.value[0].totalInvocationPaths, 1u);
    EXPECT_EQ(r.value[1].totalInvocationPaths, 0u);
}

TEST(ModeTables, SwitchesAndServices)
{
    const auto m = testing::checkText(testing::kMiniModel).model;
    EXPECT_EQ(modeSwitchTable(*m), (std::vector<ModeSwitchRow>{{"Mid", "1a-begin", "Normal", "Limited"},
                                                                {"Unjam", "main-end", "Limited", "Normal"}}));
    const auto services = modeServiceTable(*m);
    ASSERT_EQ(services.size(), 2u);
    EXPECT_EQ(services[1].kind, ModeKind::Degraded);
    EXPECT_EQ(services[1].services, std::vector<std::string>{"Core"});
}

} // namespace
} // namespace ucm
