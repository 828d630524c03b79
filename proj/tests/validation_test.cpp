#include "test_support.hpp"

#include "ucm/validation.hpp"

#include <gtest/gtest.h>

namespace ucm {
namespace {

std::string patched(std::string text, const std::string& from, const std::string& to)
{
    const auto at = text.find(from);
    EXPECT_NE(at, std::string::npos) << from;
    return text.replace(at, from.size(), to);
}

Diagnostics diagnosticsFor(const std::string& text)
{
    const auto r = testing::checkText(text);
    EXPECT_TRUE(r.model) << "parse failed";
    return r.diagnostics;
}

const Diagnostic* find(const Diagnostics& d, DiagCode code)
{
    for (const auto& x : d)
        if (x.code == code)
            return &x;
    return nullptr;
}

TEST(Validate, MiniModelIsClean)
{
    EXPECT_TRUE(diagnosticsFor(testing::kMiniModel).empty());
}

TEST(Validate, ResultsAreSorted)
{
    auto text = patched(testing::kMiniModel, "intention: \"User buys.\"\n", "");
    text = patched(text, "1. System -> Box", "2. System -> Box");
    const auto diags = diagnosticsFor(text);
    ASSERT_GE(diags.size(), 2u);
    for (std::size_t i = 1; i < diags.size(); ++i)
        EXPECT_LE(diags[i - 1].span.startOffset, diags[i].span.startOffset);
}

TEST(RequiredClauses, ReportsEachMissingClause)
{
    UseCaseAst uc;
    uc.name = "Bare";
    const auto d = checkRequiredClauses(uc);
    // scope, level, intention, multiplicity, primary actor, main
    EXPECT_EQ(countCode(d, DiagCode::E001), 6u);
    uc.isHandler = true;
    EXPECT_EQ(countCode(checkRequiredClauses(uc), DiagCode::E001), 7u);
}

TEST(StepOrdering, AcceptsConsecutiveLabels)
{
    const auto r = parse(testing::kMiniModel, "m.ucm");
    EXPECT_TRUE(checkStepOrdering(*r.model->useCases[0].main).empty());
    EXPECT_TRUE(checkStepOrdering(r.model->useCases[1].extensions[0]).empty());
}

TEST(StepOrdering, SuggestsExpectedLabel)
{
    const auto d = diagnosticsFor(patched(testing::kMiniModel, "3. System -> User", "5. System -> User"));
    const Diagnostic* e = find(d, DiagCode::E002);
    ASSERT_TRUE(e);
    ASSERT_FALSE(e->suggestions.empty());
    EXPECT_EQ(e->suggestions[0], "3");
}

TEST(StepOrdering, DuplicateLabelSuggestsSuccessor)
{
    const auto d = diagnosticsFor(patched(testing::kMiniModel, "2. invoke Mid", "1. invoke Mid"));
    const Diagnostic* e = find(d, DiagCode::E002);
    ASSERT_TRUE(e);
    EXPECT_EQ(e->suggestions, std::vector<std::string>{"2"});
}

TEST(StepOrdering, BlockStepsMustExtendBlockLabel)
{
    const auto d = diagnosticsFor(patched(testing::kMiniModel, "1a1. raise", "1b1. raise"));
    EXPECT_EQ(countCode(d, DiagCode::E002), 1u);
}

TEST(Endpoints, InteractionNeedsSystemAndOneActor)
{
    auto d = diagnosticsFor(patched(testing::kMiniModel, "1. User -> System", "1. User -> User"));
    EXPECT_EQ(countCode(d, DiagCode::E010), 1u);
    d = diagnosticsFor(patched(testing::kMiniModel, "1. User -> System", "1. Stranger -> System"));
    EXPECT_EQ(countCode(d, DiagCode::E010), 1u);
}

TEST(Endpoints, SubFunctionsAreExempt)
{
    const auto d = diagnosticsFor(patched(testing::kMiniModel, "1. System -> Box", "1. Box -> Helper"));
    EXPECT_EQ(countCode(d, DiagCode::E010), 0u);
}

TEST(ActorTypes, UntypedActorGetsSuggestion)
{
    const auto d = diagnosticsFor(patched(testing::kMiniModel, "primary: Human::Tech", "primary: Tech"));
    const Diagnostic* e = find(d, DiagCode::E005);
    ASSERT_TRUE(e);
    EXPECT_EQ(e->span.endOffset - e->span.startOffset, 4u);
}

TEST(ActorTypes, UsesTypeDeclaredElsewhere)
{
    std::string text = patched(testing::kMiniModel, "primary: Human::Tech", "primary: Human::Tech, User");
    const auto d = diagnosticsFor(text);
    const Diagnostic* e = find(d, DiagCode::E005);
    ASSERT_TRUE(e);
    ASSERT_FALSE(e->suggestions.empty());
    EXPECT_NE(e->suggestions[0].find("Human::User"), std::string::npos);
}

TEST(ActorTypes, UnknownExceptionCategory)
{
    auto text = patched(testing::kMiniModel, "exception HardwareException::Jam", "exception GadgetException::Jam");
    text = patched(text, "raise HardwareException::Jam", "raise GadgetException::Jam");
    text = patched(text, "Mid on HardwareException::Jam", "Mid on GadgetException::Jam");
    EXPECT_GE(countCode(diagnosticsFor(text), DiagCode::E005), 1u);
}

TEST(Multiplicity, InvertedBoundsIsE006)
{
    auto d = diagnosticsFor(patched(testing::kMiniModel, "primary: Human::User", "primary: Human::User[4..1]"));
    EXPECT_EQ(countCode(d, DiagCode::E006), 1u);
    d = diagnosticsFor(patched(testing::kMiniModel, "primary: Human::User", "primary: Human::User[4..*]"));
    EXPECT_EQ(countCode(d, DiagCode::E006), 0u);
}

TEST(Exceptions, UnhandledRaiseIsW001)
{
    const auto text = patched(testing::kMiniModel, "contexts: Mid on HardwareException::Jam interrupt-continue",
                              "contexts: Top on NetworkException::Outage interrupt-continue");
    const auto d = diagnosticsFor(text);
    EXPECT_EQ(countCode(d, DiagCode::W001), 1u);
    // Mid continues after an exception no handler covers.
    EXPECT_EQ(countCode(d, DiagCode::E009), 1u);
}

TEST(Exceptions, ContextMustRaiseException)
{
    // Top no longer reaches Mid, so nothing under Top raises Jam.
    auto text = patched(testing::kMiniModel, "2. invoke Mid", "2. condition \"ready\"") + std::string(R"(
handler Extra {
  scope: "Shop"
  level: user-goal
  intention: "x"
  multiplicity: "y"
  primary: Human::Tech
  contexts: Top on HardwareException::Jam interrupt-fail
  main {
    1. System -> Tech : "z"
    outcome success
  }
}
)");
    const auto d = diagnosticsFor(text);
    EXPECT_EQ(countCode(d, DiagCode::E007), 1u);
}

TEST(Exceptions, GlobalContextsAreExempt)
{
    const auto d = diagnosticsFor(patched(testing::kMiniModel, "contexts: Top on NetworkException::Outage",
                                          "contexts: Mid on NetworkException::Outage"));
    EXPECT_EQ(countCode(d, DiagCode::E007), 0u);
}

TEST(Exceptions, TwoRaisesInOneBlockIsE008)
{
    const auto d = diagnosticsFor(patched(testing::kMiniModel, "      1a1. raise HardwareException::Jam\n",
                                          "      1a1. raise HardwareException::Jam\n"
                                          "      1a2. raise HardwareException::Jam\n"));
    EXPECT_EQ(countCode(d, DiagCode::E008), 1u);
}

TEST(Exceptions, RaiseInMainIsE008)
{
    const auto d = diagnosticsFor(patched(testing::kMiniModel, "1. System -> Box : \"pokes\"",
                                          "1. raise HardwareException::Jam"));
    EXPECT_GE(countCode(d, DiagCode::E008), 1u);
}

TEST(Exceptions, NeverRaisedIsW002)
{
    const auto d = diagnosticsFor(patched(testing::kMiniModel, "  exception HardwareException::Jam\n",
                                          "  exception HardwareException::Jam\n  exception HardwareException::Spare\n"));
    const Diagnostic* w = find(d, DiagCode::W002);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->severity(), Severity::Warning);
}

TEST(Outcomes, MainMustSucceed)
{
    const auto d = diagnosticsFor(patched(testing::kMiniModel, "\"answers\"\n    outcome success",
                                          "\"answers\"\n    outcome abandoned"));
    EXPECT_EQ(countCode(d, DiagCode::E011), 1u);
}

TEST(Modes, UnusedModeIsW003)
{
    const auto d = diagnosticsFor(patched(testing::kMiniModel, "  degraded Limited offers Core\n",
                                          "  degraded Limited offers Core\n  emergency Panic\n"));
    EXPECT_EQ(countCode(d, DiagCode::W003), 1u);
}

} // namespace
} // namespace ucm
