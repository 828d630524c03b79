#include "test_support.hpp"

#include "ucm/model.hpp"

#include <gtest/gtest.h>

namespace ucm {
namespace {

std::pair<ResolvedModel, Diagnostics> resolveText(const std::string& text)
{
    auto parsed = parse(text, "m.ucm");
    EXPECT_TRUE(parsed.ok());
    return resolve(std::move(*parsed.model));
}

std::string patched(std::string text, const std::string& from, const std::string& to)
{
    const auto at = text.find(from);
    EXPECT_NE(at, std::string::npos) << from;
    return text.replace(at, from.size(), to);
}

TEST(Resolve, BuildsLookups)
{
    auto [m, diags] = resolveText(testing::kMiniModel);
    EXPECT_TRUE(diags.empty());
    ASSERT_TRUE(m.useCase("Mid"));
    EXPECT_FALSE(m.useCase("Nope"));
    EXPECT_TRUE(m.exception("HardwareException::Jam"));
    EXPECT_TRUE(m.exceptionByPlainName("Outage"));
    EXPECT_EQ(m.mode("Limited")->kind, ModeKind::Degraded);
    EXPECT_TRUE(m.service("Core"));
    EXPECT_EQ(m.stepLabels("Mid"), (std::set<std::string>{"1", "1a1"}));
    EXPECT_EQ(m.declaredActors("Top").count({ActorCategory::Human, "User"}), 1u);
}

TEST(Resolve, BindsInvocationToUseCase)
{
    auto [m, diags] = resolveText(testing::kMiniModel);
    const Step& invoke = m.useCase("Top")->main->steps[1];
    const Binding* b = m.bindingFor(&invoke.as<Invocation>()->target);
    ASSERT_TRUE(b);
    EXPECT_EQ(b->kind, ReferenceKind::Invocation);
    EXPECT_EQ(b->target, "Mid");
}

TEST(Resolve, CopiesShareBindingSites)
{
    auto [m, diags] = resolveText(testing::kMiniModel);
    const ResolvedModel copy = m;
    const Step& invoke = copy.useCase("Top")->main->steps[1];
    EXPECT_TRUE(copy.bindingFor(&invoke.as<Invocation>()->target));
}

TEST(Resolve, UnknownUseCaseSuggestsNearName)
{
    auto [m, diags] = resolveText(patched(testing::kMiniModel, "2. invoke Mid", "2. invoke Mod"));
    ASSERT_EQ(countCode(diags, DiagCode::E003), 1u);
    const auto& d = diags[0];
    EXPECT_EQ(d.span.endOffset - d.span.startOffset, 3u);
    ASSERT_FALSE(d.suggestions.empty());
    EXPECT_EQ(d.suggestions[0], "Mid");
}

TEST(Resolve, UndeclaredExceptionIsE004)
{
    auto [m, diags] = resolveText(patched(testing::kMiniModel, "raise HardwareException::Jam", "raise HardwareException::Jm"));
    EXPECT_EQ(countCode(diags, DiagCode::E004), 1u);
}

TEST(Resolve, UnknownModeAndServiceAreE013)
{
    auto text = patched(testing::kMiniModel, "mode switch: Limited", "mode switch: Limted");
    text = patched(text, "degraded Limited offers Core", "degraded Limited offers Kore");
    auto [m, diags] = resolveText(text);
    EXPECT_EQ(countCode(diags, DiagCode::E013), 2u);
}

TEST(Resolve, BadStepTargetIsE012)
{
    auto [m, diags] = resolveText(patched(testing::kMiniModel, "outcome continue 1", "outcome continue 4"));
    EXPECT_EQ(countCode(diags, DiagCode::E012), 1u);
}

TEST(Resolve, DuplicateUseCaseIsE014AndFirstWins)
{
    std::string text = testing::kMiniModel;
    text += R"(
usecase Mid {
  scope: "dup"
}
)";
    auto [m, diags] = resolveText(text);
    EXPECT_EQ(countCode(diags, DiagCode::E014), 1u);
    EXPECT_EQ(m.useCase("Mid")->scope, "Shop");
}

TEST(Resolve, ReachableFollowsBlockInvocations)
{
    const std::string text = patched(testing::kMiniModel, "3a1. raise NetworkException::Outage",
                                     "3a1. raise NetworkException::Outage\n      3a2. invoke Mid");
    auto [m, diags] = resolveText(text);
    EXPECT_EQ(reachableUseCases(m, "Top"), (std::set<std::string>{"Top", "Mid"}));
    EXPECT_EQ(reachableUseCases(m, "Mid"), (std::set<std::string>{"Mid"}));
    EXPECT_TRUE(reachableUseCases(m, "Ghost").empty());
}

TEST(Ast, WithoutSpansClearsEverySpan)
{
    auto parsed = parse(testing::kMiniModel, "m.ucm");
    const AstModel stripped = withoutSpans(*parsed.model);
    EXPECT_EQ(stripped.span, SourceSpan{});
    EXPECT_EQ(stripped.useCases[1].extensions[0].steps[0].span, SourceSpan{});
    EXPECT_EQ(stripped.useCases[0].main->steps[1].as<Invocation>()->target.span, SourceSpan{});
    EXPECT_EQ(withoutSpans(stripped), stripped);
}

TEST(Ast, KeywordRoundTrip)
{
    EXPECT_EQ(toString(ExceptionCategory::Hardware), "HardwareException");
    EXPECT_EQ(exceptionCategoryFromString("NetworkException"), ExceptionCategory::Network);
    EXPECT_EQ(levelFromString(toString(UseCaseLevel::UserGoal)), UseCaseLevel::UserGoal);
    EXPECT_EQ(relationFromString("interrupt-fail"), ContextRelation::InterruptFail);
    EXPECT_EQ(categoryWord(ActorCategory::PhysicalEntity), "physical-entity");
    EXPECT_TRUE(isDeviceCategory(ActorCategory::Sensor));
    EXPECT_FALSE(isDeviceCategory(ActorCategory::Human));
}

} // namespace
} // namespace ucm
