#include "mutation_support.hpp"

#include <gtest/gtest.h>

#include <set>

namespace ucm {
namespace {

class Mutation : public ::testing::TestWithParam<testing::MutationCase>
{
};

TEST_P(Mutation, DefectReportsExpectedCodeAtSpan)
{
    const auto& c = GetParam();
    std::string text;
    const auto diags = testing::allDiagnostics(c.dir / "defect.ucm", text);
    const bool hit = std::any_of(diags.begin(), diags.end(),
                                 [&](const Diagnostic& d) { return testing::matches(d, c, text); });
    std::string got;
    for (const auto& d : diags)
        got += std::string(codeName(d.code)) + "@" + std::to_string(d.span.startLine) + ":" +
               std::to_string(d.span.startColumn) + " ";
    EXPECT_TRUE(hit) << "expected " << c.code << "@" << c.line << ":" << c.column << " '" << c.spanText
                     << "', got " << got;
}

TEST_P(Mutation, CleanTwinReportsNothing)
{
    const auto& c = GetParam();
    std::string text;
    const auto diags = testing::allDiagnostics(c.dir / "clean.ucm", text);
    EXPECT_TRUE(diags.empty()) << codeName(diags.front().code) << ": " << diags.front().message;
}

INSTANTIATE_TEST_SUITE_P(Catalog, Mutation, ::testing::ValuesIn(testing::mutationCases()),
                         [](const auto& info) { return info.param.code; });

TEST(MutationCatalog, CoversEveryRule)
{
    std::set<std::string> present;
    for (const auto& c : testing::mutationCases())
        present.insert(c.code);
    for (const char* code : {"E001", "E002", "E003", "E004", "E005", "E006", "E007", "E008", "E009", "E010",
                             "E011", "E012", "E013", "E014", "E015", "W001"})
        EXPECT_TRUE(present.count(code)) << code;
}

} // namespace
} // namespace ucm
