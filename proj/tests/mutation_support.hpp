// Loads mutation fixture pairs and runs them through the full pipeline.
#pragma once

#include "test_support.hpp"

#include "ucm/analysis.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ucm::testing {

struct MutationCase
{
    std::string code;
    std::filesystem::path dir;
    int line = 0;
    int column = 0;
    std::string spanText;
};

inline void PrintTo(const MutationCase& c, std::ostream* os) { *os << c.code; }

inline std::vector<MutationCase> mutationCases()
{
    std::vector<MutationCase> cases;
    for (const auto& entry : std::filesystem::directory_iterator(fixturePath("mutations")))
    {
        if (!entry.is_directory())
            continue;
        std::ifstream in(entry.path() / "expected.txt");
        MutationCase c;
        c.dir = entry.path();
        std::string position;
        in >> c.code >> position;
        in.get();
        std::getline(in, c.spanText);
        const auto colon = position.find(':');
        c.line = std::stoi(position.substr(0, colon));
        c.column = std::stoi(position.substr(colon + 1));
        cases.push_back(std::move(c));
    }
    std::sort(cases.begin(), cases.end(), [](const auto& a, const auto& b) { return a.code < b.code; });
    return cases;
}

/// Validation plus the analyses that can raise their own diagnostics.
inline Diagnostics allDiagnostics(const std::filesystem::path& file, std::string& textOut)
{
    textOut = readSourceFile(file);
    auto result = checkModel(textOut, file.string());
    Diagnostics diags = result.diagnostics;
    if (result.model && !hasErrors(result.resolveDiagnostics))
    {
        const auto summary = exceptionSummary(*result.model, ExceptionView::globalView());
        diags.insert(diags.end(), summary.diagnostics.begin(), summary.diagnostics.end());
    }
    return diags;
}

inline bool matches(const Diagnostic& d, const MutationCase& c, const std::string& text)
{
    return codeName(d.code) == c.code && d.span.startLine == c.line && d.span.startColumn == c.column &&
           text.substr(d.span.startOffset, d.span.endOffset - d.span.startOffset) == c.spanText;
}

} // namespace ucm::testing
