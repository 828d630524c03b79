#include "ucm/diagnostic.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace ucm {

namespace {

constexpr std::array<std::string_view, 19> kCodeNames = {
    "E000", "E001", "E002", "E003", "E004", "E005", "E006", "E007", "E008", "E009",
    "E010", "E011", "E012", "E013", "E014", "E015", "W001", "W002", "W003",
};

} // namespace

std::string_view codeName(DiagCode code)
{
    return kCodeNames[static_cast<std::size_t>(code)];
}

Severity severityOf(DiagCode code)
{
    return code >= DiagCode::W001 ? Severity::Warning : Severity::Error;
}

Diagnostic makeDiagnostic(DiagCode code, std::string message, SourceSpan span,
                          std::vector<std::string> suggestions)
{
    Diagnostic d;
    d.code = code;
    d.message = std::move(message);
    d.span = std::move(span);
    d.suggestions = std::move(suggestions);
    return d;
}

void sortDiagnostics(Diagnostics& diags)
{
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.span.file != b.span.file)
            return a.span.file < b.span.file;
        if (a.span.startOffset != b.span.startOffset)
            return a.span.startOffset < b.span.startOffset;
        return a.code < b.code;
    });
}

bool hasErrors(const Diagnostics& diags)
{
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity() == Severity::Error; });
}

std::size_t countCode(const Diagnostics& diags, DiagCode code)
{
    return static_cast<std::size_t>(
        std::count_if(diags.begin(), diags.end(), [code](const Diagnostic& d) { return d.code == code; }));
}

std::string renderDiagnostic(const Diagnostic& d, std::string_view source, bool color)
{
    const SourceFile file(d.span.file, source);
    const SourceSpan span = file.span(d.span.startOffset, d.span.endOffset);
    const bool isError = d.severity() == Severity::Error;

    const char* bold = color ? "\033[1m" : "";
    const char* tone = color ? (isError ? "\033[1;31m" : "\033[1;33m") : "";
    const char* reset = color ? "\033[0m" : "";

    std::ostringstream out;
    out << bold << span.file << ':' << span.startLine << ':' << span.startColumn << ":" << reset << ' '
        << tone << (isError ? "error" : "warning") << '[' << codeName(d.code) << "]:" << reset << ' '
        << d.message << '\n';

    const std::string_view lineText = file.line(span.startLine);
    const std::string gutter = std::to_string(span.startLine);
    out << "  " << gutter << " | " << lineText << '\n';

    const std::size_t column = static_cast<std::size_t>(span.startColumn - 1);
    std::size_t width = std::max<std::size_t>(span.endOffset - span.startOffset, 1);
    if (column < lineText.size())
        width = std::min(width, lineText.size() - column);
    out << "  " << std::string(gutter.size(), ' ') << " | " << std::string(column, ' ') << tone
        << std::string(width, '^') << reset << '\n';

    for (const auto& note : d.related)
    {
        const auto [line, col] = file.position(note.span.startOffset);
        out << "  note: " << note.span.file << ':' << line << ':' << col << ": " << note.note << '\n';
    }
    for (const auto& suggestion : d.suggestions)
        out << "  help: " << suggestion << '\n';
    return out.str();
}

} // namespace ucm
