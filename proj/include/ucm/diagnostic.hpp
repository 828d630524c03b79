// Diagnostics with stable codes, shared by every analysis phase.
#pragma once

#include "ucm/source.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ucm {

enum class Severity
{
    Error,
    Warning,
};

/// Stable diagnostic codes. E-codes are errors, W-codes warnings.
///
///   E000 syntax / schema error            E008 exceptional block raise count, missing outcome
///   E001 missing mandatory clause         E009 continue after an unhandled exception
///   E002 step label out of order          E010 illegal interaction endpoints
///   E003 unresolved use case reference    E011 main scenario outcome is not success
///   E004 exception not declared           E012 unresolved step reference
///   E005 missing or unknown type          E013 unresolved mode or service name
///   E006 inverted multiplicity bounds     E014 duplicate definition
///   E007 context does not raise exception E015 invocation cycle
///   W001 exception never handled          W002 exception never raised
///   W003 mode never switched to
enum class DiagCode
{
    E000, E001, E002, E003, E004, E005, E006, E007,
    E008, E009, E010, E011, E012, E013, E014, E015,
    W001, W002, W003,
};

[[nodiscard]] std::string_view codeName(DiagCode code);
[[nodiscard]] Severity severityOf(DiagCode code);

struct RelatedNote
{
    SourceSpan span;
    std::string note;

    bool operator==(const RelatedNote&) const = default;
};

struct Diagnostic
{
    DiagCode code = DiagCode::E000;
    std::string message;
    SourceSpan span;
    std::vector<RelatedNote> related;
    std::vector<std::string> suggestions;

    [[nodiscard]] Severity severity() const { return severityOf(code); }
    bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

[[nodiscard]] Diagnostic makeDiagnostic(DiagCode code, std::string message, SourceSpan span,
                                        std::vector<std::string> suggestions = {});

/// Stable sort by (file, startOffset, code).
void sortDiagnostics(Diagnostics& diags);

[[nodiscard]] bool hasErrors(const Diagnostics& diags);
[[nodiscard]] std::size_t countCode(const Diagnostics& diags, DiagCode code);

/// Renders a diagnostic as `file:line:col: severity[CODE]: message`, followed
/// by the offending source line with a caret marker, related notes, and
/// suggestions. `source` is the text the span refers to; it is normalized
/// the same way the parser normalizes input.
[[nodiscard]] std::string renderDiagnostic(const Diagnostic& d, std::string_view source,
                                           bool color = false);

} // namespace ucm
