// Table rendering and model interchange (JSON, XMI, DOT).
#pragma once

#include "ucm/analysis.hpp"
#include "ucm/ast.hpp"
#include "ucm/diagnostic.hpp"
#include "ucm/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ucm {

struct SummaryTable
{
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

enum class TableFormat { Markdown, Csv };

/// Markdown pipe table (no title line) or RFC 4180 CSV with CRLF rows.
std::string renderTable(const SummaryTable& t, TableFormat format);

SummaryTable toTable(const std::vector<ExceptionSummaryRow>& rows, std::string title = "Exception summary");
SummaryTable toTable(const std::vector<HandlerSummaryRow>& rows, std::string title = "Handler summary");
SummaryTable toTable(const std::vector<ModeSwitchRow>& rows, std::string title = "Mode switches");
SummaryTable toTable(const std::vector<ModeServiceRow>& rows, std::string title = "Mode summary");

inline constexpr int kJsonFormatVersion = 1;

/// Canonical JSON with fixed key order; see docs/json-format.md.
std::string exportJson(const AstModel& m);
std::string exportJson(const ResolvedModel& m);

struct ImportResult
{
    std::optional<AstModel> model;
    Diagnostics diagnostics;

    [[nodiscard]] bool ok() const { return model.has_value(); }
};

/// Rebuilds an AST from canonical JSON. Spans are zero-length. Malformed
/// documents, schema violations and unknown versions yield E000 and no model.
ImportResult importJson(const std::string& text);

/// XMI 2.0 document, one element per metamodel class, xmi:id cross-references.
std::string exportXmi(const ResolvedModel& m);

/// Graphviz use case diagram.
std::string exportDot(const ResolvedModel& m);

} // namespace ucm
