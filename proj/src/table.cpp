#include "ucm/export.hpp"

namespace ucm {

namespace {

std::string markdownCell(const std::string& text)
{
    std::string out;
    for (char c : text)
    {
        if (c == '|')
            out += "\\|";
        else if (c == '\n')
            out += "<br>";
        else if (c != '\r')
            out += c;
    }
    return out;
}

std::string csvCell(const std::string& text)
{
    if (text.find_first_of(",\"\r\n") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char c : text)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& items, const char* sep = ", ")
{
    std::string out;
    for (const auto& s : items)
    {
        if (!out.empty())
            out += sep;
        out += s;
    }
    return out;
}

std::string joinPaths(const std::vector<PathRecord>& paths)
{
    std::vector<std::string> parts;
    for (const auto& p : paths)
        parts.push_back(p.str());
    return join(parts, "; ");
}

} // namespace

std::string renderTable(const SummaryTable& t, TableFormat format)
{
    std::string out;
    if (format == TableFormat::Markdown)
    {
        auto line = [&](const std::vector<std::string>& cells) {
            out += "|";
            for (const auto& c : cells)
                out += " " + markdownCell(c) + " |";
            out += "\n";
        };
        line(t.columns);
        out += "|";
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out += " --- |";
        out += "\n";
        for (const auto& r : t.rows)
            line(r);
        return out;
    }

    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out += (i ? "," : "") + csvCell(cells[i]);
        out += "\r\n";
    };
    line(t.columns);
    for (const auto& r : t.rows)
        line(r);
    return out;
}

SummaryTable toTable(const std::vector<ExceptionSummaryRow>& rows, std::string title)
{
    SummaryTable t{std::move(title),
                   {"Exception", "Source Use Case", "Handlers", "Situation", "Participating Actors", "Path Count",
                    "Paths"},
                   {}};
    for (const auto& r : rows)
        t.rows.push_back({r.exception + (r.isGlobal ? " (global)" : ""), r.sourceUseCase, join(r.handlers),
                          r.situation, join(r.participatingActors), std::to_string(r.paths.size()),
                          joinPaths(r.paths)});
    return t;
}

SummaryTable toTable(const std::vector<HandlerSummaryRow>& rows, std::string title)
{
    SummaryTable t{std::move(title),
                   {"Handler", "Dependent Use Cases", "Handled Exceptions", "Actors", "Total Invocation Paths"},
                   {}};
    for (const auto& r : rows)
        t.rows.push_back({r.handler, join(r.dependentUseCases), join(r.handledExceptions), join(r.actors),
                          std::to_string(r.totalInvocationPaths)});
    return t;
}

SummaryTable toTable(const std::vector<ModeSwitchRow>& rows, std::string title)
{
    SummaryTable t{std::move(title), {"Use Case", "Location", "From Mode", "To Mode"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({r.useCase, r.location, r.fromMode, r.toMode});
    return t;
}

SummaryTable toTable(const std::vector<ModeServiceRow>& rows, std::string title)
{
    SummaryTable t{std::move(title), {"Mode", "Kind", "Offered Services"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({r.mode, std::string(toString(r.kind)), join(r.services)});
    return t;
}

} // namespace ucm
