#include "ucm/cli.hpp"

#include "ucm/analysis.hpp"
#include "ucm/export.hpp"
#include "ucm/parser.hpp"
#include "ucm/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <unistd.h>

namespace ucm {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitModel = 1;
constexpr int kExitUsage = 2;

struct Options
{
    std::string file;
    bool strict = false;
    std::string checkFormat = "text";
    std::string tableFormat = "md";
    std::string view = "global";
    std::string useCase;
    std::string output;
};

class Driver
{
public:
    Driver(std::ostream& out, std::ostream& err) : out_(out), err_(err)
    {
        color_ = &err == &std::cerr && isatty(fileno(stderr)) && std::getenv("NO_COLOR") == nullptr;
    }

    int check(const Options& o)
    {
        if (!load(o.file))
            return kExitUsage;
        const auto result = checkModel(source_, o.file);
        if (o.checkFormat == "json")
            out_ << diagnosticsJson(result.diagnostics);
        else
            print(result.diagnostics);
        const bool warnings = std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                                          [](const Diagnostic& d) { return d.severity() == Severity::Warning; });
        return hasErrors(result.diagnostics) || (o.strict && warnings) ? kExitModel : kExitOk;
    }

    int table(const std::string& kind, const Options& o)
    {
        auto model = resolved(o.file, true);
        if (!model)
            return status_;
        const auto format = o.tableFormat == "csv" ? TableFormat::Csv : TableFormat::Markdown;

        SummaryTable t;
        Diagnostics diags;
        if (kind == "exceptions")
        {
            ExceptionView view = ExceptionView::globalView();
            if (!o.useCase.empty())
            {
                if (!model->useCase(o.useCase))
                {
                    err_ << "error: unknown use case '" << o.useCase << "'\n";
                    return kExitUsage;
                }
                view = ExceptionView::of(o.useCase);
            }
            auto rows = exceptionSummary(*model, view);
            diags = rows.diagnostics;
            t = toTable(rows.value);
        }
        else if (kind == "handlers")
        {
            auto rows = handlerSummary(*model);
            diags = rows.diagnostics;
            t = toTable(rows.value);
        }
        else if (kind == "modes")
            t = toTable(modeSwitchTable(*model));
        else
            t = toTable(modeServiceTable(*model));

        if (hasErrors(diags))
        {
            print(diags);
            return kExitModel;
        }
        out_ << renderTable(t, format);
        return kExitOk;
    }

    int exportModel(const std::string& kind, const Options& o)
    {
        auto model = resolved(o.file, false);
        if (!model)
            return status_;
        const std::string text = kind == "json" ? exportJson(*model) : kind == "xmi" ? exportXmi(*model) : exportDot(*model);
        if (o.output.empty())
        {
            out_ << text;
            return kExitOk;
        }
        std::ofstream file(o.output, std::ios::binary);
        if (!file || !(file << text))
        {
            err_ << "error: cannot write '" << o.output << "'\n";
            return kExitUsage;
        }
        return kExitOk;
    }

private:
    bool load(const std::string& path)
    {
        try
        {
            source_ = readSourceFile(path);
            return true;
        }
        catch (const IoError& e)
        {
            err_ << "error: " << e.what() << "\n";
            return false;
        }
    }

    /// Parsed and resolved model, or nullopt after reporting why not.
    /// Resolution errors block the artifact only when `requireClean`.
    std::optional<ResolvedModel> resolved(const std::string& path, bool requireClean)
    {
        if (!load(path))
        {
            status_ = kExitUsage;
            return std::nullopt;
        }
        auto result = checkModel(source_, path);
        if (!result.model || (requireClean && hasErrors(result.resolveDiagnostics)))
        {
            print(result.model ? result.resolveDiagnostics : result.diagnostics);
            status_ = kExitModel;
            return std::nullopt;
        }
        return std::move(result.model);
    }

    void print(const Diagnostics& diags)
    {
        for (const auto& d : diags)
            err_ << renderDiagnostic(d, source_, color_);
    }

    static std::string diagnosticsJson(const Diagnostics& diags)
    {
        auto doc = nlohmann::ordered_json::array();
        for (const auto& d : diags)
        {
            nlohmann::ordered_json j;
            j["code"] = codeName(d.code);
            j["severity"] = d.severity() == Severity::Error ? "error" : "warning";
            j["message"] = d.message;
            j["file"] = d.span.file;
            j["line"] = d.span.startLine;
            j["column"] = d.span.startColumn;
            j["startOffset"] = d.span.startOffset;
            j["endOffset"] = d.span.endOffset;
            j["suggestions"] = d.suggestions;
            auto related = nlohmann::ordered_json::array();
            for (const auto& r : d.related)
                related.push_back({{"note", r.note}, {"line", r.span.startLine}, {"column", r.span.startColumn}});
            j["related"] = related;
            doc.push_back(j);
        }
        return doc.dump(2) + "\n";
    }

    std::ostream& out_;
    std::ostream& err_;
    bool color_ = false;
    std::string source_;
    int status_ = kExitOk;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Compiler and static analyzer for UCM4IoT use case models", "ucm"};
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "Parse and validate a model, printing diagnostics");
    check->add_option("FILE", o.file, "Model file (.ucm)")->required();
    check->add_flag("--strict", o.strict, "Fail on warnings too");
    check->add_option("--format", o.checkFormat, "Diagnostic format")->check(CLI::IsMember({"text", "json"}));

    auto* table = app.add_subcommand("table", "Generate a summary table");
    table->require_subcommand(1);
    std::string tableKind;
    const std::pair<const char*, const char*> tableKinds[] = {
        {"exceptions", "Exception summary (global or per use case)"},
        {"handlers", "Handler summary"},
        {"modes", "Mode switch table"},
        {"services", "Mode and offered services table"},
    };
    for (const auto& [kind, description] : tableKinds)
    {
        auto* sub = table->add_subcommand(kind, description);
        sub->add_option("FILE", o.file, "Model file (.ucm)")->required();
        sub->add_option("--format", o.tableFormat, "Table format")->check(CLI::IsMember({"md", "csv"}));
        if (std::string_view(kind) == "exceptions")
        {
            auto* viewOpt =
                sub->add_option("--view", o.view, "Exception view")->check(CLI::IsMember({"global"}));
            sub->add_option("--usecase", o.useCase, "Per-use-case view rooted at NAME")->excludes(viewOpt);
        }
        sub->callback([&tableKind, k = kind] { tableKind = k; });
    }

    auto* exportCmd = app.add_subcommand("export", "Export the model");
    exportCmd->require_subcommand(1);
    std::string exportKind;
    for (const char* kind : {"json", "xmi", "dot"})
    {
        auto* sub = exportCmd->add_subcommand(kind, std::string("Export as ") + kind);
        sub->add_option("FILE", o.file, "Model file (.ucm)")->required();
        sub->add_option("-o,--output", o.output, "Output file (default stdout)");
        sub->callback([&exportKind, kind] { exportKind = kind; });
    }

    std::vector<std::string> argvStorage{"ucm"};
    argvStorage.insert(argvStorage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argvStorage)
        argv.push_back(a.c_str());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError& e)
    {
        // Prints help to `out`, or the error with a hint to `err`.
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    Driver driver(out, err);
    if (check->parsed())
        return driver.check(o);
    if (table->parsed())
        return driver.table(tableKind, o);
    return driver.exportModel(exportKind, o);
}

} // namespace ucm
