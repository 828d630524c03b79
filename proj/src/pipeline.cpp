#include "ucm/pipeline.hpp"

#include "ucm/parser.hpp"
#include "ucm/validation.hpp"

namespace ucm {

CheckResult checkModel(std::string_view source, const std::string& file)
{
    CheckResult result;
    auto parsed = parse(source, file);
    result.diagnostics = std::move(parsed.diagnostics);
    if (!parsed.model)
    {
        sortDiagnostics(result.diagnostics);
        return result;
    }
    auto [model, resolveDiags] = resolve(std::move(*parsed.model));
    result.resolveDiagnostics = resolveDiags;
    result.diagnostics.insert(result.diagnostics.end(), resolveDiags.begin(), resolveDiags.end());
    auto validation = validate(model);
    result.diagnostics.insert(result.diagnostics.end(), validation.begin(), validation.end());
    sortDiagnostics(result.diagnostics);
    result.model = std::move(model);
    return result;
}

} // namespace ucm
