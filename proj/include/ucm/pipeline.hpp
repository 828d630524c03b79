// Parse, resolve and validate in one call.
#pragma once

#include "ucm/diagnostic.hpp"
#include "ucm/model.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace ucm {

struct CheckResult
{
    std::optional<ResolvedModel> model; // absent when parsing failed
    Diagnostics resolveDiagnostics;
    Diagnostics diagnostics; // everything, sorted

    [[nodiscard]] bool ok() const { return model && !hasErrors(diagnostics); }
};

CheckResult checkModel(std::string_view source, const std::string& file);

} // namespace ucm
