// Recursive-descent parser producing a spanned AstModel.
#pragma once

#include "ucm/ast.hpp"
#include "ucm/diagnostic.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ucm {

struct ParseResult
{
    std::optional<AstModel> model; // absent whenever any E000 was reported
    Diagnostics diagnostics;

    [[nodiscard]] bool ok() const { return model.has_value(); }
};

/// Parses a whole .ucm source. All-or-nothing: a syntax error anywhere
/// yields no model. After an error the parser resynchronizes at the next
/// `usecase`/`handler` so one run reports errors from several use cases.
ParseResult parse(std::string_view source, const std::string& file);

/// Raised for unreadable input files; distinct from syntax diagnostics.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Reads a file as bytes. Throws IoError naming the path on failure.
std::string readSourceFile(const std::filesystem::path& path);

} // namespace ucm
