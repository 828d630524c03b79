// Source text handling: spans, line tables, normalized buffers.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ucm {

/// A half-open byte range [startOffset, endOffset) in a normalized source
/// buffer, plus the 1-based line/column of its start.
struct SourceSpan
{
    std::string file;
    std::size_t startOffset = 0;
    std::size_t endOffset = 0;
    int startLine = 1;
    int startColumn = 1;

    bool operator==(const SourceSpan&) const = default;

    [[nodiscard]] bool contains(const SourceSpan& inner) const
    {
        return startOffset <= inner.startOffset && inner.endOffset <= endOffset;
    }
};

/// Converts CRLF and lone CR line endings to LF.
std::string normalizeLineEndings(std::string_view text);

/// An immutable, LF-normalized source buffer with a line-start index.
class SourceFile
{
public:
    SourceFile(std::string path, std::string_view text);

    [[nodiscard]] const std::string& path() const { return path_; }
    [[nodiscard]] const std::string& text() const { return text_; }

    /// Builds a span for [start, end); offsets past the end are clamped.
    [[nodiscard]] SourceSpan span(std::size_t start, std::size_t end) const;

    /// 1-based (line, column) of a byte offset.
    [[nodiscard]] std::pair<int, int> position(std::size_t offset) const;

    /// Text of a 1-based line without its terminating newline.
    [[nodiscard]] std::string_view line(int lineNumber) const;

    [[nodiscard]] int lineCount() const { return static_cast<int>(lineStarts_.size()); }

private:
    std::string path_;
    std::string text_;
    std::vector<std::size_t> lineStarts_;
};

} // namespace ucm
