#include "ucm/source.hpp"

#include <algorithm>

namespace ucm {

std::string normalizeLineEndings(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i)
    {
        if (text[i] == '\r')
        {
            out.push_back('\n');
            if (i + 1 < text.size() && text[i + 1] == '\n')
                ++i;
            continue;
        }
        out.push_back(text[i]);
    }
    return out;
}

SourceFile::SourceFile(std::string path, std::string_view text)
    : path_(std::move(path)), text_(normalizeLineEndings(text))
{
    lineStarts_.push_back(0);
    for (std::size_t i = 0; i < text_.size(); ++i)
        if (text_[i] == '\n')
            lineStarts_.push_back(i + 1);
}

std::pair<int, int> SourceFile::position(std::size_t offset) const
{
    offset = std::min(offset, text_.size());
    auto it = std::upper_bound(lineStarts_.begin(), lineStarts_.end(), offset);
    const auto lineIndex = static_cast<std::size_t>(std::distance(lineStarts_.begin(), it)) - 1;
    return {static_cast<int>(lineIndex) + 1, static_cast<int>(offset - lineStarts_[lineIndex]) + 1};
}

SourceSpan SourceFile::span(std::size_t start, std::size_t end) const
{
    start = std::min(start, text_.size());
    end = std::clamp(end, start, text_.size());
    const auto [line, column] = position(start);
    return SourceSpan{path_, start, end, line, column};
}

std::string_view SourceFile::line(int lineNumber) const
{
    if (lineNumber < 1 || lineNumber > lineCount())
        return {};
    const std::size_t begin = lineStarts_[static_cast<std::size_t>(lineNumber - 1)];
    std::size_t end = text_.find('\n', begin);
    if (end == std::string::npos)
        end = text_.size();
    return std::string_view(text_).substr(begin, end - begin);
}

} // namespace ucm
