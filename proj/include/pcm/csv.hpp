#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pcm {

/// A comma-separated table with a header row. Blank lines and lines
/// starting with '#' are skipped; cells are whitespace-trimmed.
struct CsvTable {
    std::string source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> lines;  // source line of each row

    /// Index of the named column; throws InputError if absent.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const;
    /// Cell parsed as a finite double; errors carry source and line.
    double number(std::size_t row, std::size_t col) const;
};

/// Throws InputError on an empty table, ragged rows or unreadable file.
CsvTable parse_csv(std::string_view text, const std::string& source);
CsvTable read_csv(const std::filesystem::path& path);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    CsvWriter& cell(std::string_view text);
    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
    void end_row();

    void row(const std::vector<std::string>& cells);

private:
    std::ostream& out_;
    bool first_ = true;
};

}  // namespace pcm
