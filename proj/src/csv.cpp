#include "pcm/csv.hpp"

#include "pcm/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pcm {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw InputError(source + ": missing column '" + std::string(name) + "'");
}

bool CsvTable::has_column(std::string_view name) const {
    for (const auto& h : header)
        if (h == name)
            return true;
    return false;
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    const std::string& text = rows.at(row).at(col);
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
        throw InputError(source + ":" + std::to_string(lines.at(row)) + ": column '" + header.at(col) +
                         "': not a number: '" + text + "'");
    return v;
}

CsvTable parse_csv(std::string_view text, const std::string& source) {
    CsvTable t;
    t.source = source;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string_view line = text.substr(pos, nl == text.npos ? text.npos : nl - pos);
        pos = nl == text.npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#')
            continue;
        auto cells = split(body);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size())
            throw InputError(source + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(t.header.size()) + " fields, found " +
                             std::to_string(cells.size()));
        t.rows.push_back(std::move(cells));
        t.lines.push_back(line_no);
    }
    if (t.header.empty())
        throw InputError(source + ": empty file");
    if (t.rows.empty())
        throw InputError(source + ":" + std::to_string(line_no) + ": header but no data rows");
    return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError(path.string() + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path.string());
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
    return std::string(buf, ptr);
}

CsvWriter& CsvWriter::cell(std::string_view text) {
    if (!first_)
        out_ << ',';
    out_ << text;
    first_ = false;
    return *this;
}

CsvWriter& CsvWriter::cell(double v) {
    return cell(std::string_view(format_double(v)));
}

CsvWriter& CsvWriter::cell(long long v) {
    return cell(std::string_view(std::to_string(v)));
}

void CsvWriter::end_row() {
    out_ << '\n';
    first_ = true;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (const auto& c : cells)
        cell(std::string_view(c));
    end_row();
}

}  // namespace pcm
