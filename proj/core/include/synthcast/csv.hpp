#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace synthcast::csv {

/// Shortest round-trip decimal representation; the basis of byte-identical
/// reruns.
[[nodiscard]] std::string format_double(double v);
[[nodiscard]] double parse_double(std::string_view text);
[[nodiscard]] long long parse_int(std::string_view text);

/// Minimal reader for the toolkit's own files: comma separated, header row,
/// no quoting.
class Table {
public:
    static Table read(const std::filesystem::path& path);
    static Table parse(std::istream& in, const std::string& origin);

    [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
    [[nodiscard]] std::size_t column(std::string_view name) const;
    [[nodiscard]] bool has_column(std::string_view name) const;
    [[nodiscard]] const std::string& at(std::size_t row, std::size_t col) const {
        return rows_[row][col];
    }

private:
    std::string origin_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

class Writer {
public:
    Writer(std::ostream& out, const std::vector<std::string>& header);

    template <typename... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        (write_field(fields, first), ...);
        end_row();
    }

private:
    void write_field(const std::string& s, bool& first);
    void write_field(std::string_view s, bool& first);
    void write_field(const char* s, bool& first) { write_field(std::string_view(s), first); }
    void write_field(double v, bool& first);
    void write_field(long long v, bool& first);
    void write_field(long v, bool& first) { write_field(static_cast<long long>(v), first); }
    void write_field(int v, bool& first) { write_field(static_cast<long long>(v), first); }
    void write_field(unsigned long v, bool& first);
    void write_field(unsigned long long v, bool& first) {
        write_field(static_cast<unsigned long>(v), first);
    }
    void write_field(unsigned v, bool& first) { write_field(static_cast<unsigned long>(v), first); }
    void end_row();

    std::ostream& out_;
};

}  // namespace synthcast::csv
