#include "synthcast/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace synthcast::csv {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    return v;
}

long long parse_int(std::string_view text) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    return v;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

Table Table::read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    return parse(in, path.string());
}

Table Table::parse(std::istream& in, const std::string& origin) {
    Table t;
    t.origin_ = origin;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(origin + ": missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    t.header_ = split(line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line);
        if (fields.size() != t.header_.size())
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(t.header_.size()) + " fields, got " +
                                     std::to_string(fields.size()));
        t.rows_.push_back(std::move(fields));
    }
    return t;
}

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return i;
    throw std::runtime_error(origin_ + ": missing column '" + std::string(name) + "'");
}

bool Table::has_column(std::string_view name) const {
    for (const auto& h : header_)
        if (h == name) return true;
    return false;
}

Writer::Writer(std::ostream& out, const std::vector<std::string>& header) : out_(out) {
    bool first = true;
    for (const auto& h : header) write_field(h, first);
    end_row();
}

void Writer::write_field(const std::string& s, bool& first) { write_field(std::string_view(s), first); }

void Writer::write_field(std::string_view s, bool& first) {
    if (!first) out_ << ',';
    out_ << s;
    first = false;
}

void Writer::write_field(double v, bool& first) { write_field(format_double(v), first); }

void Writer::write_field(long long v, bool& first) { write_field(std::to_string(v), first); }

void Writer::write_field(unsigned long v, bool& first) { write_field(std::to_string(v), first); }

void Writer::end_row() { out_ << '\n'; }

}  // namespace synthcast::csv
