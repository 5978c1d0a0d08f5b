#include "flow/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>

#include <fmt/format.h>

namespace flow {

namespace {

constexpr std::size_t kWriteBuffer = 1 << 20;

bool read_line(std::FILE* f, std::string& out) {
    out.clear();
    int c;
    while ((c = getc_unlocked(f)) != EOF) {
        if (c == '\n') {
            return true;
        }
        out.push_back(static_cast<char>(c));
    }
    return !out.empty();
}

}  // namespace

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path), buffer_(kWriteBuffer) {
    file_.reset(std::fopen(path.c_str(), "wb"));
    if (!file_) {
        throw std::runtime_error(fmt::format("cannot open '{}' for writing: {}", path.string(), std::strerror(errno)));
    }
    std::setvbuf(file_.get(), buffer_.data(), _IOFBF, buffer_.size());
}

void CsvWriter::write_line(std::string_view line) {
    if (std::fwrite(line.data(), 1, line.size(), file_.get()) != line.size() || std::fputc('\n', file_.get()) == EOF) {
        throw std::runtime_error(fmt::format("write to '{}' failed", path_.string()));
    }
}

void CsvWriter::close() {
    if (!file_) {
        return;
    }
    std::FILE* f = file_.release();
    const bool failed = std::ferror(f) != 0;
    if (std::fclose(f) != 0 || failed) {
        throw std::runtime_error(fmt::format("closing '{}' failed", path_.string()));
    }
}

CsvReader::CsvReader(const std::filesystem::path& path) : path_(path), file_(nullptr, &std::fclose) {
    file_.reset(std::fopen(path.c_str(), "rb"));
    if (!file_) {
        throw DatasetError(fmt::format("{}: cannot open file", path.string()));
    }
    if (!read_line(file_.get(), line_)) {
        throw DatasetError(fmt::format("{}:1: missing header row", path.string()));
    }
    line_number_ = 1;
    for (auto f : split_fields(line_)) {
        header_.emplace_back(f);
    }
}

bool CsvReader::next() {
    if (!read_line(file_.get(), line_)) {
        return false;
    }
    ++line_number_;
    split();
    return true;
}

void CsvReader::split() {
    fields_ = split_fields(line_);
    if (fields_.size() != header_.size()) {
        fail(fmt::format("expected {} fields, found {}", header_.size(), fields_.size()));
    }
}

std::optional<std::size_t> CsvReader::find_column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t CsvReader::column(std::string_view name) const {
    if (auto i = find_column(name)) return *i;
    throw DatasetError(fmt::format("{}:1: missing column '{}'", path_.string(), name));
}

void CsvReader::fail(const std::string& message) const {
    throw DatasetError(fmt::format("{}:{}: {}", path_.string(), line_number_, message));
}

double CsvReader::real(std::size_t i) const {
    const std::string_view text = fields_[i];
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        fail(fmt::format("column '{}': '{}' is not a number", header_[i], text));
    }
    return value;
}

std::int64_t CsvReader::integer(std::size_t i) const {
    const std::string_view text = fields_[i];
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        fail(fmt::format("column '{}': '{}' is not an integer", header_[i], text));
    }
    return value;
}

bool CsvReader::boolean(std::size_t i) const {
    const std::string_view text = fields_[i];
    if (text == "true") return true;
    if (text == "false") return false;
    fail(fmt::format("column '{}': '{}' is not true/false", header_[i], text));
}

Date CsvReader::date(std::size_t i) const {
    try {
        return parse_date(fields_[i]);
    } catch (const std::invalid_argument&) {
        fail(fmt::format("column '{}': '{}' is not a YYYY-MM-DD date", header_[i], fields_[i]));
    }
}

}  // namespace flow
