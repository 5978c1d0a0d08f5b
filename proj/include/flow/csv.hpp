#pragma once

// Minimal CSV plumbing for the release tables: comma separated, LF line
// endings, no quoting (no field ever contains a comma, quote, or newline).

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flow/date.hpp"

namespace flow {

/// Malformed or unreadable dataset file. The message names the file and line.
class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);

    void write_line(std::string_view line);
    /// Flushes and closes; throws std::runtime_error on any I/O failure.
    void close();

    const std::filesystem::path& path() const { return path_; }

private:
    struct FileCloser {
        void operator()(std::FILE* f) const { std::fclose(f); }
    };

    std::filesystem::path path_;
    std::unique_ptr<std::FILE, FileCloser> file_;
    std::vector<char> buffer_;
};

class CsvReader {
public:
    explicit CsvReader(const std::filesystem::path& path);

    /// Reads the next data row; false at end of file.
    bool next();

    const std::vector<std::string>& header() const { return header_; }
    /// Column position by name; throws DatasetError if absent.
    std::size_t column(std::string_view name) const;
    std::optional<std::size_t> find_column(std::string_view name) const;

    const std::string& line() const { return line_; }
    std::string_view field(std::size_t i) const { return fields_[i]; }
    std::size_t field_count() const { return fields_.size(); }
    /// 1-based line number of the current row (header is line 1).
    std::size_t line_number() const { return line_number_; }
    const std::filesystem::path& path() const { return path_; }

    double real(std::size_t i) const;
    std::int64_t integer(std::size_t i) const;
    bool boolean(std::size_t i) const;
    Date date(std::size_t i) const;

    [[noreturn]] void fail(const std::string& message) const;

private:
    void split();

    std::filesystem::path path_;
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> file_;
    std::vector<std::string> header_;
    std::string line_;
    std::vector<std::string_view> fields_;
    std::size_t line_number_ = 0;
};

/// Splits on commas without copying.
std::vector<std::string_view> split_fields(std::string_view line);

}  // namespace flow
