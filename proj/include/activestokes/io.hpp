// io.hpp - CSV emission, structured-text key/value files, content hashing.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace astk {

/// CSV with a '#'-comment header block; fixed %.12e formatting, LF endings.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns,
              const std::vector<std::string>& header_comments = {});
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);

private:
    void* file_ = nullptr;
    size_t ncols_ = 0;
};

/// Ordered key = value metadata file (UTF-8, LF).
class Metadata {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long value);
    void set(const std::string& key, std::uint64_t value);
    void write(const std::string& path) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return kv_; }

private:
    std::vector<std::pair<std::string, std::string>> kv_;
};

/// FNV-1a 64-bit content hash, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

/// Parse a key = value structured-text file. Repeated keys keep the last
/// value; list values are whitespace separated.
std::map<std::string, std::string> parse_keyfile(const std::string& path);
std::vector<double> parse_list(const std::string& value);

std::string read_file(const std::string& path);

} // namespace astk
