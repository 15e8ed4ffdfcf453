#include "activestokes/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace astk {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::string>& header_comments) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("CsvWriter: cannot open " + path);
    file_ = f;
    ncols_ = columns.size();
    for (const auto& c : header_comments) std::fprintf(f, "# %s\n", c.c_str());
    for (size_t i = 0; i < columns.size(); ++i)
        std::fprintf(f, "%s%s", columns[i].c_str(), i + 1 < columns.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() {
    if (file_) std::fclose(static_cast<std::FILE*>(file_));
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != ncols_) throw std::invalid_argument("CsvWriter: column count mismatch");
    std::FILE* f = static_cast<std::FILE*>(file_);
    for (size_t i = 0; i < values.size(); ++i)
        std::fprintf(f, "%.12e%s", values[i], i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    if (values.size() != ncols_) throw std::invalid_argument("CsvWriter: column count mismatch");
    std::FILE* f = static_cast<std::FILE*>(file_);
    for (size_t i = 0; i < values.size(); ++i)
        std::fprintf(f, "%s%s", values[i].c_str(), i + 1 < values.size() ? "," : "\n");
}

void Metadata::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : kv_)
        if (k == key) {
            v = value;
            return;
        }
    kv_.emplace_back(key, value);
}
void Metadata::set(const std::string& key, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    set(key, std::string(buf));
}
void Metadata::set(const std::string& key, long value) { set(key, std::to_string(value)); }
void Metadata::set(const std::string& key, std::uint64_t value) { set(key, std::to_string(value)); }

void Metadata::write(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("Metadata: cannot open " + path);
    for (const auto& [k, v] : kv_) std::fprintf(f, "%s = %s\n", k.c_str(), v.c_str());
    std::fclose(f);
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::map<std::string, std::string> parse_keyfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_keyfile: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

std::vector<double> parse_list(const std::string& value) {
    std::istringstream ss(value);
    std::vector<double> out;
    double v;
    while (ss >> v) out.push_back(v);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace astk
