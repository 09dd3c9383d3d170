#include "somimpute/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "somimpute/data.hpp"

namespace somimpute {

void Manifest::add(std::string key, std::string value) {
    if (key.empty() || key.find_first_of("=\n") != std::string::npos || value.find('\n') != std::string::npos) {
        throw std::invalid_argument("manifest entry '" + key + "' is not representable as key=value");
    }
    entries_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> Manifest::get(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return v;
    }
    return std::nullopt;
}

std::vector<std::string> Manifest::get_all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) {
        if (k == key) out.push_back(v);
    }
    return out;
}

void Manifest::write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
}

Manifest Manifest::read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest " + path.string());
    Manifest m;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) throw DataError("manifest line without key=value: '" + line + "'");
        m.entries_.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return m;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
        h ^= static_cast<unsigned char>(*it);
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace somimpute
