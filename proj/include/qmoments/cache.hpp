#pragma once

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "series_io.hpp"

namespace qmoments {

/// On-disk store of expanded series, keyed by a canonical spec string plus
/// precision. Each file starts with `key <key>` followed by the series in
/// its text format. Writes go to a temporary file that is renamed into place.
class SeriesCache {
public:
    struct Entry {
        std::string key;
        std::filesystem::path file;
        std::uintmax_t bytes = 0;
    };

    explicit SeriesCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// QMOMENTS_CACHE_DIR, else $HOME/.cache/qmoments, else ./.qmoments-cache
    static std::filesystem::path default_dir() {
        if (const char* d = std::getenv("QMOMENTS_CACHE_DIR"); d && *d) return d;
        if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "qmoments";
        return ".qmoments-cache";
    }

    const std::filesystem::path& dir() const { return dir_; }

    static std::string make_key(const std::string& spec, std::size_t prec) {
        return spec + " prec=" + std::to_string(prec);
    }

    std::optional<std::string> load_text(const std::string& key) const {
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        std::string first;
        std::getline(in, first);
        if (first != "key " + key) return std::nullopt;
        std::ostringstream rest;
        rest << in.rdbuf();
        return rest.str();
    }

    void store_text(const std::string& key, const std::string& body) const {
        std::filesystem::create_directories(dir_);
        const auto final_path = path_for(key);
        auto tmp = final_path;
        tmp += ".tmp." + std::to_string(::getpid());
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) throw error("cannot write cache file " + tmp.string());
            out << "key " << key << '\n' << body;
            if (!out.flush()) throw error("cannot write cache file " + tmp.string());
        }
        std::filesystem::rename(tmp, final_path);
    }

    std::optional<ZmSeries> load_zm(const std::string& key) const {
        auto text = load_text(key);
        if (!text) return std::nullopt;
        std::istringstream in(*text);
        return read_zmseries(in);
    }

    std::optional<QSeries> load_q(const std::string& key) const {
        auto text = load_text(key);
        if (!text) return std::nullopt;
        std::istringstream in(*text);
        return read_qseries(in);
    }

    template <class Ring>
    void store(const std::string& key, const basic_series<Ring>& s) const {
        store_text(key, to_text(s));
    }

    std::vector<Entry> list() const {
        std::vector<Entry> out;
        if (!std::filesystem::is_directory(dir_)) return out;
        for (const auto& e : std::filesystem::directory_iterator(dir_)) {
            if (!e.is_regular_file() || e.path().extension() != ".series") continue;
            std::ifstream in(e.path());
            std::string first;
            std::getline(in, first);
            if (first.rfind("key ", 0) != 0) continue;
            out.push_back({first.substr(4), e.path(), e.file_size()});
        }
        std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
        return out;
    }

    std::size_t clear() const {
        std::size_t n = 0;
        for (const auto& e : list()) n += std::filesystem::remove(e.file);
        return n;
    }

    std::filesystem::path path_for(const std::string& key) const {
        // FNV-1a, stable across platforms
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : key) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return dir_ / (std::string(buf) + ".series");
    }

private:
    std::filesystem::path dir_;
};

} // namespace qmoments
