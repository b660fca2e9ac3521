#include "ariththeta/cache.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ariththeta {

static const char* kFormatVersion = "ariththeta-cache-v1";

EnumerationCache& EnumerationCache::instance() {
    static EnumerationCache c;
    return c;
}

EnumerationCache::EnumerationCache() {
    const char* env = std::getenv("ARITHTHETA_CACHE");
    if (env && *env) {
        dir_ = env;
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) dir_.clear();
    }
}

static uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string EnumerationCache::path_for(const std::string& key_text) const {
    std::string full = std::string(kFormatVersion) + "|" + key_text;
    char buf[32];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(full)));
    return dir_ + "/" + buf + ".counts";
}

std::optional<std::map<Rat, Rat>> EnumerationCache::load(const std::string& key_text) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path_for(key_text));
    if (!in) return std::nullopt;
    std::string header;
    std::getline(in, header);
    if (header != std::string(kFormatVersion) + "|" + key_text) return std::nullopt;  // hash collision
    std::map<Rat, Rat> out;
    std::string t, c;
    while (in >> t >> c) out[parse_rat(t)] = parse_rat(c);
    return out;
}

void EnumerationCache::store(const std::string& key_text, const std::map<Rat, Rat>& counts) const {
    if (!enabled()) return;
    std::string path = path_for(key_text);
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << kFormatVersion << "|" << key_text << "\n";
        for (auto& [t, c] : counts) out << rat_str(t) << " " << rat_str(c) << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace ariththeta
