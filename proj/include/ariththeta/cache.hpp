#ifndef ARITHTHETA_CACHE_HPP
#define ARITHTHETA_CACHE_HPP

#include <map>
#include <optional>
#include <string>

#include "ariththeta/ratutil.hpp"

namespace ariththeta {

// Content-addressed on-disk store for enumeration results, keyed by a format
// version plus a caller-provided description string.  Directory comes from
// ARITHTHETA_CACHE; caching is disabled when the variable is unset.  Readers
// may run concurrently; writers publish with rename so readers never see a
// partial file.
class EnumerationCache {
  public:
    static EnumerationCache& instance();

    std::optional<std::map<Rat, Rat>> load(const std::string& key_text) const;
    void store(const std::string& key_text, const std::map<Rat, Rat>& counts) const;

    bool enabled() const { return !dir_.empty(); }

  private:
    EnumerationCache();
    std::string path_for(const std::string& key_text) const;
    std::string dir_;
};

}  // namespace ariththeta

#endif
