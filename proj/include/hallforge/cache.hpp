#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hallforge/backend.hpp"
#include "hallforge/rational.hpp"

namespace hallforge {

struct CacheStats {
  std::size_t entries = 0;
  std::size_t complete_targets = 0;
  int version = 0;
  std::string path;
  bool rebuilt = false;  // an incompatible on-disk file was discarded at open
};

/// Write-through store of Hall polynomial coefficients keyed by canonical
/// strings "<backend>|<sub>|<quot>|<target>". A target whose full table is
/// present also carries "<backend>|complete|<target>" -> [entry count].
///
/// Persistent caches hold an exclusive lock on "<path>.lock" while merging and
/// rewriting; writes of an existing key must agree with the stored value.
class Cache {
 public:
  static constexpr int kFormatVersion = 1;

  Cache(const Backend& backend);  // in-memory only
  Cache(const Backend& backend, std::string path);

  bool persistent() const { return !path_.empty(); }

  std::optional<std::vector<Integer>> get(const std::string& key) const;
  /// Keys of entries whose last component is `target`.
  std::vector<std::string> keys_for_target(const std::string& target) const;
  void put(const std::vector<std::pair<std::string, std::vector<Integer>>>& batch);

  CacheStats stats() const;
  void clear();
  /// Writes the current contents in the file format to `path`.
  void export_to(const std::string& path) const;
  /// Merges a previously exported file; refuses other versions or backends.
  void import_from(const std::string& path);

  static std::string key(const std::string& backend, const std::string& sub,
                         const std::string& quot, const std::string& target);
  static std::string complete_key(const std::string& backend, const std::string& target);

 private:
  using Entries = std::map<std::string, std::vector<Integer>>;

  std::string dump(const Entries& e) const;
  // Parses file contents; returns nullopt when the version differs.
  std::optional<Entries> parse(const std::string& text, const std::string& origin,
                               bool strict) const;
  void merge_into(Entries& dst, const Entries& src) const;
  void index(const std::string& key);

  std::string backend_json_;
  std::string backend_name_;
  std::string path_;
  Entries entries_;
  std::map<std::string, std::vector<std::string>> by_target_;
  bool rebuilt_ = false;
  mutable std::mutex mu_;
};

}  // namespace hallforge
