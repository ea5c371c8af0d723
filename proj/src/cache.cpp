#include "hallforge/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hallforge/errors.hpp"

namespace hallforge {

using nlohmann::json;

namespace {

class FileLock {
 public:
  explicit FileLock(const std::string& path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw CacheError("cannot open lock file " + path);
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw CacheError("cannot lock " + path);
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomically(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp);
    out << text;
    if (!out) throw CacheError("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CacheError("cannot replace " + path + ": " + ec.message());
}

bool is_complete_key(const std::string& key) {
  auto p = key.find('|');
  return p != std::string::npos && key.compare(p + 1, 9, "complete|") == 0;
}

}  // namespace

Cache::Cache(const Backend& backend)
    : backend_json_(backend.structure_json()), backend_name_(backend.name()) {}

Cache::Cache(const Backend& backend, std::string path) : Cache(backend) {
  path_ = std::move(path);
  FileLock lock(path_ + ".lock");
  auto text = read_file(path_);
  if (!text) return;
  auto parsed = parse(*text, path_, false);
  if (!parsed) {
    rebuilt_ = true;  // other format version: start over
    write_atomically(path_, dump({}));
    return;
  }
  entries_ = std::move(*parsed);
  for (auto& [k, v] : entries_) index(k);
}

std::string Cache::key(const std::string& backend, const std::string& sub, const std::string& quot,
                       const std::string& target) {
  return backend + "|" + sub + "|" + quot + "|" + target;
}

std::string Cache::complete_key(const std::string& backend, const std::string& target) {
  return backend + "|complete|" + target;
}

void Cache::index(const std::string& key) {
  if (is_complete_key(key)) return;
  auto p = key.rfind('|');
  if (p == std::string::npos) return;
  auto& v = by_target_[key.substr(p + 1)];
  if (std::find(v.begin(), v.end(), key) == v.end()) v.push_back(key);
}

std::optional<std::vector<Integer>> Cache::get(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Cache::keys_for_target(const std::string& target) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = by_target_.find(target);
  return it == by_target_.end() ? std::vector<std::string>{} : it->second;
}

void Cache::merge_into(Entries& dst, const Entries& src) const {
  for (auto& [k, v] : src) {
    auto [it, inserted] = dst.emplace(k, v);
    if (!inserted && it->second != v)
      throw CacheError("conflicting cache values for key '" + k + "'");
  }
}

void Cache::put(const std::vector<std::pair<std::string, std::vector<Integer>>>& batch) {
  std::lock_guard<std::mutex> lock(mu_);
  Entries incoming(batch.begin(), batch.end());
  if (persistent()) {
    FileLock flock(path_ + ".lock");
    Entries on_disk;
    if (auto text = read_file(path_))
      if (auto parsed = parse(*text, path_, false)) on_disk = std::move(*parsed);
    merge_into(on_disk, entries_);
    merge_into(on_disk, incoming);
    write_atomically(path_, dump(on_disk));
    entries_ = std::move(on_disk);
  } else {
    merge_into(entries_, incoming);
  }
  by_target_.clear();
  for (auto& [k, v] : entries_) index(k);
}

CacheStats Cache::stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  CacheStats s;
  s.version = kFormatVersion;
  s.path = path_;
  s.rebuilt = rebuilt_;
  for (auto& [k, v] : entries_) {
    if (is_complete_key(k))
      ++s.complete_targets;
    else
      ++s.entries;
  }
  return s;
}

void Cache::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.clear();
  by_target_.clear();
  if (persistent()) {
    FileLock flock(path_ + ".lock");
    write_atomically(path_, dump({}));
  }
}

std::string Cache::dump(const Entries& e) const {
  json j;
  j["version"] = kFormatVersion;
  j["backend"] = json::parse(backend_json_);
  json arr = json::array();
  for (auto& [k, v] : e) {
    json coeffs = json::array();
    for (auto& c : v) {
      if (!c.fits_slong_p()) throw CacheError("coefficient out of range for key '" + k + "'");
      coeffs.push_back(c.get_si());
    }
    arr.push_back({{"key", k}, {"coeffs", coeffs}});
  }
  j["entries"] = arr;
  return j.dump(1) + "\n";
}

std::optional<Cache::Entries> Cache::parse(const std::string& text, const std::string& origin,
                                           bool strict) const {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CacheError(origin + ": malformed cache file at byte " + std::to_string(e.byte));
  }
  if (!j.is_object() || !j.contains("version") || !j["version"].is_number_integer())
    throw CacheError(origin + ": not a hallforge cache file");
  int version = j["version"].get<int>();
  if (version != kFormatVersion) {
    if (strict)
      throw CacheError(origin + ": cache format version " + std::to_string(version) +
                       " does not match tool version " + std::to_string(kFormatVersion) +
                       "; re-export it with the matching tool, or recompute by deleting the file");
    return std::nullopt;
  }
  if (!j.contains("backend") || j["backend"].dump() != json::parse(backend_json_).dump())
    throw BackendMismatch(origin + ": cache belongs to a different backend than '" + backend_name_ + "'");
  Entries out;
  if (!j.contains("entries") || !j["entries"].is_array())
    throw CacheError(origin + ": missing entries array");
  for (auto& e : j["entries"]) {
    if (!e.contains("key") || !e["key"].is_string() || !e.contains("coeffs") || !e["coeffs"].is_array())
      throw CacheError(origin + ": malformed entry");
    std::vector<Integer> coeffs;
    for (auto& c : e["coeffs"]) {
      if (!c.is_number_integer()) throw CacheError(origin + ": non-integer coefficient");
      coeffs.emplace_back(static_cast<long>(c.get<long long>()));
    }
    out.emplace(e["key"].get<std::string>(), std::move(coeffs));
  }
  return out;
}

void Cache::export_to(const std::string& path) const {
  Entries copy;
  {
    std::lock_guard<std::mutex> lock(mu_);
    copy = entries_;
  }
  write_atomically(path, dump(copy));
}

void Cache::import_from(const std::string& path) {
  auto text = read_file(path);
  if (!text) throw CacheError("cannot read " + path);
  auto parsed = parse(*text, path, true);
  std::vector<std::pair<std::string, std::vector<Integer>>> batch(parsed->begin(), parsed->end());
  put(batch);
}

}  // namespace hallforge
