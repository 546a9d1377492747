#include "gwloc/cli/cache_file.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "gwloc/error.hpp"

namespace gwloc::cli {
namespace {

using EntryMap = std::map<IntegralKey, Rational>;

bool parse_int(const std::string& text, int& out) {
  if (text.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stoi(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == text.size();
}

enum class ReadStatus { Missing, Ok, Rejected };

ReadStatus read_entries(const std::string& path, EntryMap& entries, std::string& why) {
  std::ifstream in(path);
  if (!in) {
    if (!std::filesystem::exists(path)) return ReadStatus::Missing;
    why = "cannot open for reading";
    return ReadStatus::Rejected;
  }
  std::string line;
  if (!std::getline(in, line) || line != kCacheHeader) {
    why = "unrecognised header (expected '" + std::string(kCacheHeader) + "')";
    return ReadStatus::Rejected;
  }
  EntryMap parsed;
  for (std::size_t number = 2; std::getline(in, line); ++number) {
    if (line.empty()) continue;
    IntegralKey key;
    Rational value;
    if (!decode_entry(line, key, value)) {
      why = "malformed entry on line " + std::to_string(number);
      return ReadStatus::Rejected;
    }
    auto [it, inserted] = parsed.emplace(key, value);
    if (!inserted && it->second != value) {
      why = "conflicting values on line " + std::to_string(number);
      return ReadStatus::Rejected;
    }
  }
  entries.merge(parsed);
  return ReadStatus::Ok;
}

// Holds an exclusive flock on "<path>.lock" for its lifetime.
class FileLock {
 public:
  explicit FileLock(const std::string& path) {
    fd_ = ::open((path + ".lock").c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ >= 0 && ::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~FileLock() {
    if (fd_ >= 0) ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  bool held() const { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

}  // namespace

std::string encode_entry(const IntegralKey& key, const Rational& value) {
  std::ostringstream out;
  out << key.genus << ';';
  for (std::size_t i = 0; i < key.psi_exponents.size(); ++i) out << (i ? "," : "") << key.psi_exponents[i];
  out << ';' << key.lambda_power << ';' << value.str();
  return out.str();
}

bool decode_entry(const std::string& line, IntegralKey& key, Rational& value) {
  std::vector<std::string> fields;
  std::stringstream in(line);
  for (std::string field; std::getline(in, field, ';');) fields.push_back(field);
  if (fields.size() != 4) return false;

  int genus = 0;
  int lambda = 0;
  if (!parse_int(fields[0], genus) || !parse_int(fields[2], lambda)) return false;
  if (genus < 0 || lambda < 0) return false;
  std::vector<int> exponents;
  if (!fields[1].empty()) {
    std::stringstream list(fields[1]);
    for (std::string item; std::getline(list, item, ',');) {
      int a = 0;
      if (!parse_int(item, a) || a < 0) return false;
      exponents.push_back(a);
    }
  }
  try {
    value = Rational::parse(fields[3]);
  } catch (const Error&) {
    return false;
  }
  key = IntegralKey(genus, std::move(exponents), lambda);
  return true;
}

std::size_t load_cache(const std::string& path, IntegralCache& cache, std::ostream& warn) {
  EntryMap entries;
  std::string why;
  switch (read_entries(path, entries, why)) {
    case ReadStatus::Missing:
      return 0;
    case ReadStatus::Rejected:
      warn << "warning: ignoring integral cache " << path << ": " << why << '\n';
      return 0;
    case ReadStatus::Ok:
      break;
  }
  cache.merge({entries.begin(), entries.end()});
  return entries.size();
}

bool save_cache(const std::string& path, const IntegralCache& cache, std::ostream& warn) {
  FileLock lock(path);
  if (!lock.held()) {
    warn << "warning: cannot lock integral cache " << path << ": " << std::strerror(errno) << '\n';
    return false;
  }
  EntryMap entries;
  std::string why;
  if (read_entries(path, entries, why) == ReadStatus::Rejected) {
    warn << "warning: replacing unusable integral cache " << path << ": " << why << '\n';
    entries.clear();
  }
  for (auto& [key, value] : cache.entries()) entries.insert_or_assign(key, value);

  const std::string temp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::trunc);
    out << kCacheHeader << '\n';
    for (const auto& [key, value] : entries) out << encode_entry(key, value) << '\n';
    out.flush();
    if (!out) {
      warn << "warning: cannot write integral cache " << temp << '\n';
      std::filesystem::remove(temp);
      return false;
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    warn << "warning: cannot replace integral cache " << path << ": " << ec.message() << '\n';
    std::filesystem::remove(temp, ec);
    return false;
  }
  return true;
}

}  // namespace gwloc::cli
