#include "cap/names.hpp"

#include <mutex>
#include <unordered_set>

namespace cap {

namespace {
std::mutex g_mutex;
std::unordered_set<std::string>& table() {
  static std::unordered_set<std::string> t;
  return t;
}
}  // namespace

Name intern(const std::string& s) {
  std::lock_guard<std::mutex> lock(g_mutex);
  return &*table().insert(s).first;
}

const std::string& str(Name n) { return *n; }

}  // namespace cap
