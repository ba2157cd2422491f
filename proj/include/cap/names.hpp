#pragma once

#include <string>

namespace cap {

// Interned name. Pointer equality is string equality; the table lives for
// the whole process.
using Name = const std::string*;

Name intern(const std::string& s);
const std::string& str(Name n);

}  // namespace cap
