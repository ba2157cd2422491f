#pragma once

#include <stdexcept>
#include <string>

namespace cap {

// Raised when an internal safety fuel is exhausted (checker bug or
// non-contractive input that slipped past validation).
struct internal_error : std::runtime_error {
  explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a term or type fails eager construction-time validation:
// non-linear pattern, dom(theta) != fm(p), ill-sorted or non-contractive
// annotation, open type.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
  parse_error(const std::string& what, int line_, int col_)
      : std::runtime_error(what + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_),
        col(col_) {}
  int line;
  int col;
};

// lookup(A, pi) is partial: descending into a leaf is undefined.
struct undefined_lookup : std::runtime_error {
  explicit undefined_lookup(const std::string& what) : std::runtime_error(what) {}
};

// subpattern_at / succ index errors.
struct undefined_position : std::runtime_error {
  explicit undefined_position(const std::string& what) : std::runtime_error(what) {}
};

// subst_type with a replacement of the wrong sort.
struct sort_mismatch : std::runtime_error {
  explicit sort_mismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cap
