#pragma once

// A small regular-expression dialect for pattern fields. The whole field
// must match (implicit anchoring). Matching works on UTF-8 code points.
//
//   x        literal code point
//   .        any code point
//   [abc]    class; ranges a-z, negation [^...]
//   a|b      alternation
//   e* e+ e? repetition
//   (e)      grouping
//   \c       escapes c (including \. \| \* \/ \\)
//
// Nothing else (no anchors, counted repetition, backreferences or
// shorthand classes) is recognized, so behaviour is fixed independently
// of any host regex library.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace refnum {

class RegexError : public std::runtime_error {
 public:
  RegexError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class Regex {
 public:
  explicit Regex(std::string_view source);
  ~Regex();
  Regex(const Regex&) = delete;
  Regex& operator=(const Regex&) = delete;

  bool full_match(std::string_view subject) const;
  const std::string& source() const { return source_; }

  struct Node;

 private:
  std::string source_;
  std::unique_ptr<Node> root_;
};

/// Decodes UTF-8; invalid bytes decode as themselves.
std::u32string decode_utf8(std::string_view s);

}  // namespace refnum
