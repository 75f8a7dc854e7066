#pragma once

// Text format, one algebra per file:
//
//   unary_semigroup <n> | bimagma <n> | semigroup <n>
//   n rows of the first table (mul or ld)
//   inv: i0 ... i{n-1}          (unary semigroups)
//   n rows of rd                (bimagmas)
//
// `#` starts a comment and blank lines are ignored.  `write_algebra` emits
// the canonical text with no comments, so parse/write round-trips exactly on
// files it produced.

#include <iosfwd>
#include <string>
#include <string_view>

#include "divalg/algebra.hpp"

namespace divalg {

class FormatError : public AlgebraError {
 public:
  FormatError(std::size_t line, std::string const& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

Algebra parse_algebra(std::string_view text);
std::string write_algebra(Algebra const& a);

Algebra read_algebra_file(std::string const& path);
void write_algebra_file(std::string const& path, Algebra const& a);

std::ostream& operator<<(std::ostream& os, Algebra const& a);

}  // namespace divalg
