#pragma once

// Test helpers shared by the unit tests and the acceptance binary.

#include <string>
#include <variant>

#include "divalg/algebra.hpp"
#include "divalg/algebra_io.hpp"
#include "oracles/naive.hpp"

namespace testing_support {

inline oracle::Raw raw(divalg::Algebra const& a) {
  using namespace divalg;
  oracle::Raw r;
  r.n = int(size_of(a));
  if (auto const* s = std::get_if<FiniteSemigroup>(&a)) {
    r.a = s->mul_table().cells();
  } else if (auto const* u = std::get_if<FiniteUnarySemigroup>(&a)) {
    r.a = u->mul_table().cells();
    r.u = u->inv_map();
  } else {
    auto const& b = std::get<FiniteBimagma>(a);
    r.a = b.ld_table().cells();
    r.b = b.rd_table().cells();
  }
  return r;
}

inline divalg::Algebra algebra(oracle::Raw const& r) {
  using namespace divalg;
  std::size_t const n = std::size_t(r.n);
  if (!r.b.empty()) {
    return FiniteBimagma(Table(n, r.a), Table(n, r.b));
  }
  if (!r.u.empty()) {
    return FiniteUnarySemigroup(Table(n, r.a), r.u);
  }
  return FiniteSemigroup(Table(n, r.a));
}

inline divalg::Algebra parse(std::string const& text) {
  return divalg::parse_algebra(text);
}

}  // namespace testing_support
