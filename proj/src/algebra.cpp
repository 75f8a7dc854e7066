#include "divalg/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace divalg {

namespace {

std::string out_of_range_message(std::string const& table, std::size_t row,
                                 std::size_t col, long long value) {
  std::ostringstream os;
  os << "entry out of range in " << table << " at (" << row << ", " << col
     << "): " << value;
  return os.str();
}

std::string nonassoc_message(Element i, Element j, Element k) {
  std::ostringstream os;
  os << "multiplication is not associative at (" << int(i) << ", " << int(j)
     << ", " << int(k) << ")";
  return os.str();
}

std::vector<Element> relabel_map(std::vector<Element> const& map,
                                 std::span<Element const> perm) {
  std::vector<Element> out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    out[perm[i]] = perm[map[i]];
  }
  return out;
}

void check_perm(std::span<Element const> perm, std::size_t n) {
  if (perm.size() != n) {
    throw ShapeError("permutation has wrong length");
  }
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) {
      throw ShapeError("not a permutation");
    }
    seen[p] = true;
  }
}

}  // namespace

OutOfRangeEntry::OutOfRangeEntry(std::string table, std::size_t row,
                                 std::size_t col, long long value)
    : AlgebraError(out_of_range_message(table, row, col, value)),
      table_(std::move(table)),
      row_(row),
      col_(col) {}

NonAssociative::NonAssociative(Element i, Element j, Element k)
    : AlgebraError(nonassoc_message(i, j, k)), i_(i), j_(j), k_(k) {}

Table::Table(std::size_t n, std::vector<Element> cells)
    : n_(n), cells_(std::move(cells)) {
  if (n == 0 || n > kMaxElements) {
    throw ShapeError("table size must be in [1, " +
                     std::to_string(kMaxElements) + "]");
  }
  if (cells_.size() != n * n) {
    throw ShapeError("table is not square");
  }
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    if (cells_[k] >= n) {
      throw OutOfRangeEntry("table", k / n, k % n, cells_[k]);
    }
  }
}

Table Table::from_rows(std::vector<std::vector<long long>> const& rows,
                       std::string const& name) {
  std::size_t const n = rows.size();
  if (n == 0 || n > kMaxElements) {
    throw ShapeError(name + ": table size must be in [1, " +
                     std::to_string(kMaxElements) + "]");
  }
  std::vector<Element> cells;
  cells.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ShapeError(name + ": row " + std::to_string(i) +
                       " has wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      long long v = rows[i][j];
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw OutOfRangeEntry(name, i, j, v);
      }
      cells.push_back(static_cast<Element>(v));
    }
  }
  return Table(n, std::move(cells));
}

Table Table::transposed() const {
  std::vector<Element> out(cells_.size());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      out[j * n_ + i] = at(i, j);
    }
  }
  return Table(n_, std::move(out));
}

Table Table::relabeled(std::span<Element const> perm) const {
  check_perm(perm, n_);
  std::vector<Element> out(cells_.size());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      out[perm[i] * n_ + perm[j]] = perm[at(i, j)];
    }
  }
  return Table(n_, std::move(out));
}

std::optional<Triple> first_nonassociative_triple(Table const& mul) {
  std::size_t const n = mul.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto const ij = mul.at(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (mul.at(ij, k) != mul.at(i, mul.at(j, k))) {
          return Triple{Element(i), Element(j), Element(k)};
        }
      }
    }
  }
  return std::nullopt;
}

FiniteSemigroup::FiniteSemigroup(Table mul) : mul_(std::move(mul)) {
  if (auto t = first_nonassociative_triple(mul_)) {
    throw NonAssociative(t->i, t->j, t->k);
  }
}

FiniteUnarySemigroup::FiniteUnarySemigroup(Table mul, std::vector<Element> inv)
    : mul_(std::move(mul)), inv_(std::move(inv)) {
  if (inv_.size() != mul_.size()) {
    throw ShapeError("inv has wrong length");
  }
  for (std::size_t i = 0; i < inv_.size(); ++i) {
    if (inv_[i] >= mul_.size()) {
      throw OutOfRangeEntry("inv", i, 0, inv_[i]);
    }
  }
  if (auto t = first_nonassociative_triple(mul_)) {
    throw NonAssociative(t->i, t->j, t->k);
  }
}

FiniteBimagma::FiniteBimagma(Table ld, Table rd)
    : ld_(std::move(ld)), rd_(std::move(rd)) {
  if (ld_.size() != rd_.size()) {
    throw ShapeError("ld and rd tables differ in size");
  }
}

AlgebraKind kind_of(Algebra const& a) noexcept {
  return static_cast<AlgebraKind>(a.index());
}

std::size_t size_of(Algebra const& a) noexcept {
  return std::visit([](auto const& x) { return x.size(); }, a);
}

std::string to_string(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::semigroup:
      return "semigroup";
    case AlgebraKind::unary_semigroup:
      return "unary_semigroup";
    case AlgebraKind::bimagma:
      return "bimagma";
  }
  return "?";
}

FiniteSemigroup validate_semigroup(
    std::vector<std::vector<long long>> const& mul) {
  return FiniteSemigroup(Table::from_rows(mul, "mul"));
}

FiniteUnarySemigroup validate_unary_semigroup(
    std::vector<std::vector<long long>> const& mul,
    std::vector<long long> const& inv) {
  auto table = Table::from_rows(mul, "mul");
  if (inv.size() != table.size()) {
    throw ShapeError("inv has wrong length");
  }
  std::vector<Element> map;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (inv[i] < 0 || static_cast<std::size_t>(inv[i]) >= table.size()) {
      throw OutOfRangeEntry("inv", i, 0, inv[i]);
    }
    map.push_back(static_cast<Element>(inv[i]));
  }
  return FiniteUnarySemigroup(std::move(table), std::move(map));
}

FiniteBimagma validate_bimagma(std::vector<std::vector<long long>> const& ld,
                               std::vector<std::vector<long long>> const& rd) {
  return FiniteBimagma(Table::from_rows(ld, "ld"), Table::from_rows(rd, "rd"));
}

bool is_idempotent(FiniteUnarySemigroup const& s, Element e) {
  return s.mul(e, e) == e;
}

bool is_idempotent(FiniteSemigroup const& s, Element e) {
  return s.mul(e, e) == e;
}

Algebra relabel(Algebra const& a, std::span<Element const> perm) {
  struct Visitor {
    std::span<Element const> perm;
    Algebra operator()(FiniteSemigroup const& s) const {
      return FiniteSemigroup(s.mul_table().relabeled(perm));
    }
    Algebra operator()(FiniteUnarySemigroup const& s) const {
      return FiniteUnarySemigroup(s.mul_table().relabeled(perm),
                                  relabel_map(s.inv_map(), perm));
    }
    Algebra operator()(FiniteBimagma const& b) const {
      return FiniteBimagma(b.ld_table().relabeled(perm),
                           b.rd_table().relabeled(perm));
    }
  };
  return std::visit(Visitor{perm}, a);
}

Algebra anti(Algebra const& a) {
  struct Visitor {
    Algebra operator()(FiniteSemigroup const& s) const {
      return FiniteSemigroup(s.mul_table().transposed());
    }
    Algebra operator()(FiniteUnarySemigroup const& s) const {
      return FiniteUnarySemigroup(s.mul_table().transposed(), s.inv_map());
    }
    Algebra operator()(FiniteBimagma const& b) const {
      return FiniteBimagma(b.rd_table().transposed(),
                           b.ld_table().transposed());
    }
  };
  return std::visit(Visitor{}, a);
}

std::vector<Element> serialize(Algebra const& a) {
  struct Visitor {
    std::vector<Element> operator()(FiniteSemigroup const& s) const {
      return s.mul_table().cells();
    }
    std::vector<Element> operator()(FiniteUnarySemigroup const& s) const {
      auto out = s.mul_table().cells();
      out.insert(out.end(), s.inv_map().begin(), s.inv_map().end());
      return out;
    }
    std::vector<Element> operator()(FiniteBimagma const& b) const {
      auto out = b.ld_table().cells();
      out.insert(out.end(), b.rd_table().cells().begin(),
                 b.rd_table().cells().end());
      return out;
    }
  };
  return std::visit(Visitor{}, a);
}

namespace {

// Serialization of the relabeled algebra, computed straight from the source
// bytes.  Layout: a sequence of n x n blocks followed by `unary` length-n
// maps.
struct Layout {
  std::size_t n;
  std::size_t binary_blocks;
  std::size_t unary_blocks;
};

Layout layout_of(Algebra const& a) {
  std::size_t const n = size_of(a);
  switch (kind_of(a)) {
    case AlgebraKind::semigroup:
      return {n, 1, 0};
    case AlgebraKind::unary_semigroup:
      return {n, 1, 1};
    case AlgebraKind::bimagma:
      return {n, 2, 0};
  }
  return {n, 0, 0};
}

void relabel_bytes(Layout const& l, std::vector<Element> const& src,
                   std::vector<Element> const& perm, std::vector<Element>& out) {
  std::size_t const n = l.n;
  std::size_t const nn = n * n;
  for (std::size_t b = 0; b < l.binary_blocks; ++b) {
    auto const* in = src.data() + b * nn;
    auto* dst = out.data() + b * nn;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        dst[perm[i] * n + perm[j]] = perm[in[i * n + j]];
      }
    }
  }
  std::size_t const base = l.binary_blocks * nn;
  for (std::size_t u = 0; u < l.unary_blocks; ++u) {
    auto const* in = src.data() + base + u * n;
    auto* dst = out.data() + base + u * n;
    for (std::size_t i = 0; i < n; ++i) {
      dst[perm[i]] = perm[in[i]];
    }
  }
}

}  // namespace

CanonicalForm canonical_form(Algebra const& a) {
  auto const layout = layout_of(a);
  auto const src = serialize(a);
  std::vector<Element> perm(layout.n);
  std::iota(perm.begin(), perm.end(), Element{0});
  std::vector<Element> best = src;
  std::vector<Element> scratch(src.size());
  do {
    relabel_bytes(layout, src, perm, scratch);
    if (scratch < best) {
      best.swap(scratch);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return CanonicalForm{kind_of(a), static_cast<std::uint8_t>(layout.n),
                       std::move(best)};
}

CanonicalForm canonical_form_up_to_anti(Algebra const& a) {
  return std::min(canonical_form(a), canonical_form(anti(a)));
}

bool isomorphic(Algebra const& a, Algebra const& b) {
  return kind_of(a) == kind_of(b) && size_of(a) == size_of(b) &&
         canonical_form(a) == canonical_form(b);
}

Algebra from_canonical(CanonicalForm const& f) {
  std::size_t const n = f.size;
  std::size_t const nn = n * n;
  auto block = [&](std::size_t b) {
    return Table(n, std::vector<Element>(f.bytes.begin() + b * nn,
                                         f.bytes.begin() + (b + 1) * nn));
  };
  switch (f.kind) {
    case AlgebraKind::semigroup:
      return FiniteSemigroup(block(0));
    case AlgebraKind::unary_semigroup:
      return FiniteUnarySemigroup(
          block(0), std::vector<Element>(f.bytes.begin() + nn, f.bytes.end()));
    case AlgebraKind::bimagma:
      return FiniteBimagma(block(0), block(1));
  }
  throw AlgebraError("unknown algebra kind");
}

}  // namespace divalg
