#include "divalg/functors.hpp"

#include <sstream>

namespace divalg {

std::string ReconstructionReport::to_string() const {
  std::ostringstream os;
  if (ok() && !nonassociative) {
    os << "reconstruction ok\n";
    return os.str();
  }
  for (auto x : prime_disagreements) {
    os << "prime ill-defined at " << int(x) << ": (x\\x)/x != x\\(x/x)\n";
  }
  for (auto [x, y] : mul_disagreements) {
    os << "product ill-defined at (" << int(x) << ", " << int(y)
       << "): x/y' != x'\\y\n";
  }
  if (nonassociative) {
    os << "reconstructed product not associative at (" << int(nonassociative->i)
       << ", " << int(nonassociative->j) << ", " << int(nonassociative->k)
       << ")\n";
  }
  return os.str();
}

IllDefined::IllDefined(ReconstructionReport r)
    : std::runtime_error("reconstruction is ill-defined:\n" + r.to_string()),
      report_(std::move(r)) {}

FiniteBimagma to_division_bimagma(FiniteUnarySemigroup const& s) {
  std::size_t const n = s.size();
  std::vector<Element> ld(n * n), rd(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ld[i * n + j] = s.mul(s.inv(Element(i)), Element(j));
      rd[i * n + j] = s.mul(Element(i), s.inv(Element(j)));
    }
  }
  return FiniteBimagma(Table(n, std::move(ld)), Table(n, std::move(rd)));
}

namespace {

std::vector<Element> reconstructed_prime(FiniteBimagma const& b) {
  std::vector<Element> inv(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) {
    inv[x] = b.rd(b.ld(Element(x), Element(x)), Element(x));
  }
  return inv;
}

}  // namespace

ReconstructionReport reconstruction_report(FiniteBimagma const& b) {
  ReconstructionReport r;
  std::size_t const n = b.size();
  auto const inv = reconstructed_prime(b);
  for (std::size_t x = 0; x < n; ++x) {
    if (inv[x] != b.ld(Element(x), b.rd(Element(x), Element(x)))) {
      r.prime_disagreements.push_back(Element(x));
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (b.rd(Element(x), inv[y]) != b.ld(inv[x], Element(y))) {
        r.mul_disagreements.emplace_back(Element(x), Element(y));
      }
    }
  }
  if (r.ok()) {
    std::vector<Element> mul(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        mul[x * n + y] = b.rd(Element(x), inv[y]);
      }
    }
    r.nonassociative = first_nonassociative_triple(Table(n, std::move(mul)));
  }
  return r;
}

Reconstruction try_to_unary_semigroup(FiniteBimagma const& b) {
  Reconstruction out{reconstruction_report(b), std::nullopt};
  if (out.report.ok() && !out.report.nonassociative) {
    std::size_t const n = b.size();
    auto inv = reconstructed_prime(b);
    std::vector<Element> mul(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        mul[x * n + y] = b.rd(Element(x), inv[y]);
      }
    }
    out.semigroup.emplace(Table(n, std::move(mul)), std::move(inv));
  }
  return out;
}

FiniteUnarySemigroup to_unary_semigroup(FiniteBimagma const& b) {
  auto r = try_to_unary_semigroup(b);
  if (!r.report.ok()) {
    throw IllDefined(std::move(r.report));
  }
  if (r.report.nonassociative) {
    auto t = *r.report.nonassociative;
    throw NonAssociative(t.i, t.j, t.k);
  }
  return std::move(*r.semigroup);
}

bool roundtrip_check(FiniteUnarySemigroup const& s) {
  auto r = try_to_unary_semigroup(to_division_bimagma(s));
  return r.semigroup && *r.semigroup == s;
}

bool roundtrip_check(FiniteBimagma const& b) {
  auto const t = try_to_unary_semigroup(b);
  return t.semigroup && to_division_bimagma(*t.semigroup) == b;
}

}  // namespace divalg
