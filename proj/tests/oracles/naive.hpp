#pragma once

// Reference implementations used only by tests.  Nothing here calls into the
// library: tables are plain byte vectors, identities are hand-written
// lambdas, canonical forms are computed by trying every permutation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Cells = std::vector<std::uint8_t>;

// A raw structure: up to two n x n tables (row-major) and an optional unary
// map.  Semigroups use `a` as the product; bimagmas use a = ld, b = rd.
struct Raw {
  int n = 0;
  Cells a;
  Cells b;
  Cells u;

  int A(int i, int j) const { return a[i * n + j]; }
  int B(int i, int j) const { return b[i * n + j]; }
  friend bool operator<(Raw const& x, Raw const& y) {
    return std::tie(x.n, x.a, x.b, x.u) < std::tie(y.n, y.a, y.b, y.u);
  }
  friend bool operator==(Raw const& x, Raw const& y) {
    return x.n == y.n && x.a == y.a && x.b == y.b && x.u == y.u;
  }
};

// Image of r under the bijection p (p[old] = new).
inline Raw permute(Raw const& r, std::vector<int> const& p) {
  Raw out{r.n, Cells(r.a.size()), Cells(r.b.size()), Cells(r.u.size())};
  for (int i = 0; i < r.n; ++i) {
    for (int j = 0; j < r.n; ++j) {
      if (!r.a.empty()) {
        out.a[p[i] * r.n + p[j]] = std::uint8_t(p[r.A(i, j)]);
      }
      if (!r.b.empty()) {
        out.b[p[i] * r.n + p[j]] = std::uint8_t(p[r.B(i, j)]);
      }
    }
    if (!r.u.empty()) {
      out.u[p[i]] = std::uint8_t(p[r.u[i]]);
    }
  }
  return out;
}

// Opposite structure: transposed product; for bimagmas ld(x,y) = rd(y,x)
// and rd(x,y) = ld(y,x).
inline Raw opposite(Raw const& r) {
  Raw out = r;
  for (int i = 0; i < r.n; ++i) {
    for (int j = 0; j < r.n; ++j) {
      if (r.b.empty()) {
        out.a[i * r.n + j] = r.a[j * r.n + i];
      } else {
        out.a[i * r.n + j] = r.b[j * r.n + i];
        out.b[i * r.n + j] = r.a[j * r.n + i];
      }
    }
  }
  return out;
}

inline Raw canon(Raw const& r) {
  std::vector<int> p(r.n);
  std::iota(p.begin(), p.end(), 0);
  Raw best = r;
  do {
    Raw c = permute(r, p);
    if (c < best) {
      best = c;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

inline Raw canon_anti(Raw const& r) {
  return std::min(canon(r), canon(opposite(r)));
}

inline bool associative(int n, Cells const& m) {
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (m[m[x * n + y] * n + z] != m[x * n + m[y * n + z]]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Every table over n elements, by counting in base n.
inline void each_table(int n, std::function<void(Cells const&)> const& f) {
  Cells t(std::size_t(n * n), 0);
  for (;;) {
    f(t);
    std::size_t k = 0;
    while (k < t.size() && ++t[k] == n) {
      t[k++] = 0;
    }
    if (k == t.size()) {
      return;
    }
  }
}

inline void each_map(int n, std::function<void(Cells const&)> const& f) {
  Cells u(std::size_t(n), 0);
  for (;;) {
    f(u);
    std::size_t k = 0;
    while (k < u.size() && ++u[k] == n) {
      u[k++] = 0;
    }
    if (k == u.size()) {
      return;
    }
  }
}

inline std::vector<Raw> semigroups(int n) {
  std::vector<Raw> out;
  each_table(n, [&](Cells const& m) {
    if (associative(n, m)) {
      out.push_back({n, m, {}, {}});
    }
  });
  return out;
}

struct Counts {
  std::size_t labeled = 0, iso = 0, anti = 0;
};

inline Counts semigroup_counts(int n) {
  auto all = semigroups(n);
  std::set<Raw> iso, anti;
  for (auto const& s : all) {
    iso.insert(canon(s));
    anti.insert(canon_anti(s));
  }
  return {all.size(), iso.size(), anti.size()};
}

// Operations seen by an identity.  On unary semigroups \ and / are x'y and
// xy'; on bimagmas ' is (x\x)/x, or x\(x/x) when `right` is set, and `*` is
// unavailable.
struct View {
  Raw const* r;
  bool semigroup;
  bool right = false;

  int mul(int x, int y) const { return r->A(x, y); }
  int p(int x) const {
    if (semigroup) {
      return r->u[x];
    }
    return right ? ld(x, rd(x, x)) : rd(ld(x, x), x);
  }
  int ld(int x, int y) const { return semigroup ? r->A(r->u[x], y) : r->A(x, y); }
  int rd(int x, int y) const { return semigroup ? r->A(x, r->u[y]) : r->B(x, y); }
};

using Law = std::function<bool(View const&, int, int, int)>;

struct Entry {
  // Readable on bimagmas (no `*`) / on unary semigroups (always).
  bool bimagma;
  Law law;
};

// Each registry identity, written out by hand.
inline std::map<std::string, Entry> const& laws() {
  static std::map<std::string, Entry> const m = {
      {"I1", {false, [](View const& v, int x, int, int) {
                return v.mul(v.mul(v.p(x), x), v.p(x)) == v.p(x); }}},
      {"I2", {false, [](View const& v, int x, int, int) {
                return v.mul(v.mul(x, v.p(x)), x) == x; }}},
      {"I3", {true, [](View const& v, int x, int, int) { return v.p(v.p(x)) == x; }}},
      {"I4a", {false, [](View const& v, int x, int, int) {
                 int e = v.mul(x, v.p(x));
                 return v.p(e) == e; }}},
      {"I4b", {false, [](View const& v, int x, int, int) {
                 int e = v.mul(v.p(x), x);
                 return v.p(e) == e; }}},
      {"I5", {false, [](View const& v, int x, int, int) {
                int e = v.mul(v.mul(x, v.p(v.mul(x, x))), x);
                return v.p(e) == e; }}},
      {"I6", {false, [](View const& v, int x, int y, int) {
                return v.p(v.mul(x, y)) == v.mul(v.p(y), v.p(x)); }}},
      {"I7", {false, [](View const& v, int x, int, int) {
                return v.mul(x, v.p(x)) == v.mul(v.p(x), x); }}},
      {"I8", {false, [](View const& v, int x, int y, int) {
                int e = v.mul(x, v.p(x)), f = v.mul(v.p(y), y);
                return v.mul(e, f) == v.mul(f, e); }}},
      {"tech-left", {false, [](View const& v, int x, int y, int) {
                       return v.mul(v.p(v.p(x)), y) == v.mul(x, y); }}},
      {"tech-right", {false, [](View const& v, int x, int y, int) {
                        return v.mul(x, v.p(v.p(y))) == v.mul(x, y); }}},
      {"B1", {true, [](View const& v, int x, int y, int z) {
                return v.rd(v.ld(x, y), z) == v.ld(x, v.rd(y, z)); }}},
      {"B2", {true, [](View const& v, int x, int y, int) {
                return v.rd(x, v.p(y)) == v.ld(v.p(x), y); }}},
      {"B3", {true, [](View const& v, int x, int, int) { return v.rd(x, v.ld(x, x)) == x; }}},
      {"comp1", {true, [](View const& v, int x, int y, int) {
                   return v.ld(v.p(x), v.p(y)) == v.rd(x, y); }}},
      {"comp2", {true, [](View const& v, int x, int y, int) {
                   return v.rd(v.p(x), v.p(y)) == v.ld(x, y); }}},
      {"reg2", {true, [](View const& v, int x, int, int) {
                  return v.ld(v.p(x), v.ld(x, x)) == x; }}},
      {"reg2-mirror", {true, [](View const& v, int x, int, int) {
                         return v.rd(v.rd(x, x), v.p(x)) == x; }}},
      {"str3", {true, [](View const& v, int x, int, int) { return v.ld(v.rd(x, x), x) == x; }}},
      {"ir4", {true, [](View const& v, int x, int y, int) {
                 int t = v.rd(x, v.ld(y, x));
                 return v.rd(t, v.ld(y, y)) == v.ld(v.rd(t, y), y); }}},
      {"reginv1", {true, [](View const& v, int x, int y, int) {
                     return v.p(v.rd(x, y)) == v.rd(y, x); }}},
      {"invcase", {true, [](View const& v, int x, int y, int) {
                     return v.rd(v.ld(x, x), v.rd(y, y)) == v.rd(v.rd(y, y), v.ld(x, x)); }}},
      {"cr4", {true, [](View const& v, int x, int, int) { return v.rd(x, x) == v.ld(x, x); }}},
      {"T1", {true, [](View const& v, int x, int y, int z) {
                return v.ld(v.rd(x, y), z) == v.rd(y, v.ld(z, x)); }}},
      {"T2", {true, [](View const& v, int x, int, int) { return v.ld(v.rd(x, x), x) == x; }}},
      {"T3", {true, [](View const& v, int x, int y, int) {
                return v.rd(x, v.p(y)) == v.ld(v.p(x), y); }}},
      {"T4", {true, [](View const& v, int x, int y, int) {
                return v.p(v.rd(x, y)) == v.rd(y, x); }}},
      {"T5", {true, [](View const& v, int x, int y, int) {
                return v.rd(v.rd(x, x), v.rd(y, y)) == v.rd(v.rd(y, y), v.rd(x, x)); }}},
      {"T6", {true, [](View const& v, int x, int y, int) {
                return v.ld(v.rd(x, x), v.ld(y, y)) == v.ld(y, v.rd(y, v.rd(x, x))); }}},
      {"KS2", {true, [](View const& v, int x, int y, int) { return v.ld(v.rd(x, y), x) == y; }}},
      {"idem", {false, [](View const& v, int x, int, int) { return v.mul(x, x) == x; }}},
  };
  return m;
}

inline bool holds(std::string const& name, Raw const& r, bool semigroup, bool right = false) {
  View const v{&r, semigroup, right};
  auto const& law = laws().at(name).law;
  for (int x = 0; x < r.n; ++x) {
    for (int y = 0; y < r.n; ++y) {
      for (int z = 0; z < r.n; ++z) {
        if (!law(v, x, y, z)) {
          return false;
        }
      }
    }
  }
  return true;
}

struct Spec {
  bool semigroup = false;
  std::vector<std::string> require;
  std::string forbid;  // empty: none
  // Bimagmas only: read ' as x\(x/x).
  bool right = false;
};

inline bool admits(Spec const& s, Raw const& r) {
  for (auto const& name : s.require) {
    if (!holds(name, r, s.semigroup, s.right)) {
      return false;
    }
  }
  return s.forbid.empty() || !holds(s.forbid, r, s.semigroup, s.right);
}

// Every labeled model of `s` with n elements, no pruning.
inline std::vector<Raw> models(Spec const& s, int n) {
  std::vector<Raw> out;
  if (s.semigroup) {
    for (auto const& sg : semigroups(n)) {
      each_map(n, [&](Cells const& u) {
        Raw r{n, sg.a, {}, u};
        if (admits(s, r)) {
          out.push_back(r);
        }
      });
    }
    return out;
  }
  std::vector<Cells> tables;
  each_table(n, [&](Cells const& t) { tables.push_back(t); });
  for (auto const& ld : tables) {
    for (auto const& rd : tables) {
      Raw r{n, ld, rd, {}};
      if (admits(s, r)) {
        out.push_back(r);
      }
    }
  }
  return out;
}

// Labeled bimagmas of size 3 satisfying B1, by brute force over all 3^18
// table pairs with a direct triple scan.
inline std::vector<Raw> b1_models_size3() {
  constexpr int n = 3;
  std::vector<Cells> tables;
  each_table(n, [&](Cells const& t) { tables.push_back(t); });
  std::vector<Raw> out;
  for (auto const& ld : tables) {
    for (auto const& rd : tables) {
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) {
        for (int y = 0; y < n && ok; ++y) {
          for (int z = 0; z < n && ok; ++z) {
            ok = rd[ld[x * n + y] * n + z] == ld[x * n + rd[y * n + z]];
          }
        }
      }
      if (ok) {
        out.push_back({n, ld, rd, {}});
      }
    }
  }
  return out;
}

inline std::set<Raw> canonical_set(std::vector<Raw> const& v) {
  std::set<Raw> out;
  for (auto const& r : v) {
    out.insert(canon(r));
  }
  return out;
}

}  // namespace oracle
