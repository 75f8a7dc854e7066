#include "divalg/algebra_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace divalg {

FormatError::FormatError(std::size_t line, std::string const& what)
    : AlgebraError("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    ++number;
    std::string line(text.substr(pos, end - pos));
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      out.push_back({number, std::move(line)});
    }
    pos = end + 1;
  }
  return out;
}

std::vector<long long> integers(Line const& line, std::size_t expected) {
  std::istringstream is(line.text);
  std::vector<long long> values;
  std::string token;
  while (is >> token) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(token, &used);
      if (used != token.size()) {
        throw std::invalid_argument(token);
      }
      values.push_back(v);
    } catch (std::logic_error const&) {
      throw FormatError(line.number, "expected an integer, got '" + token + "'");
    }
  }
  if (values.size() != expected) {
    throw FormatError(line.number, "expected " + std::to_string(expected) +
                                       " entries, got " +
                                       std::to_string(values.size()));
  }
  return values;
}

void write_table(std::ostream& os, Table const& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      os << (j ? " " : "") << int(t.at(i, j));
    }
    os << '\n';
  }
}

}  // namespace

Algebra parse_algebra(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) {
    throw FormatError(1, "empty algebra file");
  }
  std::istringstream header(lines[0].text);
  std::string kind;
  long long n = 0;
  std::string extra;
  if (!(header >> kind >> n) || (header >> extra)) {
    throw FormatError(lines[0].number, "expected '<kind> <n>'");
  }
  if (n < 1 || n > static_cast<long long>(kMaxElements)) {
    throw FormatError(lines[0].number, "size out of range");
  }
  auto const size = static_cast<std::size_t>(n);

  std::size_t cursor = 1;
  auto take_table = [&](char const* name) {
    std::vector<std::vector<long long>> rows;
    for (std::size_t i = 0; i < size; ++i) {
      if (cursor >= lines.size()) {
        throw FormatError(lines.back().number,
                          std::string("truncated ") + name + " table");
      }
      rows.push_back(integers(lines[cursor++], size));
    }
    return rows;
  };
  auto finish = [&] {
    if (cursor != lines.size()) {
      throw FormatError(lines[cursor].number, "trailing content");
    }
  };

  if (kind == "semigroup") {
    auto mul = take_table("mul");
    finish();
    return validate_semigroup(mul);
  }
  if (kind == "unary_semigroup") {
    auto mul = take_table("mul");
    if (cursor >= lines.size()) {
      throw FormatError(lines.back().number, "missing 'inv:' line");
    }
    auto inv_line = lines[cursor++];
    auto colon = inv_line.text.find(':');
    if (colon == std::string::npos ||
        inv_line.text.substr(0, colon).find("inv") == std::string::npos) {
      throw FormatError(inv_line.number, "expected 'inv: ...'");
    }
    inv_line.text.erase(0, colon + 1);
    auto inv = integers(inv_line, size);
    finish();
    return validate_unary_semigroup(mul, inv);
  }
  if (kind == "bimagma") {
    auto ld = take_table("ld");
    auto rd = take_table("rd");
    finish();
    return validate_bimagma(ld, rd);
  }
  throw FormatError(lines[0].number, "unknown algebra kind '" + kind + "'");
}

std::string write_algebra(Algebra const& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, Algebra const& a) {
  os << to_string(kind_of(a)) << ' ' << size_of(a) << '\n';
  if (auto const* s = std::get_if<FiniteSemigroup>(&a)) {
    write_table(os, s->mul_table());
  } else if (auto const* u = std::get_if<FiniteUnarySemigroup>(&a)) {
    write_table(os, u->mul_table());
    os << "inv:";
    for (auto v : u->inv_map()) {
      os << ' ' << int(v);
    }
    os << '\n';
  } else {
    auto const& b = std::get<FiniteBimagma>(a);
    write_table(os, b.ld_table());
    write_table(os, b.rd_table());
  }
  return os;
}

Algebra read_algebra_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

void write_algebra_file(std::string const& path, Algebra const& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << a;
}

}  // namespace divalg
