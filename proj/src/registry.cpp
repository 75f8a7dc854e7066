#include "divalg/registry.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "registry_text.hpp"

namespace divalg {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Registry Registry::parse(std::string_view text) {
  Registry reg;
  bool definitions = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string anchor;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      anchor = trim(std::string_view(line).substr(hash + 1));
      line.erase(hash);
    }
    auto body = trim(line);
    if (body.empty()) {
      continue;
    }
    if (body == "[identities]") {
      definitions = false;
      continue;
    }
    if (body == "[definitions]") {
      definitions = true;
      continue;
    }
    auto colon = body.find(':');
    if (colon == std::string::npos) {
      throw std::runtime_error("registry line " + std::to_string(line_no) +
                               ": expected 'name: identity'");
    }
    auto name = trim(std::string_view(body).substr(0, colon));
    if (reg.index_.contains(name)) {
      throw std::runtime_error("registry line " + std::to_string(line_no) +
                               ": duplicate name '" + name + "'");
    }
    std::optional<Identity> id;
    try {
      id = parse_identity(std::string_view(body).substr(colon + 1), name);
    } catch (SyntaxError const& e) {
      throw std::runtime_error("registry line " + std::to_string(line_no) +
                               ": " + e.what());
    }
    reg.index_.emplace(name, reg.entries_.size());
    reg.entries_.push_back({std::move(*id), std::move(anchor), definitions});
  }
  return reg;
}

Registry Registry::load(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open registry " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Registry const& Registry::builtin() {
  static Registry const reg = parse(detail::kRegistryText);
  return reg;
}

bool Registry::contains(std::string const& name) const {
  return index_.contains(name);
}

RegistryEntry const& Registry::entry(std::string const& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    throw UnknownIdentity(name);
  }
  return entries_[it->second];
}

std::vector<Identity> Registry::resolve(
    std::vector<std::string> const& names) const {
  std::vector<Identity> out;
  out.reserve(names.size());
  for (auto const& n : names) {
    out.push_back(at(n));
  }
  return out;
}

std::vector<Identity> Registry::identities_for(Side side) const {
  std::vector<Identity> out;
  for (auto const& e : entries_) {
    if (!e.definition && e.identity.side == side) {
      out.push_back(e.identity);
    }
  }
  return out;
}

std::vector<std::string> split_names(std::string_view list) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    auto comma = list.find(',', pos);
    if (comma == std::string_view::npos) {
      comma = list.size();
    }
    auto name = trim(list.substr(pos, comma - pos));
    if (!name.empty()) {
      out.push_back(std::move(name));
    }
    pos = comma + 1;
  }
  return out;
}

}  // namespace divalg
