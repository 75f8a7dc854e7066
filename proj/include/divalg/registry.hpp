#pragma once

// The table of named identities.  Loaded from `name: identity  # anchor`
// lines; entries in the [definitions] section are definitional rules
// (reconstruction of ' and of division on unary semigroups).

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "divalg/term.hpp"

namespace divalg {

struct RegistryEntry {
  Identity identity;
  std::string anchor;
  bool definition = false;
};

class UnknownIdentity : public std::runtime_error {
 public:
  explicit UnknownIdentity(std::string const& name)
      : std::runtime_error("unknown identity '" + name + "'"), name_(name) {}
  std::string const& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class Registry {
 public:
  static Registry parse(std::string_view text);
  static Registry load(std::string const& path);
  // The registry compiled into the library.
  static Registry const& builtin();

  bool contains(std::string const& name) const;
  RegistryEntry const& entry(std::string const& name) const;
  Identity const& at(std::string const& name) const {
    return entry(name).identity;
  }
  std::vector<Identity> resolve(std::vector<std::string> const& names) const;

  // In file order.
  std::vector<RegistryEntry> const& entries() const noexcept { return entries_; }
  // Non-definitional identities of the given side, in file order.  Side
  // semigroup also admits identities that only use '.
  std::vector<Identity> identities_for(Side side) const;

 private:
  std::vector<RegistryEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Splits "a,b, c" into names; empty input gives an empty list.
std::vector<std::string> split_names(std::string_view list);

}  // namespace divalg
