#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "cwp/group.hpp"
#include "cwp/slp.hpp"

namespace cwp {

using Json = nlohmann::json;

// Names of the user-visible letters. Inverses are written "x^-1".
class SymbolTable {
 public:
  // Registers a fresh letter; throws InputError if the name is taken.
  Symbol declare(const std::string& name, SymbolKind kind);
  std::optional<Symbol> find(const std::string& name) const;
  // Parses "x" or "x^-1". Unknown names are declared as free generators when
  // `open`, otherwise rejected.
  Symbol parse(const std::string& text);
  std::string name(Symbol s) const;

  bool open = false;

 private:
  std::unordered_map<std::string, Symbol> by_name_;
  std::unordered_map<std::uint64_t, std::string> names_;
  std::uint32_t next_id_ = 0;
};

GroupPtr parse_group(const Json& j, SymbolTable& table);
Json group_to_json(const GroupNode& g, const SymbolTable& table);

CompressedWord parse_slp(const Json& j, SymbolTable& table, const std::shared_ptr<Store>& store);
Json slp_to_json(const CompressedWord& w, const SymbolTable& table);

Json read_json_file(const std::string& path);

}  // namespace cwp
