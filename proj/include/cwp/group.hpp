#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "cwp/finite_group.hpp"

namespace cwp {

// A finite group whose elements are letters of some alphabet.
struct FiniteEmbedding {
  FiniteGroupPtr group;
  std::vector<Symbol> symbols;  // element index -> letter
  std::unordered_map<std::uint64_t, int> index;

  FiniteEmbedding(FiniteGroupPtr g, std::vector<Symbol> letters);
  // Element denoted by a signed symbol, if the letter belongs to the group.
  std::optional<int> element(Symbol s) const;
  Symbol symbol(int x) const { return symbols[x]; }
};

using EmbeddingPtr = std::shared_ptr<const FiniteEmbedding>;

struct GroupNode;
using GroupPtr = std::shared_ptr<const GroupNode>;

struct FiniteDesc {
  EmbeddingPtr finite;
};

struct FreeDesc {
  std::vector<Symbol> generators;
};

struct FreeProductDesc {
  GroupPtr left;
  GroupPtr right;
};

// finite ⋊ F(letters): letter^-1 h letter = auto(h).
struct SemidirectDesc {
  EmbeddingPtr finite;
  std::vector<Symbol> letters;
  std::vector<PartialIso> autos;
};

// <base, letters | t_i^-1 a t_i = phi_i(a), a in dom(phi_i)>, with all
// dom(phi_i) <= A inside a_side and ran(phi_i) <= B inside b_side.
struct HnnDesc {
  GroupPtr base;
  EmbeddingPtr a_side;
  EmbeddingPtr b_side;
  std::vector<int> a_elements;
  std::vector<int> b_elements;
  std::vector<Symbol> letters;  // positive stable letters
  std::vector<PartialIso> isos;
  std::unordered_map<std::uint64_t, int> letter_index;

  // Index of the stable letter of s (any sign), or -1.
  int letter_of(Symbol s) const;
  int a_order() const { return static_cast<int>(a_elements.size()); }
};

// <h1 * h2 | a = iso(a), a in A1>; `letter` is the stable letter of the
// HNN-extension the amalgam embeds into.
struct AmalgamDesc {
  GroupPtr h1;
  GroupPtr h2;
  EmbeddingPtr g1;
  EmbeddingPtr g2;
  PartialIso iso;
  Symbol letter;
};

using GroupVariant = std::variant<FiniteDesc, FreeDesc, FreeProductDesc, SemidirectDesc, HnnDesc, AmalgamDesc>;

struct GroupNode {
  GroupVariant desc;
  std::string key;
  std::uint16_t scope_ceiling = 0;
  std::unordered_set<std::uint64_t> alphabet;  // letter keys

  bool owns(Symbol s) const { return alphabet.count(s.positive().key()) > 0; }
};

GroupPtr make_finite(EmbeddingPtr finite);
GroupPtr make_free(std::vector<Symbol> generators);
GroupPtr make_free_product(GroupPtr left, GroupPtr right);
GroupPtr make_semidirect(EmbeddingPtr finite, std::vector<Symbol> letters, std::vector<PartialIso> autos);
GroupPtr make_hnn(GroupPtr base, EmbeddingPtr a_side, EmbeddingPtr b_side, std::vector<int> a_elements,
                  std::vector<int> b_elements, std::vector<Symbol> letters, std::vector<PartialIso> isos);
GroupPtr make_amalgam(GroupPtr h1, GroupPtr h2, EmbeddingPtr g1, EmbeddingPtr g2, PartialIso iso);

// The finite group (declared as a Finite node inside g) containing the letter.
EmbeddingPtr finite_part_of(const GroupNode& g, Symbol s);

// Throws InputError naming every violated invariant.
void validate(const GroupNode& g);
std::vector<std::string> diagnose(const GroupNode& g);

}  // namespace cwp
