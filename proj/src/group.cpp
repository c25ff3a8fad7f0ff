#include "cwp/group.hpp"

#include <algorithm>

namespace cwp {

FiniteEmbedding::FiniteEmbedding(FiniteGroupPtr g, std::vector<Symbol> letters)
    : group(std::move(g)), symbols(std::move(letters)) {
  if (static_cast<int>(symbols.size()) != group->order())
    throw std::invalid_argument("embedding needs one letter per element");
  for (int i = 0; i < group->order(); ++i) index.emplace(symbols[i].positive().key(), i);
}

std::optional<int> FiniteEmbedding::element(Symbol s) const {
  auto it = index.find(s.positive().key());
  if (it == index.end()) return std::nullopt;
  return s.sign < 0 ? group->inv(it->second) : it->second;
}

int HnnDesc::letter_of(Symbol s) const {
  auto it = letter_index.find(s.positive().key());
  return it == letter_index.end() ? -1 : it->second;
}

namespace {

std::string symbols_key(const std::vector<Symbol>& symbols) {
  std::string out;
  for (Symbol s : symbols) out += std::to_string(s.letter_key()) + ",";
  return out;
}

std::string elements_key(const std::vector<int>& elements) {
  std::string out;
  for (int x : elements) out += std::to_string(x) + ",";
  return out;
}

std::uint16_t ceiling_of(const std::vector<Symbol>& symbols) {
  std::uint16_t c = 0;
  for (Symbol s : symbols) c = std::max(c, s.scope);
  return c;
}

void add_letters(GroupNode& node, const std::vector<Symbol>& symbols) {
  for (Symbol s : symbols) node.alphabet.insert(s.positive().key());
  node.scope_ceiling = std::max(node.scope_ceiling, ceiling_of(symbols));
}

void inherit(GroupNode& node, const GroupNode& child) {
  node.alphabet.insert(child.alphabet.begin(), child.alphabet.end());
  node.scope_ceiling = std::max(node.scope_ceiling, child.scope_ceiling);
}

}  // namespace

GroupPtr make_finite(EmbeddingPtr finite) {
  auto node = std::make_shared<GroupNode>();
  node->key = "F(" + finite->group->key() + symbols_key(finite->symbols) + ")";
  add_letters(*node, finite->symbols);
  node->desc = FiniteDesc{std::move(finite)};
  return node;
}

GroupPtr make_free(std::vector<Symbol> generators) {
  auto node = std::make_shared<GroupNode>();
  node->key = "L(" + symbols_key(generators) + ")";
  add_letters(*node, generators);
  node->desc = FreeDesc{std::move(generators)};
  return node;
}

GroupPtr make_free_product(GroupPtr left, GroupPtr right) {
  auto node = std::make_shared<GroupNode>();
  node->key = "P(" + left->key + "|" + right->key + ")";
  inherit(*node, *left);
  inherit(*node, *right);
  node->desc = FreeProductDesc{std::move(left), std::move(right)};
  return node;
}

GroupPtr make_semidirect(EmbeddingPtr finite, std::vector<Symbol> letters, std::vector<PartialIso> autos) {
  auto node = std::make_shared<GroupNode>();
  node->key = "S(" + finite->group->key() + symbols_key(finite->symbols) + "|" + symbols_key(letters);
  for (auto& a : autos) node->key += "|" + a.key();
  node->key += ")";
  add_letters(*node, finite->symbols);
  add_letters(*node, letters);
  node->desc = SemidirectDesc{std::move(finite), std::move(letters), std::move(autos)};
  return node;
}

GroupPtr make_hnn(GroupPtr base, EmbeddingPtr a_side, EmbeddingPtr b_side, std::vector<int> a_elements,
                  std::vector<int> b_elements, std::vector<Symbol> letters, std::vector<PartialIso> isos) {
  auto node = std::make_shared<GroupNode>();
  node->key = "H(" + base->key + "|" + symbols_key(a_side->symbols) + "|" + symbols_key(b_side->symbols) + "|" +
              elements_key(a_elements) + "|" + elements_key(b_elements) + "|" + symbols_key(letters);
  for (auto& a : isos) node->key += "|" + a.key();
  node->key += ")";
  inherit(*node, *base);
  add_letters(*node, letters);
  HnnDesc d{std::move(base), std::move(a_side), std::move(b_side), std::move(a_elements),
            std::move(b_elements), std::move(letters), std::move(isos), {}};
  for (int i = 0; i < static_cast<int>(d.letters.size()); ++i) d.letter_index.emplace(d.letters[i].positive().key(), i);
  node->desc = std::move(d);
  return node;
}

GroupPtr make_amalgam(GroupPtr h1, GroupPtr h2, EmbeddingPtr g1, EmbeddingPtr g2, PartialIso iso) {
  auto node = std::make_shared<GroupNode>();
  node->key = "A(" + h1->key + "|" + h2->key + "|" + symbols_key(g1->symbols) + "|" + symbols_key(g2->symbols) +
              "|" + iso.key() + ")";
  inherit(*node, *h1);
  inherit(*node, *h2);
  Symbol letter = make_symbol(SymbolKind::stable, 0, static_cast<std::uint16_t>(node->scope_ceiling + 1));
  node->desc = AmalgamDesc{std::move(h1), std::move(h2), std::move(g1), std::move(g2), std::move(iso), letter};
  return node;
}

EmbeddingPtr finite_part_of(const GroupNode& g, Symbol s) {
  return std::visit(
      [&](const auto& d) -> EmbeddingPtr {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FiniteDesc>) {
          return d.finite->element(s) ? d.finite : nullptr;
        } else if constexpr (std::is_same_v<T, SemidirectDesc>) {
          return d.finite->element(s) ? d.finite : nullptr;
        } else if constexpr (std::is_same_v<T, FreeProductDesc>) {
          if (auto e = finite_part_of(*d.left, s)) return e;
          return finite_part_of(*d.right, s);
        } else if constexpr (std::is_same_v<T, HnnDesc>) {
          return finite_part_of(*d.base, s);
        } else if constexpr (std::is_same_v<T, AmalgamDesc>) {
          if (auto e = finite_part_of(*d.h1, s)) return e;
          return finite_part_of(*d.h2, s);
        } else {
          return nullptr;
        }
      },
      g.desc);
}

namespace {

bool contains_embedding(const GroupNode& g, const FiniteEmbedding& e) {
  for (Symbol s : e.symbols)
    if (finite_part_of(g, s).get() != &e) return false;
  return true;
}

void check(const GroupNode& g, std::vector<std::string>& errors, const std::string& where) {
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FreeProductDesc>) {
          check(*d.left, errors, where + ".left");
          check(*d.right, errors, where + ".right");
          for (auto k : d.left->alphabet)
            if (d.right->alphabet.count(k)) errors.push_back(where + ": factors share a letter");
        } else if constexpr (std::is_same_v<T, SemidirectDesc>) {
          for (std::size_t i = 0; i < d.autos.size(); ++i)
            if (!d.autos[i].is_total() || d.autos[i].source() != d.finite->group ||
                d.autos[i].target() != d.finite->group)
              errors.push_back(where + ": letter " + std::to_string(i) + " does not act by an automorphism");
        } else if constexpr (std::is_same_v<T, HnnDesc>) {
          check(*d.base, errors, where + ".base");
          const FiniteGroup& ga = *d.a_side->group;
          const FiniteGroup& gb = *d.b_side->group;
          if (!contains_embedding(*d.base, *d.a_side)) errors.push_back(where + ": A is not in a finite part of the base");
          if (!contains_embedding(*d.base, *d.b_side)) errors.push_back(where + ": B is not in a finite part of the base");
          if (!ga.is_subgroup(d.a_elements)) errors.push_back(where + ": A is not a subgroup");
          if (!gb.is_subgroup(d.b_elements)) errors.push_back(where + ": B is not a subgroup");
          for (std::size_t i = 0; i < d.isos.size(); ++i) {
            const auto& phi = d.isos[i];
            std::string name = where + ": stable letter " + std::to_string(i);
            if (phi.source() != d.a_side->group || phi.target() != d.b_side->group) {
              errors.push_back(name + " maps between the wrong groups");
              continue;
            }
            if (phi.size() == 0) errors.push_back(name + " has an empty domain");
            for (int x : phi.domain())
              if (!std::binary_search(d.a_elements.begin(), d.a_elements.end(), x))
                errors.push_back(name + " has domain outside A");
            for (int y : phi.range())
              if (!std::binary_search(d.b_elements.begin(), d.b_elements.end(), y))
                errors.push_back(name + " has range outside B");
          }
          for (Symbol t : d.letters)
            if (d.base->owns(t)) errors.push_back(where + ": stable letter also occurs in the base");
        } else if constexpr (std::is_same_v<T, AmalgamDesc>) {
          check(*d.h1, errors, where + ".h1");
          check(*d.h2, errors, where + ".h2");
          if (!contains_embedding(*d.h1, *d.g1)) errors.push_back(where + ": A1 is not in a finite part of h1");
          if (!contains_embedding(*d.h2, *d.g2)) errors.push_back(where + ": A2 is not in a finite part of h2");
          if (d.iso.source() != d.g1->group || d.iso.target() != d.g2->group)
            errors.push_back(where + ": iso maps between the wrong groups");
          for (auto k : d.h1->alphabet)
            if (d.h2->alphabet.count(k)) errors.push_back(where + ": factors share a letter");
        }
      },
      g.desc);
}

}  // namespace

std::vector<std::string> diagnose(const GroupNode& g) {
  std::vector<std::string> errors;
  check(g, errors, "group");
  return errors;
}

void validate(const GroupNode& g) {
  auto errors = diagnose(g);
  if (errors.empty()) return;
  std::string msg = "invalid group:";
  for (auto& e : errors) msg += " " + e + ";";
  throw InputError(msg);
}

}  // namespace cwp
