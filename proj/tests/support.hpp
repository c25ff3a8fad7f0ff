#pragma once

#include <random>
#include <sstream>
#include <string>

#include "cwp/context.hpp"
#include "cwp/io.hpp"
#include "cwp/oracle.hpp"
#include "cwp/slp.hpp"

namespace testing {

using namespace cwp;

// A group together with names for its letters and a store for words.
struct Fx {
  std::shared_ptr<SymbolTable> table = std::make_shared<SymbolTable>();
  GroupPtr group;
  std::shared_ptr<Store> store = std::make_shared<Store>();

  Symbol sym(const std::string& text) const { return table->parse(text); }

  std::vector<Symbol> explicit_word(const std::string& text) const {
    std::istringstream in(text);
    std::vector<Symbol> out;
    for (std::string tok; in >> tok;) out.push_back(sym(tok));
    return out;
  }

  CompressedWord w(const std::string& text) const { return make_word(store, explicit_word(text)); }

  std::string show(const std::vector<Symbol>& word) const {
    std::string out;
    for (Symbol s : word) out += (out.empty() ? "" : " ") + table->name(s);
    return out;
  }
  std::string show(const CompressedWord& word) const { return show(decompress(word, 100000)); }
};

inline Fx fixture(const std::string& json) {
  Fx f;
  f.group = parse_group(Json::parse(json), *f.table);
  return f;
}

// <Z/2 = {1, a}, t | t^-1 a t = a>
inline Fx z2_fixture() {
  return fixture(R"({"kind":"hnn",
    "base":{"kind":"finite","elements":["1","a"],"table":[["1","a"],["a","1"]]},
    "A":["1","a"],"B":["1","a"],
    "stable":[{"name":"t","iso":[["1","1"],["a","a"]]}]})");
}

// <Z/4 = {1, b, b2, b3}, t | t^-1 b2 t = b2>
inline Fx z4_fixture() {
  return fixture(R"({"kind":"hnn",
    "base":{"kind":"finite","elements":["1","b","b2","b3"],
            "table":[["1","b","b2","b3"],["b","b2","b3","1"],["b2","b3","1","b"],["b3","1","b","b2"]]},
    "A":["1","b2"],"B":["1","b2"],
    "stable":[{"name":"t","iso":[["1","1"],["b2","b2"]]}]})");
}

// Z/4 *_{b2 = c2} Z/4
inline Fx z4_amalgam() {
  return fixture(R"({"kind":"amalgam",
    "h1":{"kind":"finite","elements":["1","b","b2","b3"],
          "table":[["1","b","b2","b3"],["b","b2","b3","1"],["b2","b3","1","b"],["b3","1","b","b2"]]},
    "h2":{"kind":"finite","elements":["e","c","c2","c3"],
          "table":[["e","c","c2","c3"],["c","c2","c3","e"],["c2","c3","e","c"],["c3","e","c","c2"]]},
    "iso":[["1","e"],["b2","c2"]]})");
}

// 2^k copies of `id`.
inline NodeId power_of_two(Store& s, NodeId id, unsigned k) {
  for (unsigned i = 0; i < k; ++i) id = s.pair(id, id);
  return id;
}

// Random grammar over `letters` (with inverses) whose words stay below
// `max_len`; mixes pairs, inverses and slices.
inline CompressedWord random_grammar(std::mt19937_64& rng, const std::shared_ptr<Store>& store,
                                     const std::vector<Symbol>& letters, std::size_t nodes, std::size_t max_len) {
  Store& s = *store;
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  std::vector<NodeId> pool;
  for (Symbol x : letters) {
    pool.push_back(s.term(x));
    pool.push_back(s.term(x.inverse()));
  }
  NodeId last = pool[below(pool.size())];
  for (std::size_t i = 0; i < nodes; ++i) {
    NodeId a = pool[below(pool.size())];
    NodeId b = pool[below(pool.size())];
    NodeId next;
    switch (below(4)) {
      case 0:
        next = s.invert(a);
        break;
      case 1: {
        std::size_t len = static_cast<std::size_t>(s.length(a));
        std::size_t lo = 1 + below(len);
        std::size_t hi = lo + below(len - lo + 1);
        next = s.slice(a, lo, hi);
        break;
      }
      default:
        next = s.pair(a, b);
    }
    if (next == kEmpty || s.length(next) > max_len) continue;
    pool.push_back(next);
    last = next;
  }
  return {store, last};
}

inline std::vector<Symbol> inverse_word(std::vector<Symbol> w) {
  std::reverse(w.begin(), w.end());
  for (Symbol& s : w) s = s.inverse();
  return w;
}

}  // namespace testing
