#include "cwp/io.hpp"

#include <fstream>
#include <functional>
#include <set>

namespace cwp {

Symbol SymbolTable::declare(const std::string& name, SymbolKind kind) {
  if (name.empty() || name.find("^") != std::string::npos)
    throw InputError("invalid symbol name '" + name + "'");
  Symbol s = make_symbol(kind, next_id_++);
  if (!by_name_.emplace(name, s).second) throw InputError("symbol '" + name + "' declared twice");
  names_.emplace(s.letter_key(), name);
  return s;
}

std::optional<Symbol> SymbolTable::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

Symbol SymbolTable::parse(const std::string& text) {
  std::string name = text;
  int sign = 1;
  if (auto p = text.find('^'); p != std::string::npos) {
    if (text.substr(p) != "^-1") throw InputError("bad symbol '" + text + "' (expected x or x^-1)");
    name = text.substr(0, p);
    sign = -1;
  }
  auto s = find(name);
  if (!s) {
    if (!open) throw InputError("unknown symbol '" + name + "'");
    s = declare(name, SymbolKind::generator);
  }
  return sign > 0 ? *s : s->inverse();
}

std::string SymbolTable::name(Symbol s) const {
  auto it = names_.find(s.letter_key());
  std::string base = it == names_.end() ? debug_string(s.positive()) : it->second;
  return s.sign < 0 ? base + "^-1" : base;
}

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

BigInt as_bigint(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  std::string s = as_string(j, where);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw InputError(where + ": expected a decimal integer, got '" + s + "'");
  return BigInt(s);
}

class GroupParser {
 public:
  explicit GroupParser(SymbolTable& t) : table_(t) {}

  GroupPtr parse(const Json& j, const std::string& where) {
    std::string kind = as_string(field(j, "kind", where), where + ".kind");
    if (kind == "finite") return make_finite(finite(j, where));
    if (kind == "free") {
      std::vector<Symbol> gens;
      const Json& list = field(j, "generators", where);
      for (std::size_t i = 0; i < list.size(); ++i)
        gens.push_back(
            table_.declare(as_string(list[i], where + ".generators[" + std::to_string(i) + "]"), SymbolKind::generator));
      return make_free(std::move(gens));
    }
    if (kind == "free_product")
      return make_free_product(parse(field(j, "left", where), where + ".left"),
                               parse(field(j, "right", where), where + ".right"));
    if (kind == "semidirect") {
      EmbeddingPtr f = finite(field(j, "finite", where), where + ".finite");
      std::vector<Symbol> letters;
      std::vector<PartialIso> autos;
      const Json& list = field(j, "letters", where);
      for (std::size_t i = 0; i < list.size(); ++i) {
        std::string w = where + ".letters[" + std::to_string(i) + "]";
        letters.push_back(table_.declare(as_string(field(list[i], "name", w), w + ".name"), SymbolKind::stable));
        autos.push_back(iso(field(list[i], "auto", w), *f, *f, w + ".auto"));
        if (!autos.back().is_total()) throw InputError(w + ": automorphism is not total");
      }
      return make_semidirect(f, std::move(letters), std::move(autos));
    }
    if (kind == "hnn") {
      GroupPtr base = parse(field(j, "base", where), where + ".base");
      auto [a_side, a] = subgroup(*base, field(j, "A", where), where + ".A");
      auto [b_side, b] = subgroup(*base, field(j, "B", where), where + ".B");
      std::vector<Symbol> letters;
      std::vector<PartialIso> isos;
      const Json& list = field(j, "stable", where);
      for (std::size_t i = 0; i < list.size(); ++i) {
        std::string w = where + ".stable[" + std::to_string(i) + "]";
        letters.push_back(table_.declare(as_string(field(list[i], "name", w), w + ".name"), SymbolKind::stable));
        isos.push_back(iso(field(list[i], "iso", w), *a_side, *b_side, w + ".iso"));
      }
      return make_hnn(base, a_side, b_side, std::move(a), std::move(b), std::move(letters), std::move(isos));
    }
    if (kind == "amalgam") {
      GroupPtr h1 = parse(field(j, "h1", where), where + ".h1");
      GroupPtr h2 = parse(field(j, "h2", where), where + ".h2");
      const Json& pairs = field(j, "iso", where);
      if (!pairs.is_array() || pairs.empty()) throw InputError(where + ".iso: expected a non-empty list of pairs");
      EmbeddingPtr g1 = owner(*h1, as_string(pairs[0][0], where + ".iso[0][0]"), where + ".iso[0][0]");
      EmbeddingPtr g2 = owner(*h2, as_string(pairs[0][1], where + ".iso[0][1]"), where + ".iso[0][1]");
      PartialIso phi = iso(pairs, *g1, *g2, where + ".iso");
      return make_amalgam(h1, h2, g1, g2, std::move(phi));
    }
    throw InputError(where + ".kind: unknown group kind '" + kind + "'");
  }

 private:
  EmbeddingPtr finite(const Json& j, const std::string& where) {
    std::shared_ptr<FiniteGroup> g;
    if (j.contains("catalog")) {
      std::string prefix = j.contains("prefix") ? as_string(j.at("prefix"), where + ".prefix") : "g";
      g = catalog_group(as_string(j.at("catalog"), where + ".catalog"), prefix);
    } else {
      const Json& elements = field(j, "elements", where);
      const Json& rows = field(j, "table", where);
      std::vector<std::string> names;
      for (std::size_t i = 0; i < elements.size(); ++i)
        names.push_back(as_string(elements[i], where + ".elements[" + std::to_string(i) + "]"));
      std::unordered_map<std::string, int> index;
      for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], static_cast<int>(i));
      std::vector<std::vector<int>> table;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        table.emplace_back();
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
          std::string w = where + ".table[" + std::to_string(r) + "][" + std::to_string(c) + "]";
          const Json& e = rows[r][c];
          if (e.is_number_integer()) {
            table.back().push_back(e.get<int>());
          } else {
            auto it = index.find(as_string(e, w));
            if (it == index.end()) throw InputError(w + ": unknown element '" + e.get<std::string>() + "'");
            table.back().push_back(it->second);
          }
        }
      }
      try {
        g = std::make_shared<FiniteGroup>(std::move(names), std::move(table));
      } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
      }
    }
    std::vector<Symbol> symbols;
    for (const auto& n : g->names()) symbols.push_back(table_.declare(n, SymbolKind::element));
    return std::make_shared<FiniteEmbedding>(g, std::move(symbols));
  }

  EmbeddingPtr owner(const GroupNode& g, const std::string& name, const std::string& where) {
    auto s = table_.find(name);
    if (!s) throw InputError(where + ": unknown element '" + name + "'");
    EmbeddingPtr f = finite_part_of(g, *s);
    if (!f) throw InputError(where + ": '" + name + "' is not an element of a finite factor");
    return f;
  }

  int element(const FiniteEmbedding& f, const Json& j, const std::string& where) {
    std::string name = as_string(j, where);
    auto s = table_.find(name);
    auto x = s ? f.element(*s) : std::nullopt;
    if (!x) throw InputError(where + ": '" + name + "' is not an element of the expected finite group");
    return *x;
  }

  std::pair<EmbeddingPtr, std::vector<int>> subgroup(const GroupNode& base, const Json& list,
                                                      const std::string& where) {
    if (!list.is_array() || list.empty()) throw InputError(where + ": expected a non-empty list of elements");
    EmbeddingPtr f = owner(base, as_string(list[0], where + "[0]"), where + "[0]");
    std::vector<int> xs;
    for (std::size_t i = 0; i < list.size(); ++i) xs.push_back(element(*f, list[i], where + "[" + std::to_string(i) + "]"));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return {f, xs};
  }

  PartialIso iso(const Json& pairs, const FiniteEmbedding& src, const FiniteEmbedding& dst, const std::string& where) {
    std::vector<int> map(src.group->order(), -1);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::string w = where + "[" + std::to_string(i) + "]";
      if (!pairs[i].is_array() || pairs[i].size() != 2) throw InputError(w + ": expected a pair");
      int x = element(src, pairs[i][0], w + "[0]");
      int y = element(dst, pairs[i][1], w + "[1]");
      if (map[x] >= 0 && map[x] != y) throw InputError(w + ": element mapped twice");
      map[x] = y;
    }
    try {
      return PartialIso(src.group, dst.group, std::move(map));
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }

  SymbolTable& table_;
};

Json finite_json(const FiniteEmbedding& f, const SymbolTable& t) {
  Json elements = Json::array();
  for (Symbol s : f.symbols) elements.push_back(t.name(s));
  Json table = Json::array();
  for (const auto& row : f.group->table()) {
    Json r = Json::array();
    for (int x : row) r.push_back(t.name(f.symbols[x]));
    table.push_back(r);
  }
  return {{"kind", "finite"}, {"elements", elements}, {"table", table}};
}

Json iso_json(const PartialIso& phi, const FiniteEmbedding& src, const FiniteEmbedding& dst, const SymbolTable& t) {
  Json out = Json::array();
  for (int x : phi.domain()) out.push_back({t.name(src.symbol(x)), t.name(dst.symbol(*phi.apply(x)))});
  return out;
}

}  // namespace

GroupPtr parse_group(const Json& j, SymbolTable& table) {
  GroupPtr g = GroupParser(table).parse(j, "group");
  validate(*g);
  return g;
}

Json group_to_json(const GroupNode& g, const SymbolTable& t) {
  return std::visit(
      [&](const auto& d) -> Json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FiniteDesc>) {
          return finite_json(*d.finite, t);
        } else if constexpr (std::is_same_v<T, FreeDesc>) {
          Json gens = Json::array();
          for (Symbol s : d.generators) gens.push_back(t.name(s));
          return {{"kind", "free"}, {"generators", gens}};
        } else if constexpr (std::is_same_v<T, FreeProductDesc>) {
          return {{"kind", "free_product"}, {"left", group_to_json(*d.left, t)}, {"right", group_to_json(*d.right, t)}};
        } else if constexpr (std::is_same_v<T, SemidirectDesc>) {
          Json letters = Json::array();
          for (std::size_t i = 0; i < d.letters.size(); ++i)
            letters.push_back({{"name", t.name(d.letters[i])}, {"auto", iso_json(d.autos[i], *d.finite, *d.finite, t)}});
          return {{"kind", "semidirect"}, {"finite", finite_json(*d.finite, t)}, {"letters", letters}};
        } else if constexpr (std::is_same_v<T, HnnDesc>) {
          Json a = Json::array(), b = Json::array(), stable = Json::array();
          for (int x : d.a_elements) a.push_back(t.name(d.a_side->symbol(x)));
          for (int y : d.b_elements) b.push_back(t.name(d.b_side->symbol(y)));
          for (std::size_t i = 0; i < d.letters.size(); ++i)
            stable.push_back({{"name", t.name(d.letters[i])}, {"iso", iso_json(d.isos[i], *d.a_side, *d.b_side, t)}});
          return {{"kind", "hnn"}, {"base", group_to_json(*d.base, t)}, {"A", a}, {"B", b}, {"stable", stable}};
        } else {
          return {{"kind", "amalgam"},
                  {"h1", group_to_json(*d.h1, t)},
                  {"h2", group_to_json(*d.h2, t)},
                  {"iso", iso_json(d.iso, *d.g1, *d.g2, t)}};
        }
      },
      g.desc);
}

CompressedWord parse_slp(const Json& j, SymbolTable& table, const std::shared_ptr<Store>& store) {
  Store& s = *store;
  if (!j.is_object()) throw InputError("slp: expected an object");
  if (j.contains("terminals")) {
    const Json& terms = j.at("terminals");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      std::string w = "slp.terminals[" + std::to_string(i) + "]";
      table.parse(terms[i].is_object() ? as_string(field(terms[i], "name", w), w + ".name") : as_string(terms[i], w));
    }
  }
  std::string start = as_string(field(j, "start", "slp"), "slp.start");
  const Json& rules = field(j, "rules", "slp");
  if (!rules.is_object()) throw InputError("slp.rules: expected an object");
  std::unordered_map<std::string, NodeId> done;
  std::set<std::string> active;
  std::function<NodeId(const std::string&)> build = [&](const std::string& name) -> NodeId {
    if (auto it = done.find(name); it != done.end()) return it->second;
    std::string where = "slp.rules." + name;
    if (!rules.contains(name)) throw InputError(where + ": undefined nonterminal");
    if (!active.insert(name).second) throw InputError(where + ": cyclic production");
    const Json& r = rules.at(name);
    if (!r.is_object() || r.size() != 1) throw InputError(where + ": expected exactly one production");
    NodeId out;
    if (r.contains("term")) {
      out = s.term(table.parse(as_string(r.at("term"), where + ".term")));
    } else if (r.contains("pair")) {
      const Json& p = r.at("pair");
      if (!p.is_array() || p.size() != 2) throw InputError(where + ".pair: expected two nonterminals");
      NodeId a = build(as_string(p[0], where + ".pair[0]"));
      out = s.pair(a, build(as_string(p[1], where + ".pair[1]")));
    } else if (r.contains("word")) {
      std::vector<Symbol> symbols;
      const Json& list = r.at("word");
      if (!list.is_array()) throw InputError(where + ".word: expected a list");
      for (std::size_t i = 0; i < list.size(); ++i)
        symbols.push_back(table.parse(as_string(list[i], where + ".word[" + std::to_string(i) + "]")));
      out = s.word(symbols);
    } else if (r.contains("slice")) {
      const Json& p = r.at("slice");
      if (!p.is_array() || p.size() != 3) throw InputError(where + ".slice: expected [nonterminal, lo, hi]");
      NodeId src = build(as_string(p[0], where + ".slice[0]"));
      BigInt lo = as_bigint(p[1], where + ".slice[1]");
      BigInt hi = as_bigint(p[2], where + ".slice[2]");
      if (lo < 1 || lo > hi || hi > s.length(src))
        throw InputError(where + ".slice: bounds " + lo.str() + ".." + hi.str() + " outside 1.." + s.length(src).str());
      out = s.slice(src, lo, hi);
    } else {
      throw InputError(where + ": unknown production (expected term, pair, word or slice)");
    }
    active.erase(name);
    done.emplace(name, out);
    return out;
  };
  return {store, build(start)};
}

Json slp_to_json(const CompressedWord& w, const SymbolTable& table) {
  const Store& s = w.store();
  Json rules = Json::object();
  std::set<std::string> terminals;
  if (w.empty()) return {{"terminals", Json::array()}, {"start", "S"}, {"rules", {{"S", {{"word", Json::array()}}}}}};
  std::unordered_map<NodeId, std::string> names;
  std::function<std::string(NodeId)> visit = [&](NodeId id) -> std::string {
    if (auto it = names.find(id); it != names.end()) return it->second;
    const Node& n = s[id];
    Json rule;
    switch (n.kind) {
      case NodeKind::term: {
        std::string t = table.name(n.symbol);
        terminals.insert(table.name(n.symbol.positive()));
        rule = {{"term", t}};
        break;
      }
      case NodeKind::pair: {
        std::string a = visit(n.left);
        rule = {{"pair", {a, visit(n.right)}}};
        break;
      }
      case NodeKind::slice:
        rule = {{"slice", {visit(n.left), n.lo.str(), BigInt(n.lo + n.length - 1).str()}}};
        break;
    }
    std::string name = "N" + std::to_string(names.size());
    names.emplace(id, name);
    rules[name] = std::move(rule);
    return name;
  };
  std::string start = visit(w.root());
  return {{"terminals", Json(std::vector<std::string>(terminals.begin(), terminals.end()))},
          {"start", start},
          {"rules", rules}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace cwp
