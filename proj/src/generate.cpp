#include "cwp/generate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cwp {

namespace {

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  // Modulo reduction keeps the stream identical across standard libraries.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine() % n); }
  bool chance(unsigned num, unsigned den) { return below(den) < num; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }
};

class WordBuilder {
 public:
  WordBuilder(const GenConfig& c, Rng& rng, std::vector<Symbol> alphabet, std::vector<std::vector<Symbol>> relators)
      : c_(c), rng_(rng), alphabet_(std::move(alphabet)), relators_(std::move(relators)),
        store_(std::make_shared<Store>()) {}

  const std::shared_ptr<Store>& store() const { return store_; }

  NodeId random_word(std::size_t len) {
    std::vector<Symbol> w;
    for (std::size_t i = 0; i < len; ++i) {
      Symbol s = rng_.pick(alphabet_);
      w.push_back(rng_.chance(1, 2) ? s : s.inverse());
    }
    return store_->word(w);
  }

  NodeId relator() { return store_->word(rng_.pick(relators_)); }

  bool fits(NodeId id) const {
    return id != kEmpty && store_->length(id) <= c_.max_length && grammar_size(*store_, id) + slack_ <= c_.max_rules;
  }

  NodeId trivial() {
    Store& s = *store_;
    NodeId w = relator();
    std::size_t steps = 2 + rng_.below(8);
    for (std::size_t i = 0; i < steps; ++i) {
      NodeId next;
      switch (rng_.below(5)) {
        case 0: {
          NodeId u = random_word(1 + rng_.below(3));
          next = s.pair(u, w, s.invert(u));
          break;
        }
        case 1:
          next = s.pair(w, relator());
          break;
        case 2:
          next = s.pair(relator(), w);
          break;
        case 3:
          next = s.pair(w, w);
          break;
        default: {
          // Splice a relator into the middle.
          BigInt n = s.length(w);
          BigInt k = BigInt(rng_.below(static_cast<std::size_t>(std::min<BigInt>(n, 1u << 20)) + 1));
          next = s.pair(s.prefix(w, k), relator(), s.suffix_from(w, k + 1));
          break;
        }
      }
      if (fits(next)) w = next;
    }
    return w;
  }

  NodeId perturbed() {
    Store& s = *store_;
    // Leave room for the edit: a letter, two slices and two pairs.
    slack_ = 5;
    NodeId w = trivial();
    slack_ = 0;
    BigInt n = s.length(w);
    BigInt k = BigInt(rng_.below(static_cast<std::size_t>(std::min<BigInt>(n, 1u << 20)) + 1));
    Symbol x = rng_.pick(alphabet_);
    if (rng_.chance(1, 2)) x = x.inverse();
    NodeId out;
    if (k >= 1 && rng_.chance(1, 3))  // drop position k
      out = s.pair(s.prefix(w, k - 1), s.suffix_from(w, k + 1));
    else
      out = s.pair(s.prefix(w, k), s.term(x), s.suffix_from(w, k + 1));
    return fits(out) ? out : s.pair(w, s.term(x));
  }

  NodeId random() {
    Store& s = *store_;
    std::vector<NodeId> pool;
    for (std::size_t i = 0, n = 2 + rng_.below(3); i < n; ++i) pool.push_back(random_word(1 + rng_.below(3)));
    NodeId w = pool.back();
    for (std::size_t i = 0, n = 3 + rng_.below(8); i < n; ++i) {
      NodeId a = rng_.pick(pool), b = rng_.pick(pool);
      NodeId next;
      switch (rng_.below(4)) {
        case 0:
          next = s.pair(a, s.invert(b));
          break;
        case 1: {
          BigInt len = s.length(a);
          if (len < 2) {
            next = s.pair(a, b);
            break;
          }
          BigInt lo = 1 + BigInt(rng_.below(static_cast<std::size_t>(std::min<BigInt>(len, 1u << 20))));
          next = s.pair(s.slice(a, lo, len), b);
          break;
        }
        default:
          next = s.pair(a, b);
          break;
      }
      if (fits(next)) {
        pool.push_back(next);
        w = next;
      }
    }
    return w;
  }

  NodeId build(GenMode mode) {
    switch (mode) {
      case GenMode::trivial:
        return trivial();
      case GenMode::perturbed:
        return perturbed();
      default:
        return random();
    }
  }

 private:
  const GenConfig& c_;
  Rng& rng_;
  std::vector<Symbol> alphabet_;
  std::vector<std::vector<Symbol>> relators_;
  std::shared_ptr<Store> store_;
  std::size_t slack_ = 0;
};

EmbeddingPtr declare_finite(SymbolTable& table, FiniteGroupPtr g) {
  std::vector<Symbol> symbols;
  for (const auto& n : g->names()) symbols.push_back(table.declare(n, SymbolKind::element));
  return std::make_shared<FiniteEmbedding>(std::move(g), std::move(symbols));
}

void finite_relators(const FiniteEmbedding& f, Rng& rng, std::vector<std::vector<Symbol>>& out) {
  const FiniteGroup& g = *f.group;
  for (int k = 0; k < 4; ++k) {
    int x = static_cast<int>(rng.below(g.order()));
    int y = static_cast<int>(rng.below(g.order()));
    out.push_back({f.symbol(x), f.symbol(y), f.symbol(g.mul(x, y)).inverse()});
  }
}

std::vector<Symbol> non_identity(const FiniteEmbedding& f) {
  std::vector<Symbol> out;
  for (int x = 0; x < f.group->order(); ++x)
    if (x != f.group->identity()) out.push_back(f.symbol(x));
  return out;
}

GenMode resolve(GenMode m, Rng& rng) {
  if (m != GenMode::mixed) return m;
  static const GenMode modes[] = {GenMode::random, GenMode::trivial, GenMode::perturbed};
  return modes[rng.below(3)];
}

Instance gen_hnn(const GenConfig& c, Rng& rng) {
  auto table = std::make_shared<SymbolTable>();
  std::vector<std::string> names;
  for (const auto& n : catalog_names())
    if (catalog_group(n, "h")->order() <= c.max_base_order) names.push_back(n);
  FiniteGroupPtr g = catalog_group(rng.pick(names), "h");
  EmbeddingPtr emb = declare_finite(*table, g);

  std::vector<std::vector<int>> subs;
  for (auto& s : all_subgroups(*g))
    if (static_cast<int>(s.size()) <= c.max_a) subs.push_back(s);
  std::vector<int> a = rng.pick(subs);
  std::vector<int> b = rng.chance(1, 2) ? a : rng.pick(subs);
  std::vector<PartialIso> choices = all_partial_isos(g, a, b);

  std::vector<Symbol> letters;
  std::vector<PartialIso> isos;
  int k = 1 + static_cast<int>(rng.below(c.max_letters));
  for (int i = 0; i < k; ++i) {
    letters.push_back(table->declare("t" + std::to_string(i + 1), SymbolKind::stable));
    isos.push_back(i > 0 && rng.chance(1, 4) ? isos[rng.below(isos.size())] : rng.pick(choices));
  }
  GroupPtr group = make_hnn(make_finite(emb), emb, emb, a, b, letters, isos);

  std::vector<std::vector<Symbol>> relators;
  finite_relators(*emb, rng, relators);
  for (int r = 0; r < 6; ++r) {
    std::size_t i = rng.below(letters.size());
    std::vector<int> dom = isos[i].domain();
    int x = rng.pick(dom);
    relators.push_back({letters[i].inverse(), emb->symbol(x), letters[i], emb->symbol(*isos[i].apply(x)).inverse()});
  }
  std::vector<Symbol> alphabet = non_identity(*emb);
  if (alphabet.empty()) alphabet.push_back(emb->symbol(g->identity()));
  for (Symbol t : letters) {
    alphabet.push_back(t);
    alphabet.push_back(t);
  }
  GenMode mode = resolve(c.mode, rng);
  WordBuilder wb(c, rng, alphabet, relators);
  NodeId w = wb.build(mode);
  return {table, group, {wb.store(), w}, mode};
}

Instance gen_amalgam(const GenConfig& c, Rng& rng) {
  auto table = std::make_shared<SymbolTable>();
  bool s3 = rng.chance(1, 2);
  EmbeddingPtr e1 = declare_finite(*table, s3 ? symmetric3("s") : cyclic_group(4, "b"));
  EmbeddingPtr e2 = declare_finite(*table, cyclic_group(4, "c"));
  const FiniteGroup& g1 = *e1->group;
  std::vector<int> involutions;
  for (int x = 0; x < g1.order(); ++x)
    if (x != g1.identity() && g1.mul(x, x) == g1.identity()) involutions.push_back(x);
  int x = rng.pick(involutions);
  std::vector<int> map(g1.order(), -1);
  map[g1.identity()] = e2->group->identity();
  map[x] = 2;
  PartialIso iso(e1->group, e2->group, map);
  GroupPtr group = make_amalgam(make_finite(e1), make_finite(e2), e1, e2, iso);

  std::vector<std::vector<Symbol>> relators;
  finite_relators(*e1, rng, relators);
  finite_relators(*e2, rng, relators);
  for (int r = 0; r < 4; ++r) relators.push_back({e1->symbol(x), e2->symbol(2).inverse()});
  std::vector<Symbol> alphabet = non_identity(*e1);
  for (Symbol s : non_identity(*e2)) alphabet.push_back(s);
  GenMode mode = resolve(c.mode, rng);
  WordBuilder wb(c, rng, alphabet, relators);
  NodeId w = wb.build(mode);
  return {table, group, {wb.store(), w}, mode};
}

}  // namespace

std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> found;
  for (int x = 0; x < g.order(); ++x)
    for (int y = x; y < g.order(); ++y) {
      int seeds[] = {x, y};
      found.insert(g.subgroup_generated(seeds));
    }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::vector<PartialIso> all_partial_isos(const FiniteGroupPtr& g, const std::vector<int>& a,
                                         const std::vector<int>& b) {
  auto inside = [](const std::vector<int>& sub, const std::vector<int>& sup) {
    return std::includes(sup.begin(), sup.end(), sub.begin(), sub.end());
  };
  std::vector<PartialIso> out;
  auto subs = all_subgroups(*g);
  for (const auto& c : subs) {
    if (!inside(c, a)) continue;
    for (const auto& d : subs) {
      if (d.size() != c.size() || !inside(d, b)) continue;
      std::vector<int> perm = d;
      do {
        std::vector<int> map(g->order(), -1);
        for (std::size_t i = 0; i < c.size(); ++i) map[c[i]] = perm[i];
        if (PartialIso::diagnose(*g, *g, map).empty()) out.emplace_back(g, g, std::move(map));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return out;
}

Instance gen_random(const GenConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  return config.family == GenFamily::hnn ? gen_hnn(config, rng) : gen_amalgam(config, rng);
}

std::string mode_name(GenMode m) {
  switch (m) {
    case GenMode::mixed:
      return "mixed";
    case GenMode::random:
      return "random";
    case GenMode::trivial:
      return "trivial";
    case GenMode::perturbed:
      return "perturbed";
  }
  return "mixed";
}

GenMode parse_mode(const std::string& name) {
  for (GenMode m : {GenMode::mixed, GenMode::random, GenMode::trivial, GenMode::perturbed})
    if (mode_name(m) == name) return m;
  throw InputError("unknown generator mode '" + name + "'");
}

Json instance_to_json(const Instance& inst) {
  return {{"mode", mode_name(inst.mode)},
          {"group", group_to_json(*inst.group, *inst.table)},
          {"word", slp_to_json(inst.word, *inst.table)}};
}

}  // namespace cwp
