#include "cwp/hnn.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "cwp/solvers.hpp"

namespace cwp {

const HnnDesc& hnn_of(const GroupPtr& g) { return std::get<HnnDesc>(g->desc); }

std::vector<Symbol> side_symbols(const HnnDesc& h, int letter, int alpha) {
  const PartialIso& phi = h.isos[letter];
  std::vector<Symbol> out;
  if (alpha > 0) {
    for (int x : phi.domain()) out.push_back(h.a_side->symbol(x));
  } else {
    for (int y : phi.range()) out.push_back(h.b_side->symbol(y));
  }
  // Identity first: it is the most common connecting element.
  Symbol id = alpha > 0 ? h.a_side->symbol(h.a_side->group->identity()) : h.b_side->symbol(h.b_side->group->identity());
  std::stable_partition(out.begin(), out.end(), [&](Symbol s) { return s == id; });
  return out;
}

namespace {

SymbolPredicate stable_predicate(const HnnDesc& h) {
  return [&h](Symbol s) { return h.letter_of(s) >= 0; };
}

bool is_identity_symbol(const HnnDesc& h, Symbol s) {
  auto a = h.a_side->element(s);
  if (a && *a == h.a_side->group->identity()) return true;
  auto b = h.b_side->element(s);
  return b && *b == h.b_side->group->identity();
}

GroupPtr with_letters(const GroupPtr& g, const std::vector<int>& keep) {
  const HnnDesc& h = hnn_of(g);
  if (keep.size() == h.letters.size()) return g;
  std::vector<Symbol> letters;
  std::vector<PartialIso> isos;
  for (int i : keep) {
    letters.push_back(h.letters[i]);
    isos.push_back(h.isos[i]);
  }
  return make_hnn(h.base, h.a_side, h.b_side, h.a_elements, h.b_elements, std::move(letters), std::move(isos));
}

std::string memo_key(const char* tag, const GroupPtr& g, const CompressedWord& u, const CompressedWord& v,
                     Context& ctx) {
  return std::string(tag) + g->key + "|" + ctx.eq().fingerprint(u).str() + "|" + ctx.eq().fingerprint(v).str();
}

void trace(Context& ctx, const char* stage, unsigned depth, nlohmann::json extra) {
  if (!ctx.tracing()) return;
  extra["stage"] = stage;
  extra["depth"] = depth;
  ctx.emit(extra.dump());
}

// Splice with a shared occurrence index for the stable letters.
class Reducer {
 public:
  Reducer(const GroupPtr& g, Context& ctx, unsigned depth)
      : g_(g), h_(hnn_of(g)), ctx_(ctx), depth_(depth), index_(ctx.store(), stable_predicate(h_)) {}

  NodeId concat(NodeId y, NodeId z) {
    Store& s = ctx_.store();
    BigInt l = index_.count(y);
    BigInt m = index_.count(z);
    if (l == 0 || m == 0) return s.pair(y, z);
    struct Probe {
      BigInt pos_y, pos_z;
      std::optional<Symbol> c;
    };
    std::map<BigInt, Probe> probes;
    auto probe = [&](const BigInt& k) -> bool {
      Probe p{index_.kth(y, l - k + 1), index_.kth(z, k), std::nullopt};
      Symbol sy = s.char_at(y, p.pos_y);
      Symbol sz = s.char_at(z, p.pos_z);
      if (sy.positive() == sz.positive() && sy.sign == -sz.sign) {
        int letter = h_.letter_of(sz);
        NodeId left = s.invert(s.suffix_from(y, p.pos_y));
        NodeId right = s.prefix(z, p.pos_z);
        for (Symbol c : side_symbols(h_, letter, -sz.sign)) {
          ++ctx_.stats().oracle_queries;
          if (rucwp(g_, {ctx_.store_ptr(), s.pair(left, s.term(c))}, {ctx_.store_ptr(), right}, ctx_, depth_)) {
            p.c = c;
            break;
          }
        }
      }
      bool ok = p.c.has_value();
      probes.emplace(k, std::move(p));
      return ok;
    };
    if (!probe(1)) return s.pair(y, z);
    BigInt d = last_true(std::min(l, m), probe);
    const Probe& p = probes.at(d);
    NodeId c = is_identity_symbol(h_, *p.c) ? kEmpty : s.term(*p.c);
    return s.pair(s.prefix(y, p.pos_y - 1), c, s.suffix_from(z, p.pos_z + 1));
  }

  NodeId reduce(NodeId root) {
    std::function<NodeId(NodeId)> go = [&](NodeId id) -> NodeId {
      if (id == kEmpty) return kEmpty;
      if (auto it = memo_.find(id); it != memo_.end()) return it->second;
      const Node& n = ctx_.store()[id];
      NodeId out = id;
      if (n.kind == NodeKind::pair && index_.count(id) > 1) {
        NodeId left = n.left, right = n.right;
        NodeId y = go(left);
        out = concat(y, go(right));
      }
      memo_.emplace(id, out);
      return out;
    };
    return go(root);
  }

 private:
  GroupPtr g_;
  const HnnDesc& h_;
  Context& ctx_;
  unsigned depth_;
  OccurrenceIndex index_;
  std::unordered_map<NodeId, NodeId> memo_;
};

}  // namespace

CompressedWord concat_reduced(const GroupPtr& g, const CompressedWord& y, const CompressedWord& z, Context& ctx,
                              unsigned depth) {
  Reducer r(g, ctx, depth);
  NodeId a = import_word(ctx.store_ptr(), y).root();
  NodeId b = import_word(ctx.store_ptr(), z).root();
  return {ctx.store_ptr(), r.concat(a, b)};
}

CompressedWord reduce_to_reduced(const GroupPtr& g, const CompressedWord& w, Context& ctx, unsigned depth) {
  Reducer r(g, ctx, depth);
  NodeId root = normalize(ctx.store(), import_word(ctx.store_ptr(), w).root());
  CompressedWord out{ctx.store_ptr(), r.reduce(root)};
  trace(ctx, "reduce", depth, {{"input_length", w.length().str()}, {"output_length", out.length().str()}});
  return out;
}

bool check_pi_t(const HnnDesc& h, const CompressedWord& u, const CompressedWord& v, Context& ctx) {
  auto pred = stable_predicate(h);
  return ctx.eq().equal(project(u, pred), project(v, pred));
}

LetterReduction reduce_stable_letters(const GroupPtr& g, const CompressedWord& u, const CompressedWord& v,
                                      Context& ctx) {
  const HnnDesc& h = hnn_of(g);
  auto scope = static_cast<std::uint16_t>(h.base->scope_ceiling + 1);
  Store& s = ctx.store();
  if (!check_pi_t(h, u, v, ctx)) {
    Symbol t = make_symbol(SymbolKind::stable, 0, scope);
    GroupPtr out = make_hnn(h.base, h.a_side, h.b_side, h.a_elements, h.b_elements, {t}, {h.isos.front()});
    return {out, {ctx.store_ptr(), s.term(t)}, {ctx.store_ptr(), s.term(t.inverse())}, true};
  }
  // tau: first letter with the same partial isomorphism.
  std::vector<int> cls(h.letters.size());
  std::vector<int> reps;
  for (std::size_t i = 0; i < h.letters.size(); ++i) {
    int c = -1;
    for (std::size_t r = 0; r < reps.size() && c < 0; ++r)
      if (h.isos[reps[r]] == h.isos[i]) c = static_cast<int>(r);
    if (c < 0) {
      c = static_cast<int>(reps.size());
      reps.push_back(static_cast<int>(i));
    }
    cls[i] = c;
  }
  std::vector<Symbol> letters;
  std::vector<PartialIso> isos;
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (int b = 0; b < 2; ++b) {
      letters.push_back(make_symbol(SymbolKind::stable, static_cast<std::uint32_t>(2 * c + b), scope));
      isos.push_back(h.isos[reps[c]]);
    }
  // State: parity of the number of stable letters read so far.
  Transducer t(
      0, [](Transducer::State) { return true; },
      [&](Transducer::State q, Symbol x) -> std::optional<Transducer::Step> {
        int i = h.letter_of(x);
        if (i < 0) return Transducer::Step{q, {x}};
        Symbol y = letters[2 * cls[i] + (1 - q)];
        y.sign = x.sign;
        return Transducer::Step{1 - q, {y}};
      });
  CompressedWord u2 = apply_transducer(t, import_word(ctx.store_ptr(), u));
  CompressedWord v2 = apply_transducer(t, import_word(ctx.store_ptr(), v));
  GroupPtr out = make_hnn(h.base, h.a_side, h.b_side, h.a_elements, h.b_elements, std::move(letters), std::move(isos));
  return {out, u2, v2, false};
}

Skeleton split_variables(const HnnDesc& h, int letter, const CompressedWord& u, const CompressedWord& v,
                         Context& ctx) {
  Store& s = ctx.store();
  Symbol t = h.letters[letter];
  Symbol pad = h.a_side->symbol(h.a_side->group->identity());
  auto is_t = [t](Symbol x) { return x.positive() == t; };
  OccurrenceIndex index(s, is_t);
  auto block = [](NodeId id) { return make_symbol(SymbolKind::block, id); };
  auto skeleton_of = [&](const CompressedWord& w) -> NodeId {
    NodeId padded = apply_homomorphism(s, import_word(ctx.store_ptr(), w).root(),
                                       [&](Symbol x) -> std::optional<std::vector<Symbol>> {
                                         if (!is_t(x)) return std::nullopt;
                                         return std::vector<Symbol>{pad, pad.inverse(), x, pad, pad.inverse()};
                                       });
    if (padded == kEmpty) {
      Symbol both[] = {pad, pad.inverse()};
      padded = s.word(both);
    }
    std::unordered_map<NodeId, NodeId> memo;
    std::function<NodeId(NodeId)> go = [&](NodeId id) -> NodeId {
      if (auto it = memo.find(id); it != memo.end()) return it->second;
      const Node& n = s[id];
      NodeId out;
      if (index.count(id) == 0) {
        out = s.term(block(id));
      } else if (n.kind == NodeKind::term) {
        out = id;
      } else {
        NodeId left = n.left, right = n.right;
        NodeId sy = go(left);
        NodeId sz = go(right);
        Symbol omega = s.last(sy);
        Symbol alpha = s.first(sz);
        if (omega.kind == SymbolKind::block && alpha.kind == SymbolKind::block) {
          NodeId merged = s.pair(omega.id, alpha.id);
          out = s.pair(s.prefix(sy, s.length(sy) - 1), s.term(block(merged)), s.suffix_from(sz, 2));
        } else {
          out = s.pair(sy, sz);
        }
      }
      memo.emplace(id, out);
      return out;
    };
    return go(padded);
  };
  return {{ctx.store_ptr(), skeleton_of(u)}, {ctx.store_ptr(), skeleton_of(v)}, t};
}

BracketWords eliminate_b1_t(const Skeleton& sk, Context& ctx) {
  Store& s = ctx.store();
  constexpr Transducer::State kStart = 0, kAfterT = 1, kDone = 2;
  auto plain_state = [](std::uint32_t z) { return 3 + 2 * Transducer::State(z); };
  auto t_state = [](std::uint32_t z) { return 4 + 2 * Transducer::State(z); };
  auto sym = [](SymbolKind k, Transducer::State q) {
    return make_symbol(k, static_cast<std::uint32_t>((q - 3) / 2));
  };
  Symbol t = sk.letter;
  Transducer tr(
      kStart, [](Transducer::State q) { return q == kDone; },
      [&](Transducer::State q, Symbol x) -> std::optional<Transducer::Step> {
        bool is_block = x.kind == SymbolKind::block && x.sign > 0;
        bool is_end = x.kind == SymbolKind::end_marker;
        bool is_t = x.positive() == t;
        if (q == kStart && is_block) return Transducer::Step{plain_state(x.id), {}};
        if (q == kAfterT && is_block) return Transducer::Step{t_state(x.id), {}};
        if (q < 3) return std::nullopt;
        bool plain = (q - 3) % 2 == 0;
        if (is_t && x.sign < 0)
          return Transducer::Step{kStart, {sym(plain ? SymbolKind::block_right : SymbolKind::block_both, q)}};
        if (is_t) return Transducer::Step{kAfterT, {sym(plain ? SymbolKind::block : SymbolKind::block_left, q)}};
        if (is_end) return Transducer::Step{kDone, {sym(plain ? SymbolKind::block : SymbolKind::block_left, q)}};
        return std::nullopt;
      });
  NodeId end = s.term(kEndMarker);
  NodeId u = apply_transducer(s, s.pair(sk.u.root(), end), tr);
  NodeId v = apply_transducer(s, s.pair(sk.v.root(), end), tr);
  return {{ctx.store_ptr(), u}, {ctx.store_ptr(), v}};
}

std::vector<Relation> compute_relations(const GroupPtr& k, const HnnDesc& h, const std::vector<NodeId>& left,
                                        const std::vector<NodeId>& right, const std::vector<Tagged>& c1_choices,
                                        const std::vector<Tagged>& c2_choices, Context& ctx, unsigned depth) {
  Store& s = ctx.store();
  std::vector<Relation> out;
  const HnnDesc& kh = hnn_of(k);
  auto k_letters = stable_predicate(kh);
  auto symbol_of = [&](Tagged c) { return c.tag == 0 ? h.a_side->symbol(c.element) : h.b_side->symbol(c.element); };
  // Blocks with equal values give identical relations; query each value once.
  std::unordered_map<std::string, std::vector<std::pair<Tagged, Tagged>>> by_value;
  for (NodeId z1 : left)
    for (NodeId z2 : right) {
      CompressedWord w1{ctx.store_ptr(), z1};
      CompressedWord w2{ctx.store_ptr(), z2};
      std::string key = ctx.eq().fingerprint(w1).str() + "|" + ctx.eq().fingerprint(w2).str();
      auto it = by_value.find(key);
      if (it == by_value.end()) {
        std::vector<std::pair<Tagged, Tagged>> found;
        if (ctx.eq().equal(project(w1, k_letters), project(w2, k_letters))) {
          for (Tagged c1 : c1_choices)
            for (Tagged c2 : c2_choices) {
              ++ctx.stats().relation_queries;
              ++ctx.stats().oracle_queries;
              CompressedWord lhs{ctx.store_ptr(), s.pair(z1, s.term(symbol_of(c1)))};
              CompressedWord rhs{ctx.store_ptr(), s.pair(s.term(symbol_of(c2)), z2)};
              if (rcwp(k, lhs, rhs, ctx, depth + 1)) {
                found.emplace_back(c1, c2);
                break;  // c2 is determined by z1, c1, z2
              }
            }
        }
        it = by_value.emplace(key, std::move(found)).first;
      }
      for (auto& [c1, c2] : it->second) out.push_back({z1, c1, c2, z2});
    }
  return out;
}

std::vector<BracketRelation> bracket_relations(const HnnDesc& h, int letter, const std::vector<Relation>& e) {
  const PartialIso& phi = h.isos[letter];
  PartialIso back = phi.inverse();
  static constexpr SymbolKind kinds[2][2] = {{SymbolKind::block, SymbolKind::block_left},
                                             {SymbolKind::block_right, SymbolKind::block_both}};
  auto to_a = [&](Tagged c) { return c.tag == 0 ? c.element : *back.apply(c.element); };
  std::vector<BracketRelation> out;
  for (const Relation& r : e) {
    SymbolKind kind = kinds[r.c1.tag][r.c2.tag];
    out.push_back({make_symbol(kind, r.z1), to_a(r.c1), to_a(r.c2), make_symbol(kind, r.z2)});
  }
  return out;
}

Collapsed eliminate_z_generators(const HnnDesc& h, int letter, const std::vector<BracketRelation>& e,
                                 const BracketWords& words, Context& ctx) {
  Store& s = ctx.store();
  const FiniteGroup& parent = *h.a_side->group;
  std::vector<int> embedding;
  std::shared_ptr<FiniteGroup> a1 = parent.restrict_to(h.isos[letter].domain(), &embedding);
  std::vector<int> local(parent.order(), -1);
  for (std::size_t i = 0; i < embedding.size(); ++i) local[embedding[i]] = static_cast<int>(i);
  const FiniteGroup& g = *a1;

  // Union-find with coefficients: W = x · parent(W) · y.
  std::unordered_map<std::uint64_t, int> index;
  std::vector<Symbol> nodes;
  std::vector<int> up, cx, cy;
  auto id_of = [&](Symbol z) {
    auto [it, fresh] = index.emplace(z.positive().key(), static_cast<int>(nodes.size()));
    if (fresh) {
      nodes.push_back(z.positive());
      up.push_back(it->second);
      cx.push_back(g.identity());
      cy.push_back(g.identity());
    }
    return it->second;
  };
  std::function<int(int)> find = [&](int i) -> int {
    int p = up[i];
    if (p == i) return i;
    int r = find(p);
    cx[i] = g.mul(cx[i], cx[p]);
    cy[i] = g.mul(cy[p], cy[i]);
    up[i] = r;
    return r;
  };
  for (const auto& r : e) {
    int i1 = id_of(r.z1), i2 = id_of(r.z2);
    int r1 = find(i1), r2 = find(i2);
    if (r1 == r2) continue;
    int a1 = local[r.a1], a2 = local[r.a2];
    // z2 = a2^-1 z1 a1, so r2 = x2^-1 a2^-1 x1 r1 y1 a1 y2^-1.
    up[r2] = r1;
    cx[r2] = g.mul(g.mul(g.inv(cx[i2]), g.inv(a2)), cx[i1]);
    cy[r2] = g.mul(g.mul(cy[i1], a1), g.inv(cy[i2]));
  }
  // Every relation is now a self-relation r^-1 p r = q of its class.
  std::map<int, std::set<std::pair<int, int>>> pairs;
  for (const auto& r : e) {
    int i1 = id_of(r.z1), i2 = id_of(r.z2);
    int root = find(i1);
    find(i2);
    int p = g.mul(g.mul(g.inv(cx[i1]), local[r.a2]), cx[i2]);
    int q = g.mul(g.mul(cy[i1], local[r.a1]), g.inv(cy[i2]));
    pairs[root].insert({p, q});
  }

  std::vector<Symbol> elements;
  for (int i = 0; i < g.order(); ++i) elements.push_back(make_symbol(SymbolKind::element, i, 1));
  auto emb = std::make_shared<FiniteEmbedding>(a1, elements);

  std::vector<Symbol> present = alphabet(s, words.u.root());
  for (Symbol z : alphabet(s, words.v.root())) present.push_back(z);
  std::map<int, int> letter_of_root;
  std::vector<Symbol> letters;
  std::vector<PartialIso> isos;
  for (Symbol z : present) {
    int root = find(id_of(z));
    if (letter_of_root.count(root)) continue;
    int n = static_cast<int>(letters.size());
    letter_of_root.emplace(root, n);
    letters.push_back(make_symbol(SymbolKind::stable, n, 1));
    // Close the pair set into a subgroup of A1 x A1.
    std::vector<std::pair<int, int>> graph{{g.identity(), g.identity()}};
    std::set<std::pair<int, int>> seen(graph.begin(), graph.end());
    for (auto pq : pairs[root])
      if (seen.insert(pq).second) graph.push_back(pq);
    for (std::size_t i = 0; i < graph.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        for (auto pq : {std::pair{g.mul(graph[i].first, graph[j].first), g.mul(graph[i].second, graph[j].second)},
                        std::pair{g.mul(graph[j].first, graph[i].first), g.mul(graph[j].second, graph[i].second)}})
          if (seen.insert(pq).second) graph.push_back(pq);
    std::vector<int> map(g.order(), -1);
    for (auto [p, q] : graph) {
      if (map[p] >= 0 && map[p] != q) throw std::logic_error("collapsed relations do not define a partial automorphism");
      map[p] = q;
    }
    isos.emplace_back(a1, a1, std::move(map));  // validates injectivity and homomorphism
  }

  auto substitute = [&](Symbol z) -> std::optional<std::vector<Symbol>> {
    int i = id_of(z);
    int root = find(i);
    Symbol t = letters[letter_of_root.at(root)];
    std::vector<Symbol> image;
    int x = cx[i], y = cy[i];
    if (z.sign > 0) {
      if (x != g.identity()) image.push_back(elements[x]);
      image.push_back(t);
      if (y != g.identity()) image.push_back(elements[y]);
    } else {
      if (y != g.identity()) image.push_back(elements[g.inv(y)]);
      image.push_back(t.inverse());
      if (x != g.identity()) image.push_back(elements[g.inv(x)]);
    }
    return image;
  };
  NodeId u = apply_homomorphism(s, words.u.root(), substitute);
  NodeId v = apply_homomorphism(s, words.v.root(), substitute);
  std::vector<int> all(g.order());
  for (int i = 0; i < g.order(); ++i) all[i] = i;
  GroupPtr group = make_hnn(make_finite(emb), emb, emb, all, all, std::move(letters), std::move(isos));
  return {group, {ctx.store_ptr(), u}, {ctx.store_ptr(), v}};
}

GroupPtr split_total_letters(const GroupPtr& g) {
  const HnnDesc& h = hnn_of(g);
  auto finite = std::get_if<FiniteDesc>(&h.base->desc);
  if (!finite || h.a_side != finite->finite || h.b_side != finite->finite) return g;
  const int n = finite->finite->group->order();
  if (h.a_order() != n || static_cast<int>(h.b_elements.size()) != n) return g;
  std::vector<Symbol> total_letters, partial_letters;
  std::vector<PartialIso> total, partial;
  for (std::size_t i = 0; i < h.letters.size(); ++i) {
    if (h.isos[i].is_total()) {
      total_letters.push_back(h.letters[i]);
      total.push_back(h.isos[i]);
    } else {
      partial_letters.push_back(h.letters[i]);
      partial.push_back(h.isos[i]);
    }
  }
  if (total.empty()) return g;
  GroupPtr base = make_semidirect(finite->finite, std::move(total_letters), std::move(total));
  return make_hnn(base, h.a_side, h.b_side, h.a_elements, h.b_elements, std::move(partial_letters),
                  std::move(partial));
}

namespace {

void enter(Context& ctx, const HnnDesc& h, unsigned depth) {
  if (!ctx.depth_limit) ctx.depth_limit = ctx.depth_cap(h.a_order());
  if (depth > *ctx.depth_limit)
    throw DepthExceeded("recursion depth " + std::to_string(depth) + " exceeds the bound " +
                        std::to_string(*ctx.depth_limit));
  ctx.stats().max_depth = std::max(ctx.stats().max_depth, depth);
}

std::vector<int> occurring_letters(const HnnDesc& h, const CompressedWord& u, const CompressedWord& v) {
  std::set<int> found;
  for (const auto* w : {&u, &v})
    for (Symbol x : alphabet(w->store(), w->root()))
      if (int i = h.letter_of(x); i >= 0) found.insert(i);
  return {found.begin(), found.end()};
}

CompressedWord quotient(const CompressedWord& u, const CompressedWord& v) { return concat(u, invert(v)); }

}  // namespace

bool rcwp(const GroupPtr& g_in, const CompressedWord& u_in, const CompressedWord& v_in, Context& ctx,
          unsigned depth) {
  CompressedWord u = import_word(ctx.store_ptr(), u_in);
  CompressedWord v = import_word(ctx.store_ptr(), v_in);
  enter(ctx, hnn_of(g_in), depth);
  ++ctx.stats().rcwp_calls;
  GroupPtr g = with_letters(g_in, occurring_letters(hnn_of(g_in), u, v));
  const HnnDesc& h = hnn_of(g);
  if (h.letters.empty()) return is_trivial(h.base, quotient(u, v), ctx, depth);
  if (!check_pi_t(h, u, v, ctx)) return false;
  if (ctx.eq().equal(u, v)) return true;

  std::string key = memo_key("C", g, u, v, ctx);
  if (auto it = ctx.memo().find(key); it != ctx.memo().end()) {
    ++ctx.stats().memo_hits;
    return it->second;
  }

  bool result;
  GroupPtr split = split_total_letters(g);
  int widest = 0;
  for (std::size_t i = 1; i < h.isos.size(); ++i)
    if (h.isos[i].size() > h.isos[widest].size()) widest = static_cast<int>(i);

  if (hnn_of(split).letters.empty()) {
    result = is_trivial(hnn_of(split).base, quotient(u, v), ctx, depth);
  } else if (h.isos[widest].size() == 1) {
    result = cwp_free_product(h.base, make_free(h.letters), quotient(u, v), ctx, depth);
  } else {
    std::vector<int> rest;
    for (int i = 0; i < static_cast<int>(h.letters.size()); ++i)
      if (i != widest) rest.push_back(i);
    GroupPtr k = with_letters(g, rest);
    Skeleton sk = split_variables(h, widest, u, v, ctx);
    BracketWords bw = eliminate_b1_t(sk, ctx);

    const PartialIso& phi = h.isos[widest];
    std::vector<Tagged> tagged[2];
    for (int x : phi.domain()) tagged[0].push_back({0, x});
    for (int y : phi.range()) tagged[1].push_back({1, y});
    std::vector<Relation> e;
    std::map<SymbolKind, std::pair<std::vector<NodeId>, std::vector<NodeId>>> blocks;
    for (Symbol z : alphabet(ctx.store(), bw.u.root())) blocks[z.kind].first.push_back(z.id);
    for (Symbol z : alphabet(ctx.store(), bw.v.root())) blocks[z.kind].second.push_back(z.id);
    for (auto& [kind, sides] : blocks) {
      int t1 = (kind == SymbolKind::block_right || kind == SymbolKind::block_both) ? 1 : 0;
      int t2 = (kind == SymbolKind::block_left || kind == SymbolKind::block_both) ? 1 : 0;
      auto found = compute_relations(k, h, sides.first, sides.second, tagged[t1], tagged[t2], ctx, depth);
      e.insert(e.end(), found.begin(), found.end());
    }
    Collapsed c = eliminate_z_generators(h, widest, bracket_relations(h, widest, e), bw, ctx);
    trace(ctx, "rcwp", depth,
          {{"letters", h.letters.size()},
           {"dom", phi.size()},
           {"relations", e.size()},
           {"collapsed_letters", hnn_of(c.group).letters.size()}});
    result = ucwp_equal(c.group, c.u, c.v, ctx, depth + 1);
  }
  ctx.memo().emplace(std::move(key), result);
  return result;
}

bool rucwp(const GroupPtr& g, const CompressedWord& u, const CompressedWord& v, Context& ctx, unsigned depth) {
  enter(ctx, hnn_of(g), depth);
  std::string key = memo_key("R", g, u, v, ctx);
  if (auto it = ctx.memo().find(key); it != ctx.memo().end()) {
    ++ctx.stats().memo_hits;
    return it->second;
  }
  LetterReduction lr = reduce_stable_letters(g, u, v, ctx);
  unsigned letters = static_cast<unsigned>(hnn_of(lr.group).letters.size());
  ctx.stats().max_letters_after_reduction = std::max(ctx.stats().max_letters_after_reduction, letters);
  bool result = rcwp(split_total_letters(lr.group), lr.u, lr.v, ctx, depth);
  ctx.memo().emplace(std::move(key), result);
  return result;
}

bool ucwp_equal(const GroupPtr& g, const CompressedWord& u, const CompressedWord& v, Context& ctx, unsigned depth) {
  enter(ctx, hnn_of(g), depth);
  CompressedWord ru = reduce_to_reduced(g, u, ctx, depth);
  CompressedWord rv = reduce_to_reduced(g, v, ctx, depth);
  return rucwp(g, ru, rv, ctx, depth);
}

bool ucwp(const GroupPtr& g, const CompressedWord& w, Context& ctx, unsigned depth) {
  enter(ctx, hnn_of(g), depth);
  CompressedWord r = reduce_to_reduced(g, w, ctx, depth);
  return rucwp(g, r, empty_word(ctx.store_ptr()), ctx, depth);
}

}  // namespace cwp
