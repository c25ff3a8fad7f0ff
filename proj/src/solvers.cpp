#include "cwp/solvers.hpp"

#include "cwp/hnn.hpp"

namespace cwp {

namespace {

struct FiniteMonoid {
  using Value = int;
  const FiniteEmbedding* f;
  Value identity() const { return f->group->identity(); }
  Value op(Value a, Value b) const { return f->group->mul(a, b); }
  Value of(Symbol s) const {
    auto e = f->element(s);
    if (!e) throw InputError("symbol " + debug_string(s) + " is not an element of the finite group");
    return *e;
  }
};

using FiniteEvaluator = RangeEvaluator<FiniteMonoid>;

FiniteEvaluator& finite_evaluator(const EmbeddingPtr& f, Context& ctx) {
  return ctx.cache<FiniteEvaluator>(f, [&] { return FiniteEvaluator(ctx.store(), FiniteMonoid{f.get()}); });
}

CompressedWord in_context(const CompressedWord& w, Context& ctx) { return import_word(ctx.store_ptr(), w); }

}  // namespace

int evaluate_finite(const EmbeddingPtr& f, const CompressedWord& w, Context& ctx) {
  CompressedWord x = in_context(w, ctx);
  return finite_evaluator(f, ctx).value(x.root());
}

bool cwp_finite(const EmbeddingPtr& f, const CompressedWord& w, Context& ctx) {
  return evaluate_finite(f, w, ctx) == f->group->identity();
}

CompressedWord free_reduce(const CompressedWord& input, Context& ctx) {
  Store& s = ctx.store();
  NodeId root = normalize(s, in_context(input, ctx).root());
  std::unordered_map<NodeId, NodeId> memo;
  auto join = [&](NodeId y, NodeId z) -> NodeId {
    if (y == kEmpty) return z;
    if (z == kEmpty) return y;
    if (s.last(y) != s.first(z).inverse()) return s.pair(y, z);
    NodeId yi = s.invert(y);
    BigInt m = std::min(s.length(y), s.length(z));
    BigInt k = last_true(m, [&](const BigInt& k) { return ctx.eq().equal_range(s, yi, 1, z, 1, k); });
    return s.pair(s.prefix(y, s.length(y) - k), s.suffix_from(z, k + 1));
  };
  std::function<NodeId(NodeId)> go = [&](NodeId id) -> NodeId {
    if (id == kEmpty) return kEmpty;
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Node& n = s[id];
    NodeId out = id;
    if (n.kind == NodeKind::pair) {
      NodeId left = n.left, right = n.right;
      NodeId y = go(left);
      out = join(y, go(right));
    }
    memo.emplace(id, out);
    return out;
  };
  return {ctx.store_ptr(), go(root)};
}

bool cwp_free(const CompressedWord& w, Context& ctx) { return free_reduce(w, ctx).empty(); }

namespace {

// Classes of nontrivial elements of one free factor, each with a
// representative word. Finite factors use their elements directly.
class FactorClasses {
 public:
  FactorClasses(GroupPtr g, std::uint16_t side) : group_(std::move(g)), side_(side) {
    if (auto f = std::get_if<FiniteDesc>(&group_->desc)) finite_ = f->finite;
  }

  Symbol class_symbol(int c) const { return make_symbol(SymbolKind::block_class, c, side_); }

  // -1 for the identity.
  int classify(NodeId word, Context& ctx, unsigned depth) {
    Store& s = ctx.store();
    if (finite_) {
      int e = finite_evaluator(finite_, ctx).value(word);
      return e == finite_->group->identity() ? -1 : e;
    }
    std::string fp = ctx.eq().fingerprint(s, word).str();
    if (auto it = by_fp_.find(fp); it != by_fp_.end()) return it->second;
    int result = -1;
    if (!is_trivial(group_, {ctx.store_ptr(), word}, ctx, depth)) {
      for (int c = 0; c < static_cast<int>(reps_.size()) && result < 0; ++c) {
        NodeId probe = s.pair(word, s.invert(reps_[c]));
        if (is_trivial(group_, {ctx.store_ptr(), probe}, ctx, depth)) result = c;
      }
      if (result < 0) {
        result = static_cast<int>(reps_.size());
        reps_.push_back(word);
        inverses_.push_back(-2);
      }
    }
    by_fp_.emplace(fp, result);
    return result;
  }

  int inverse(int c, Context& ctx, unsigned depth) {
    if (finite_) return finite_->group->inv(c);
    if (inverses_[c] == -2) {
      int ic = classify(ctx.store().invert(reps_[c]), ctx, depth);
      inverses_[c] = ic;
      if (ic >= 0) inverses_[ic] = c;
    }
    return inverses_[c];
  }

  NodeId rep(int c, Context& ctx) {
    if (finite_) return ctx.store().term(finite_->symbol(c));
    return reps_[c];
  }

 private:
  GroupPtr group_;
  std::uint16_t side_;
  EmbeddingPtr finite_;
  std::vector<NodeId> reps_;
  std::vector<int> inverses_;
  std::unordered_map<std::string, int> by_fp_;
};

}  // namespace

bool cwp_free_product(const GroupPtr& left, const GroupPtr& right, const CompressedWord& w, Context& ctx,
                      unsigned depth) {
  Store& s = ctx.store();
  NodeId root = normalize(s, in_context(w, ctx).root());
  FactorClasses classes[2] = {FactorClasses(left, 0), FactorClasses(right, 1)};
  auto side_of = [&](Symbol x) -> int {
    if (left->owns(x)) return 0;
    if (right->owns(x)) return 1;
    throw InputError("symbol " + debug_string(x) + " belongs to neither free factor");
  };
  // For every node: its normal form as a string of block classes, and the
  // class string of its inverse.
  struct Form {
    NodeId word;
    NodeId inverse;
  };
  std::unordered_map<NodeId, Form> memo;
  auto join = [&](Form y, Form z) -> Form {
    if (y.word == kEmpty) return z;
    if (z.word == kEmpty) return y;
    int side = static_cast<int>(s.last(y.word).scope);
    if (side != static_cast<int>(s.first(z.word).scope)) return {s.pair(y.word, z.word), s.pair(z.inverse, y.inverse)};
    const BigInt p = s.length(y.word);
    const BigInt q = s.length(z.word);
    BigInt d = 0;
    if (s.first(y.inverse) == s.first(z.word))
      d = last_true(std::min(p, q),
                 [&](const BigInt& k) { return ctx.eq().equal_range(s, y.inverse, 1, z.word, 1, k); });
    if (d == p && d == q) return {kEmpty, kEmpty};
    if (d == p) return {s.suffix_from(z.word, d + 1), s.prefix(z.inverse, q - d)};
    if (d == q) return {s.prefix(y.word, p - d), s.suffix_from(y.inverse, d + 1)};
    // After cancelling d blocks the merging blocks lie in factor side ^ (d odd).
    Symbol sy = s.char_at(y.word, p - d);
    auto& fc = classes[sy.scope];
    int cy = static_cast<int>(sy.id);
    int cz = static_cast<int>(s.char_at(z.word, d + 1).id);
    int cm = fc.classify(s.pair(fc.rep(cy, ctx), fc.rep(cz, ctx)), ctx, depth);
    if (cm < 0) throw std::logic_error("free product: merged block became trivial");
    NodeId mid = s.term(fc.class_symbol(cm));
    NodeId mid_inv = s.term(fc.class_symbol(fc.inverse(cm, ctx, depth)));
    NodeId word = s.pair(s.prefix(y.word, p - d - 1), mid, s.suffix_from(z.word, d + 2));
    NodeId inv = s.pair(s.prefix(z.inverse, q - d - 1), mid_inv, s.suffix_from(y.inverse, d + 2));
    return {word, inv};
  };
  std::function<Form(NodeId)> go = [&](NodeId id) -> Form {
    if (id == kEmpty) return {kEmpty, kEmpty};
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Node& n = s[id];
    Form out;
    if (n.kind == NodeKind::term) {
      int side = side_of(n.symbol);
      auto& fc = classes[side];
      int c = fc.classify(id, ctx, depth);
      if (c < 0)
        out = {kEmpty, kEmpty};
      else
        out = {s.term(fc.class_symbol(c)), s.term(fc.class_symbol(fc.inverse(c, ctx, depth)))};
    } else {
      NodeId left_child = n.left, right_child = n.right;
      Form y = go(left_child);
      out = join(y, go(right_child));
    }
    memo.emplace(id, out);
    return out;
  };
  return go(root).word == kEmpty;
}

namespace {

struct SemidirectMonoid {
  struct Value {
    std::vector<int> f;  // h p = p f(h) for the stable-letter part p
    int h = 0;
  };
  const SemidirectDesc* g;
  std::vector<std::vector<int>> forward, backward;
  std::unordered_map<std::uint64_t, int> letter;

  explicit SemidirectMonoid(const SemidirectDesc* d) : g(d) {
    for (std::size_t i = 0; i < d->letters.size(); ++i) {
      forward.push_back(d->autos[i].map());
      backward.push_back(d->autos[i].inverse().map());
      letter.emplace(d->letters[i].positive().key(), static_cast<int>(i));
    }
  }
  std::vector<int> id_map() const {
    std::vector<int> f(g->finite->group->order());
    for (int i = 0; i < static_cast<int>(f.size()); ++i) f[i] = i;
    return f;
  }
  Value identity() const { return {id_map(), g->finite->group->identity()}; }
  Value op(const Value& a, const Value& b) const {
    Value out;
    out.f.resize(a.f.size());
    for (std::size_t x = 0; x < a.f.size(); ++x) out.f[x] = b.f[a.f[x]];
    out.h = g->finite->group->mul(b.f[a.h], b.h);
    return out;
  }
  Value of(Symbol s) const {
    if (auto it = letter.find(s.positive().key()); it != letter.end())
      return {s.sign > 0 ? forward[it->second] : backward[it->second], g->finite->group->identity()};
    auto e = g->finite->element(s);
    if (!e) throw InputError("symbol " + debug_string(s) + " is not in the semidirect product");
    return {id_map(), *e};
  }
};

}  // namespace

bool cwp_semidirect(const SemidirectDesc& g, const CompressedWord& w, Context& ctx) {
  CompressedWord x = in_context(w, ctx);
  SemidirectMonoid monoid(&g);
  auto letter_pred = [&](Symbol s) { return monoid.letter.count(s.positive().key()) > 0; };
  if (!cwp_free(project(x, letter_pred), ctx)) return false;
  RangeEvaluator<SemidirectMonoid> eval(ctx.store(), monoid);
  return eval.value(x.root()).h == g.finite->group->identity();
}

GroupPtr amalgam_hnn(const AmalgamDesc& g) {
  return make_hnn(make_free_product(g.h1, g.h2), g.g1, g.g2, g.iso.domain(), g.iso.range(), {g.letter}, {g.iso});
}

CompressedWord amalgam_embed(const AmalgamDesc& g, const CompressedWord& w) {
  Symbol t = g.letter;
  return apply_homomorphism(w, [&](Symbol x) -> std::optional<std::vector<Symbol>> {
    if (g.h1->owns(x)) return std::vector<Symbol>{t.inverse(), x, t};
    return std::nullopt;
  });
}

bool cwp_amalgam(const AmalgamDesc& g, const CompressedWord& w, Context& ctx, unsigned depth) {
  return is_trivial(amalgam_hnn(g), amalgam_embed(g, in_context(w, ctx)), ctx, depth);
}

void check_alphabet(const GroupNode& g, const CompressedWord& w) {
  for (Symbol s : alphabet(w.store(), w.root()))
    if (!g.owns(s)) throw InputError("symbol " + debug_string(s) + " is not a generator of the group");
}

bool is_trivial(const GroupPtr& g, const CompressedWord& w, Context& ctx, unsigned depth) {
  return std::visit(
      [&](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FiniteDesc>) {
          return cwp_finite(d.finite, w, ctx);
        } else if constexpr (std::is_same_v<T, FreeDesc>) {
          return cwp_free(w, ctx);
        } else if constexpr (std::is_same_v<T, FreeProductDesc>) {
          return cwp_free_product(d.left, d.right, w, ctx, depth);
        } else if constexpr (std::is_same_v<T, SemidirectDesc>) {
          return cwp_semidirect(d, w, ctx);
        } else if constexpr (std::is_same_v<T, HnnDesc>) {
          return ucwp(g, in_context(w, ctx), ctx, depth);
        } else {
          return cwp_amalgam(d, w, ctx, depth);
        }
      },
      g->desc);
}

Verdict cwp(const GroupPtr& g, const CompressedWord& w, Context& ctx) {
  CompressedWord x = in_context(w, ctx);
  check_alphabet(*g, x);
  Verdict v;
  v.trivial = is_trivial(g, x, ctx, 0);
  v.stats = ctx.stats();
  v.fp_bits = ctx.eq().fp_bits();
  return v;
}

Verdict equal_in(const GroupPtr& g, const CompressedWord& u, const CompressedWord& v, Context& ctx) {
  CompressedWord x = in_context(u, ctx);
  CompressedWord y = in_context(v, ctx);
  check_alphabet(*g, x);
  check_alphabet(*g, y);
  Verdict out;
  if (std::holds_alternative<HnnDesc>(g->desc))
    out.trivial = ucwp_equal(g, x, y, ctx, 0);
  else
    out.trivial = is_trivial(g, concat(x, invert(y)), ctx, 0);
  out.stats = ctx.stats();
  out.fp_bits = ctx.eq().fp_bits();
  return out;
}

}  // namespace cwp
