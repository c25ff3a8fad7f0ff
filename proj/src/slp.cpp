#include "cwp/slp.hpp"

#include <algorithm>

namespace cwp {

BigInt OccurrenceIndex::kth(NodeId id, BigInt k) {
  if (k < 1 || k > count(id)) throw std::out_of_range("occurrence index out of range");
  const Store& store = eval_.store();
  BigInt offset = 0;
  for (;;) {
    const Node& n = store[id];
    switch (n.kind) {
      case NodeKind::term:
        return offset + 1;
      case NodeKind::pair: {
        BigInt c = count(n.left);
        if (k <= c) {
          id = n.left;
        } else {
          k -= c;
          offset += store[n.left].length;
          id = n.right;
        }
        break;
      }
      case NodeKind::slice:
        k += count_prefix(n.left, n.lo - 1);
        offset -= n.lo - 1;
        id = n.left;
        break;
    }
  }
}

CompressedWord make_word(const std::shared_ptr<Store>& store, std::span<const Symbol> symbols) {
  return {store, store->word(symbols)};
}

CompressedWord empty_word(const std::shared_ptr<Store>& store) { return {store, kEmpty}; }

Symbol char_at(const CompressedWord& w, const BigInt& i) { return w.store().char_at(w.root(), i); }

CompressedWord import_word(const std::shared_ptr<Store>& target, const CompressedWord& w) {
  if (w.store_ptr() == target || w.empty()) return {target, w.root()};
  const Store& src = w.store();
  std::unordered_map<NodeId, NodeId> copied;
  std::function<NodeId(NodeId)> copy = [&](NodeId id) -> NodeId {
    if (auto it = copied.find(id); it != copied.end()) return it->second;
    const Node& n = src[id];
    NodeId out;
    switch (n.kind) {
      case NodeKind::term:
        out = target->term(n.symbol);
        break;
      case NodeKind::pair:
        out = target->make_pair(copy(n.left), copy(n.right));
        break;
      default:
        out = target->slice(copy(n.left), n.lo, n.lo + n.length - 1);
        break;
    }
    copied.emplace(id, out);
    return out;
  };
  return {target, copy(w.root())};
}

CompressedWord concat(const CompressedWord& u, const CompressedWord& v) {
  CompressedWord vv = import_word(u.store_ptr(), v);
  return {u.store_ptr(), u.store().pair(u.root(), vv.root())};
}

CompressedWord slice(const CompressedWord& w, const BigInt& i, const BigInt& j) {
  return {w.store_ptr(), w.store().slice(w.root(), i, j)};
}

CompressedWord invert(const CompressedWord& w) { return {w.store_ptr(), w.store().invert(w.root())}; }

namespace {

class Normalizer {
 public:
  explicit Normalizer(Store& store) : store_(store) {}

  NodeId run(NodeId id) {
    if (id == kEmpty) return kEmpty;
    if (auto it = memo_.find(id); it != memo_.end()) return it->second;
    const Node& n = store_[id];
    NodeId out = id;
    if (n.kind == NodeKind::pair) {
      NodeId left = n.left, right = n.right;
      NodeId l = run(left);
      NodeId r = run(right);
      if (l != left || r != right) out = store_.make_pair(l, r);
    } else if (n.kind == NodeKind::slice) {
      NodeId source = n.left;
      BigInt lo = n.lo;
      BigInt hi = n.lo + n.length - 1;
      out = extract(run(source), lo, hi);
    }
    memo_.emplace(id, out);
    return out;
  }

 private:
  // id is slice-free and 1 <= i <= j <= |id|.
  NodeId extract(NodeId id, const BigInt& i, const BigInt& j) {
    for (;;) {
      const Node& n = store_[id];
      if (i == 1 && j == n.length) return id;
      const BigInt& left_len = store_[n.left].length;
      if (j <= left_len) {
        id = n.left;
        continue;
      }
      if (i > left_len) return extract(n.right, i - left_len, j - left_len);
      NodeId left = n.left, right = n.right;
      return store_.make_pair(suffix(left, i), prefix(right, j - left_len));
    }
  }

  NodeId suffix(NodeId id, BigInt i) {
    const Node& n = store_[id];
    if (i == 1) return id;
    const BigInt& left_len = store_[n.left].length;
    if (i > left_len) return suffix(n.right, i - left_len);
    NodeId right = n.right;
    return store_.make_pair(suffix(n.left, i), right);
  }

  NodeId prefix(NodeId id, const BigInt& j) {
    const Node& n = store_[id];
    if (j == n.length) return id;
    const BigInt& left_len = store_[n.left].length;
    if (j <= left_len) return prefix(n.left, j);
    NodeId left = n.left;
    return store_.make_pair(left, prefix(n.right, j - left_len));
  }

  Store& store_;
  std::unordered_map<NodeId, NodeId> memo_;
};

}  // namespace

NodeId normalize(Store& store, NodeId root) { return Normalizer(store).run(root); }

CompressedWord normalize(const CompressedWord& w) {
  return {w.store_ptr(), normalize(w.store(), w.root())};
}

NodeId project(Store& store, NodeId root, const SymbolPredicate& keep) {
  if (root == kEmpty) return kEmpty;
  OccurrenceIndex counts(store, keep);
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> go = [&](NodeId id) -> NodeId {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Node& n = store[id];
    NodeId out = kEmpty;
    switch (n.kind) {
      case NodeKind::term:
        out = keep(n.symbol) ? id : kEmpty;
        break;
      case NodeKind::pair: {
        NodeId left = n.left, right = n.right;
        NodeId l = go(left);
        out = store.pair(l, go(right));
        break;
      }
      case NodeKind::slice: {
        NodeId source = n.left;
        BigInt before = counts.count_prefix(source, n.lo - 1);
        BigInt upto = counts.count_prefix(source, n.lo + n.length - 1);
        if (before != upto) out = store.slice(go(source), before + 1, upto);
        break;
      }
    }
    memo.emplace(id, out);
    return out;
  };
  return go(root);
}

CompressedWord project(const CompressedWord& w, const SymbolPredicate& keep) {
  return {w.store_ptr(), project(w.store(), w.root(), keep)};
}

NodeId apply_homomorphism(Store& store, NodeId root, const Homomorphism& h) {
  root = normalize(store, root);
  if (root == kEmpty) return kEmpty;
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> go = [&](NodeId id) -> NodeId {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Node& n = store[id];
    NodeId out;
    if (n.kind == NodeKind::term) {
      auto image = h(n.symbol);
      out = image ? store.word(*image) : id;
    } else {
      NodeId left = n.left, right = n.right;
      NodeId l = go(left);
      out = store.pair(l, go(right));
    }
    memo.emplace(id, out);
    return out;
  };
  return go(root);
}

CompressedWord apply_homomorphism(const CompressedWord& w, const Homomorphism& h) {
  return {w.store_ptr(), apply_homomorphism(w.store(), w.root(), h)};
}

NodeId apply_transducer(Store& store, NodeId root, const Transducer& t) {
  root = normalize(store, root);
  using State = Transducer::State;
  struct Key {
    NodeId node;
    State state;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.state * 0x9E3779B97F4A7C15ull ^ k.node);
    }
  };
  std::unordered_map<Key, std::pair<State, NodeId>, KeyHash> memo;
  std::function<std::pair<State, NodeId>(NodeId, State)> go = [&](NodeId id, State s) {
    Key key{id, s};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const Node& n = store[id];
    std::pair<State, NodeId> out;
    if (n.kind == NodeKind::term) {
      auto step = t.step(s, n.symbol);
      if (!step) throw TransducerRejects("transducer has no transition on " + debug_string(n.symbol));
      out = {step->next, store.word(step->output)};
    } else {
      NodeId left = n.left, right = n.right;
      auto [mid, l] = go(left, s);
      auto [end, r] = go(right, mid);
      out = {end, store.pair(l, r)};
    }
    memo.emplace(key, out);
    return out;
  };
  State end = t.initial();
  NodeId out = kEmpty;
  if (root != kEmpty) std::tie(end, out) = go(root, t.initial());
  if (!t.is_final(end)) throw TransducerRejects("transducer run ends in a non-final state");
  return out;
}

CompressedWord apply_transducer(const Transducer& t, const CompressedWord& w) {
  return {w.store_ptr(), apply_transducer(w.store(), w.root(), t)};
}

BigInt kth_occurrence(const CompressedWord& w, const SymbolPredicate& pred, const BigInt& k) {
  if (w.empty()) throw std::out_of_range("occurrence index out of range");
  OccurrenceIndex index(w.store(), pred);
  return index.kth(w.root(), k);
}

namespace {

void append_all(const Store& store, NodeId id, std::vector<Symbol>& out);

void append_range(const Store& store, NodeId id, const BigInt& i, const BigInt& j,
                  std::vector<Symbol>& out) {
  const Node& n = store[id];
  if (i == 1 && j == n.length) return append_all(store, id, out);
  switch (n.kind) {
    case NodeKind::term:
      out.push_back(n.symbol);
      return;
    case NodeKind::pair: {
      const BigInt& left_len = store[n.left].length;
      if (i <= left_len) append_range(store, n.left, i, std::min<BigInt>(j, left_len), out);
      if (j > left_len) append_range(store, n.right, std::max<BigInt>(i - left_len, 1), j - left_len, out);
      return;
    }
    case NodeKind::slice:
      append_range(store, n.left, i + n.lo - 1, j + n.lo - 1, out);
      return;
  }
}

void append_all(const Store& store, NodeId id, std::vector<Symbol>& out) {
  const Node& n = store[id];
  switch (n.kind) {
    case NodeKind::term:
      out.push_back(n.symbol);
      return;
    case NodeKind::pair:
      append_all(store, n.left, out);
      append_all(store, n.right, out);
      return;
    case NodeKind::slice:
      append_range(store, n.left, n.lo, n.lo + n.length - 1, out);
      return;
  }
}

}  // namespace

std::vector<Symbol> decompress(const Store& store, NodeId root, const BigInt& cap) {
  std::vector<Symbol> out;
  if (root == kEmpty) return out;
  if (store.length(root) > cap)
    throw TooLong("word of length " + store.length(root).str() + " exceeds the decompression cap");
  out.reserve(static_cast<std::size_t>(store.length(root)));
  append_all(store, root, out);
  return out;
}

std::vector<Symbol> decompress_range(const Store& store, NodeId id, const BigInt& i, const BigInt& j) {
  std::vector<Symbol> out;
  if (i > j) return out;
  out.reserve(static_cast<std::size_t>(j - i + 1));
  append_range(store, id, i, j, out);
  return out;
}

std::vector<Symbol> decompress(const CompressedWord& w, const BigInt& cap) {
  return decompress(w.store(), w.root(), cap);
}

namespace {

struct LetterSetMonoid {
  using Value = std::vector<std::uint64_t>;
  Value identity() const { return {}; }
  Value op(const Value& a, const Value& b) const {
    Value out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }
  Value of(Symbol s) const { return {s.positive().key()}; }
};

}  // namespace

std::vector<Symbol> alphabet(const Store& store, NodeId root) {
  std::vector<Symbol> out;
  if (root == kEmpty) return out;
  RangeEvaluator<LetterSetMonoid> eval(store, {});
  // Keys are unique per positive symbol; recover the symbols from the grammar leaves.
  auto keys = eval.value(root);
  std::unordered_map<std::uint64_t, Symbol> by_key;
  std::vector<NodeId> stack{root};
  std::unordered_set<NodeId> seen;
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const Node& n = store[id];
    if (n.kind == NodeKind::term) {
      by_key.emplace(n.symbol.positive().key(), n.symbol.positive());
    } else {
      stack.push_back(n.left);
      if (n.kind == NodeKind::pair) stack.push_back(n.right);
    }
  }
  for (auto k : keys) out.push_back(by_key.at(k));
  return out;
}

BigInt last_true(const BigInt& limit, const std::function<bool(const BigInt&)>& pred) {
  BigInt lo = 1;
  BigInt hi = 2;
  while (hi <= limit && pred(hi)) {
    lo = hi;
    hi *= 2;
  }
  if (hi > limit) hi = limit + 1;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (pred(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

std::size_t grammar_size(const Store& store, NodeId root) {
  if (root == kEmpty) return 0;
  std::vector<NodeId> stack{root};
  std::unordered_set<NodeId> seen;
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const Node& n = store[id];
    if (n.kind != NodeKind::term) stack.push_back(n.left);
    if (n.kind == NodeKind::pair) stack.push_back(n.right);
  }
  return seen.size();
}

}  // namespace cwp
