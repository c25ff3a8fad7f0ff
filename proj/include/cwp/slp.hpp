#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cwp/store.hpp"

namespace cwp {

// Evaluates a monoid homomorphism on nodes and on arbitrary position ranges
// of nodes. Monoid needs: Value, identity(), op(a, b), of(Symbol).
template <class Monoid>
class RangeEvaluator {
 public:
  using Value = typename Monoid::Value;

  RangeEvaluator(const Store& store, Monoid monoid) : store_(store), monoid_(std::move(monoid)) {}

  const Monoid& monoid() const { return monoid_; }
  const Store& store() const { return store_; }

  Value value(NodeId id) {
    if (id == kEmpty) return monoid_.identity();
    if (auto it = cache_.find(id); it != cache_.end()) return it->second;
    const Node& n = store_[id];
    Value v;
    switch (n.kind) {
      case NodeKind::term:
        v = monoid_.of(n.symbol);
        break;
      case NodeKind::pair:
        v = monoid_.op(value(n.left), value(n.right));
        break;
      case NodeKind::slice:
        v = range(n.left, n.lo, n.lo + n.length - 1);
        break;
    }
    return cache_.emplace(id, std::move(v)).first->second;
  }

  // Value of positions i..j (1-based, inclusive); empty when i > j.
  Value range(NodeId id, const BigInt& i, const BigInt& j) {
    if (i > j) return monoid_.identity();
    const Node& n = store_[id];
    if (i == 1 && j == n.length) return value(id);
    switch (n.kind) {
      case NodeKind::term:
        return value(id);
      case NodeKind::pair: {
        const BigInt& left_len = store_[n.left].length;
        if (j <= left_len) return range(n.left, i, j);
        if (i > left_len) return range(n.right, i - left_len, j - left_len);
        return monoid_.op(range(n.left, i, left_len), range(n.right, 1, j - left_len));
      }
      case NodeKind::slice:
        return range(n.left, i + n.lo - 1, j + n.lo - 1);
    }
    return monoid_.identity();
  }

  Value prefix(NodeId id, const BigInt& j) { return j <= 0 ? monoid_.identity() : range(id, 1, j); }

 private:
  const Store& store_;
  Monoid monoid_;
  std::unordered_map<NodeId, Value> cache_;
};

using SymbolPredicate = std::function<bool(Symbol)>;

struct CountMonoid {
  using Value = BigInt;
  SymbolPredicate predicate;
  Value identity() const { return 0; }
  Value op(const Value& a, const Value& b) const { return a + b; }
  Value of(Symbol s) const { return predicate(s) ? 1 : 0; }
};

// Counts and locates occurrences of symbols matching a predicate.
class OccurrenceIndex {
 public:
  OccurrenceIndex(const Store& store, SymbolPredicate predicate)
      : eval_(store, CountMonoid{std::move(predicate)}) {}

  BigInt count(NodeId id) { return eval_.value(id); }
  BigInt count_prefix(NodeId id, const BigInt& j) { return eval_.prefix(id, j); }
  // Position of the k-th matching symbol, 1 <= k <= count(id).
  BigInt kth(NodeId id, BigInt k);

 private:
  RangeEvaluator<CountMonoid> eval_;
};

// Deterministic transducer given by a transition function. Transitions
// that return nullopt are undefined.
class Transducer {
 public:
  using State = std::uint64_t;
  struct Step {
    State next;
    std::vector<Symbol> output;
  };
  using Delta = std::function<std::optional<Step>(State, Symbol)>;

  Transducer(State initial, std::function<bool(State)> is_final, Delta delta)
      : initial_(initial), is_final_(std::move(is_final)), delta_(std::move(delta)) {}

  State initial() const { return initial_; }
  bool is_final(State s) const { return is_final_(s); }
  std::optional<Step> step(State s, Symbol x) const { return delta_(s, x); }

 private:
  State initial_;
  std::function<bool(State)> is_final_;
  Delta delta_;
};

class TransducerRejects : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// nullopt means "map the symbol to itself".
using Homomorphism = std::function<std::optional<std::vector<Symbol>>(Symbol)>;

CompressedWord make_word(const std::shared_ptr<Store>& store, std::span<const Symbol> symbols);
CompressedWord empty_word(const std::shared_ptr<Store>& store);

Symbol char_at(const CompressedWord& w, const BigInt& i);
CompressedWord concat(const CompressedWord& u, const CompressedWord& v);
CompressedWord slice(const CompressedWord& w, const BigInt& i, const BigInt& j);
CompressedWord invert(const CompressedWord& w);
// Copies the nodes reachable from w into `target`.
CompressedWord import_word(const std::shared_ptr<Store>& target, const CompressedWord& w);

// Rewrites the word so that no slice nodes remain.
NodeId normalize(Store& store, NodeId root);
CompressedWord normalize(const CompressedWord& w);

NodeId project(Store& store, NodeId root, const SymbolPredicate& keep);
CompressedWord project(const CompressedWord& w, const SymbolPredicate& keep);

NodeId apply_homomorphism(Store& store, NodeId root, const Homomorphism& h);
CompressedWord apply_homomorphism(const CompressedWord& w, const Homomorphism& h);

NodeId apply_transducer(Store& store, NodeId root, const Transducer& t);
CompressedWord apply_transducer(const Transducer& t, const CompressedWord& w);

BigInt kth_occurrence(const CompressedWord& w, const SymbolPredicate& pred, const BigInt& k);

std::vector<Symbol> decompress(const Store& store, NodeId root, const BigInt& cap);
std::vector<Symbol> decompress(const CompressedWord& w, const BigInt& cap);
// Positions i..j of id, 1 <= i, j <= |id|; empty when i > j.
std::vector<Symbol> decompress_range(const Store& store, NodeId id, const BigInt& i, const BigInt& j);

// Letters (sign ignored) occurring in the word.
std::vector<Symbol> alphabet(const Store& store, NodeId root);

// Largest k in [1, limit] with pred(k), for pred monotone (true then false)
// and pred(1) true. Gallops upward, then bisects.
BigInt last_true(const BigInt& limit, const std::function<bool(const BigInt&)>& pred);

// Number of distinct nodes reachable from root.
std::size_t grammar_size(const Store& store, NodeId root);

}  // namespace cwp
