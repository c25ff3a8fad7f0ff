#include "cwp/store.hpp"

#include <atomic>
#include <sstream>

namespace cwp {

namespace {

const BigInt kZero = 0;
std::atomic<std::uint64_t> next_uid{1};

}  // namespace

std::string debug_string(Symbol s) {
  static const char* kinds[] = {"g", "e", "t", "Z", "Zt", "tZ", "tZt", "$", "C"};
  std::ostringstream out;
  out << kinds[static_cast<int>(s.kind)] << s.scope << "." << s.id;
  if (s.sign < 0) out << "^-1";
  return out.str();
}

Store::Store() : uid_(next_uid++) {}

const BigInt& Store::length(NodeId id) const {
  return id == kEmpty ? kZero : nodes_[id].length;
}

std::uint32_t Store::height(NodeId id) const {
  return id == kEmpty ? 0 : nodes_[id].height;
}

NodeId Store::push(Node&& n) {
  if (nodes_.size() >= kEmpty - 1) throw std::length_error("node store exhausted");
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Store::term(Symbol s) {
  auto it = terms_.find(s.key());
  if (it != terms_.end()) return it->second;
  Node n;
  n.kind = NodeKind::term;
  n.symbol = s;
  n.first = n.last = s;
  n.length = 1;
  NodeId id = push(std::move(n));
  terms_.emplace(s.key(), id);
  return id;
}

NodeId Store::make_pair(NodeId a, NodeId b) {
  Node n;
  n.kind = NodeKind::pair;
  n.left = a;
  n.right = b;
  n.height = std::max(nodes_[a].height, nodes_[b].height) + 1;
  n.first = nodes_[a].first;
  n.last = nodes_[b].last;
  n.length = nodes_[a].length + nodes_[b].length;
  return push(std::move(n));
}

NodeId Store::pair(NodeId a, NodeId b) {
  if (a == kEmpty) return b;
  if (b == kEmpty) return a;
  return make_pair(a, b);
}

NodeId Store::slice(NodeId src, const BigInt& lo_in, const BigInt& hi_in) {
  BigInt lo = lo_in;
  BigInt hi = hi_in;
  if (lo == hi + 1) return kEmpty;
  if (src == kEmpty || lo < 1 || hi > length(src) || lo > hi)
    throw std::out_of_range("slice bounds outside the word");
  for (;;) {
    const Node& n = nodes_[src];
    if (lo == 1 && hi == n.length) return src;
    if (n.kind == NodeKind::pair) {
      const BigInt& left_len = nodes_[n.left].length;
      if (hi <= left_len) {
        src = n.left;
        continue;
      }
      if (lo > left_len) {
        lo -= left_len;
        hi -= left_len;
        src = n.right;
        continue;
      }
      break;
    }
    if (n.kind == NodeKind::slice) {
      lo += n.lo - 1;
      hi += n.lo - 1;
      src = n.left;
      continue;
    }
    break;
  }
  Node n;
  n.kind = NodeKind::slice;
  n.left = src;
  n.height = nodes_[src].height + 1;
  n.first = char_at(src, lo);
  n.last = char_at(src, hi);
  n.length = hi - lo + 1;
  n.lo = lo;
  return push(std::move(n));
}

NodeId Store::prefix(NodeId src, const BigInt& n) { return slice(src, 1, n); }

NodeId Store::suffix_from(NodeId src, const BigInt& i) { return slice(src, i, length(src)); }

NodeId Store::word_range(std::span<const Symbol> symbols) {
  if (symbols.size() == 1) return term(symbols[0]);
  std::size_t half = symbols.size() / 2;
  return make_pair(word_range(symbols.first(half)), word_range(symbols.subspan(half)));
}

NodeId Store::word(std::span<const Symbol> symbols) {
  if (symbols.empty()) return kEmpty;
  return word_range(symbols);
}

NodeId Store::invert(NodeId id) {
  if (id == kEmpty) return kEmpty;
  auto it = inverses_.find(id);
  if (it != inverses_.end()) return it->second;
  NodeId result;
  const Node& n = nodes_[id];
  switch (n.kind) {
    case NodeKind::term:
      if (!n.symbol.invertible()) throw std::invalid_argument("end marker has no inverse");
      result = term(n.symbol.inverse());
      break;
    case NodeKind::pair: {
      NodeId left = n.left, right = n.right;
      NodeId r = invert(right);
      NodeId l = invert(left);
      result = make_pair(r, l);
      break;
    }
    default: {
      NodeId source = n.left;
      BigInt lo = n.lo;
      BigInt hi = n.lo + n.length - 1;
      NodeId inv = invert(source);
      const BigInt& total = nodes_[source].length;
      result = slice(inv, total - hi + 1, total - lo + 1);
      break;
    }
  }
  inverses_[id] = result;
  inverses_[result] = id;
  return result;
}

Symbol Store::char_at(NodeId id, BigInt i) const {
  if (id == kEmpty || i < 1 || i > nodes_[id].length)
    throw std::out_of_range("position outside the word");
  for (;;) {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case NodeKind::term:
        return n.symbol;
      case NodeKind::pair: {
        const BigInt& left_len = nodes_[n.left].length;
        if (i <= left_len) {
          id = n.left;
        } else {
          i -= left_len;
          id = n.right;
        }
        break;
      }
      case NodeKind::slice:
        i += n.lo - 1;
        id = n.left;
        break;
    }
  }
}

}  // namespace cwp
