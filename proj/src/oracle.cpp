#include "cwp/oracle.hpp"

#include <stdexcept>

namespace cwp::oracle {

namespace {

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word join(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool trivial_free_product(const GroupNode& left, const GroupNode& right, const Word& w) {
  // Maximal single-factor blocks; a trivial block is dropped and its
  // neighbours merge. Nontrivial iff some nontrivial blocks remain.
  struct Block {
    bool is_left;
    Word word;
  };
  std::vector<Block> blocks;
  for (Symbol s : w) {
    bool l = left.owns(s);
    if (!l && !right.owns(s)) throw std::invalid_argument("symbol outside the free product");
    if (blocks.empty() || blocks.back().is_left != l) blocks.push_back({l, {}});
    blocks.back().word.push_back(s);
  }
  bool changed = true;
  while (changed && !blocks.empty()) {
    changed = false;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (!trivial(blocks[i].is_left ? left : right, blocks[i].word)) continue;
      blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(i));
      if (i > 0 && i < blocks.size()) {
        blocks[i - 1].word = join(blocks[i - 1].word, blocks[i].word);
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(i));
      }
      changed = true;
      break;
    }
  }
  return blocks.empty();
}

bool trivial_semidirect(const SemidirectDesc& d, const Word& w) {
  const FiniteGroup& g = *d.finite->group;
  // Pushing every element to the right end: x t = t phi(x).
  Word letters;
  std::vector<int> h_total;
  int h = g.identity();
  for (Symbol s : w) {
    if (auto x = d.finite->element(s)) {
      h = g.mul(h, *x);
      continue;
    }
    int idx = -1;
    for (std::size_t i = 0; i < d.letters.size(); ++i)
      if (d.letters[i] == s.positive()) idx = static_cast<int>(i);
    if (idx < 0) throw std::invalid_argument("symbol outside the semidirect product");
    const PartialIso& phi = d.autos[idx];
    h = s.sign > 0 ? *phi.apply(h) : *phi.inverse().apply(h);
    letters.push_back(s);
  }
  return free_reduce(letters).empty() && h == g.identity();
}

bool trivial_amalgam(const AmalgamDesc& d, const Word& w) {
  const GroupNode& h1 = *d.h1;
  const GroupNode& h2 = *d.h2;
  PartialIso back = d.iso.inverse();
  struct Block {
    bool first;
    Word word;
  };
  std::vector<Block> blocks;
  for (Symbol s : w) {
    bool f = h1.owns(s);
    if (!f && !h2.owns(s)) throw std::invalid_argument("symbol outside the amalgam");
    if (blocks.empty() || blocks.back().first != f) blocks.push_back({f, {}});
    blocks.back().word.push_back(s);
  }
  // A block that lies in the identified subgroup moves to the other side
  // and merges with its neighbours; a word of >= 2 blocks none of which is
  // in the subgroup is nontrivial.
  for (;;) {
    if (blocks.empty()) return true;
    if (blocks.size() == 1) return trivial(blocks[0].first ? h1 : h2, blocks[0].word);
    bool moved = false;
    for (std::size_t i = 0; i < blocks.size() && !moved; ++i) {
      const Block& b = blocks[i];
      const GroupNode& own = b.first ? h1 : h2;
      const FiniteEmbedding& side = b.first ? *d.g1 : *d.g2;
      const FiniteEmbedding& other = b.first ? *d.g2 : *d.g1;
      const PartialIso& map = b.first ? d.iso : back;
      for (int a : map.domain()) {
        if (!trivial(own, join(b.word, {side.symbol(side.group->inv(a))}))) continue;
        Word image{other.symbol(*map.apply(a))};
        std::vector<Block> next(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(i));
        Block merged{!b.first, image};
        if (!next.empty()) {
          merged.word = join(next.back().word, merged.word);
          next.pop_back();
        }
        if (i + 1 < blocks.size()) merged.word = join(merged.word, blocks[i + 1].word);
        next.push_back(std::move(merged));
        for (std::size_t j = i + 2; j < blocks.size(); ++j) next.push_back(blocks[j]);
        blocks = std::move(next);
        moved = true;
        break;
      }
    }
    if (!moved) return false;
  }
}

}  // namespace

Word free_reduce(const Word& w) {
  Word out;
  for (Symbol s : w) {
    if (!out.empty() && out.back() == s.inverse())
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

int evaluate(const FiniteEmbedding& f, const Word& w) {
  const FiniteGroup& g = *f.group;
  int x = g.identity();
  for (Symbol s : w) {
    auto e = f.element(s);
    if (!e) throw std::invalid_argument("symbol outside the finite group");
    x = g.mul(x, *e);
  }
  return x;
}

std::optional<int> side_member(const HnnDesc& h, int letter, int alpha, const Word& w) {
  const PartialIso& phi = h.isos[letter];
  const FiniteEmbedding& side = alpha > 0 ? *h.a_side : *h.b_side;
  for (int c : alpha > 0 ? phi.domain() : phi.range())
    if (trivial(*h.base, join(w, {side.symbol(side.group->inv(c))}))) return c;
  return std::nullopt;
}

Word britton_reduce(const HnnDesc& h, const Word& w) {
  // Stack discipline: a pinch can only form between the newest letter and
  // the previous letter on the stack.
  Word out;
  std::vector<std::size_t> letters;  // positions of stable letters in out
  for (Symbol s : w) {
    int i = h.letter_of(s);
    if (i < 0) {
      out.push_back(s);
      continue;
    }
    if (!letters.empty()) {
      std::size_t p = letters.back();
      Symbol prev = out[p];
      if (prev.positive() == s.positive() && prev.sign == -s.sign) {
        // prev = t^-alpha, s = t^alpha
        int alpha = s.sign;
        Word middle(out.begin() + static_cast<std::ptrdiff_t>(p + 1), out.end());
        if (auto c = side_member(h, i, alpha, middle)) {
          const PartialIso& phi = h.isos[i];
          int image = alpha > 0 ? *phi.apply(*c) : *phi.inverse().apply(*c);
          const FiniteEmbedding& target = alpha > 0 ? *h.b_side : *h.a_side;
          out.resize(p);
          letters.pop_back();
          out.push_back(target.symbol(image));
          continue;
        }
      }
    }
    letters.push_back(out.size());
    out.push_back(s);
  }
  return out;
}

bool is_reduced(const HnnDesc& h, const Word& w) {
  std::optional<std::size_t> prev;
  for (std::size_t k = 0; k < w.size(); ++k) {
    int i = h.letter_of(w[k]);
    if (i < 0) continue;
    if (prev && w[*prev].positive() == w[k].positive() && w[*prev].sign == -w[k].sign) {
      Word middle(w.begin() + static_cast<std::ptrdiff_t>(*prev + 1), w.begin() + static_cast<std::ptrdiff_t>(k));
      if (side_member(h, i, w[k].sign, middle)) return false;
    }
    prev = k;
  }
  return true;
}

bool equal_reduced_certificate(const HnnDesc& h, const Word& u, const Word& v) {
  auto split = [&](const Word& w, std::vector<Word>& parts, Word& letters) {
    parts.assign(1, {});
    for (Symbol s : w) {
      if (h.letter_of(s) >= 0) {
        letters.push_back(s);
        parts.emplace_back();
      } else {
        parts.back().push_back(s);
      }
    }
  };
  std::vector<Word> us, vs;
  Word lu, lv;
  split(u, us, lu);
  split(v, vs, lv);
  if (lu != lv) return false;
  // Invariant: u_0 t .. u_k == v_0 t .. v_k · prev^-1 ... tracked as the
  // word `carry` with u_k c_{2k+1} = carry v_k.
  Word carry;  // c_{2k}, as a word (empty for c_0 = 1)
  for (std::size_t k = 0; k < lu.size(); ++k) {
    int i = h.letter_of(lu[k]);
    int alpha = lu[k].sign;
    // c with u_k c = carry v_k, i.e. u_k^-1 carry v_k = c in A(alpha).
    Word w = join(join(inverse(us[k]), carry), vs[k]);
    auto c = side_member(h, i, alpha, w);
    if (!c) return false;
    const PartialIso& phi = h.isos[i];
    int image = alpha > 0 ? *phi.apply(*c) : *phi.inverse().apply(*c);
    carry = {(alpha > 0 ? *h.b_side : *h.a_side).symbol(image)};
  }
  return trivial(*h.base, join(join(inverse(us.back()), carry), vs.back()));
}

bool trivial(const GroupNode& g, const Word& w) {
  return std::visit(
      [&](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FiniteDesc>) {
          return evaluate(*d.finite, w) == d.finite->group->identity();
        } else if constexpr (std::is_same_v<T, FreeDesc>) {
          for (Symbol s : w)
            if (!g.owns(s)) throw std::invalid_argument("symbol outside the free group");
          return free_reduce(w).empty();
        } else if constexpr (std::is_same_v<T, FreeProductDesc>) {
          return trivial_free_product(*d.left, *d.right, w);
        } else if constexpr (std::is_same_v<T, SemidirectDesc>) {
          return trivial_semidirect(d, w);
        } else if constexpr (std::is_same_v<T, HnnDesc>) {
          Word r = britton_reduce(d, w);
          for (Symbol s : r)
            if (d.letter_of(s) >= 0) return false;
          return trivial(*d.base, r);
        } else {
          return trivial_amalgam(d, w);
        }
      },
      g.desc);
}

bool equal(const GroupNode& g, const Word& u, const Word& v) { return trivial(g, join(u, inverse(v))); }

}  // namespace cwp::oracle
