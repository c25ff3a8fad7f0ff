#pragma once

#include <vector>

#include "cwp/group.hpp"

// Exact decision procedures on explicit words. Exponential in the worst
// case; meant for small instances and cross-checking.
namespace cwp::oracle {

using Word = std::vector<Symbol>;

bool trivial(const GroupNode& g, const Word& w);
inline bool trivial(const GroupPtr& g, const Word& w) { return trivial(*g, w); }
bool equal(const GroupNode& g, const Word& u, const Word& v);

Word free_reduce(const Word& w);
int evaluate(const FiniteEmbedding& f, const Word& w);

// Britton reduction: repeatedly replaces t^-alpha w t^alpha with w in
// A(alpha) by its image. Elements are emitted as single letters.
Word britton_reduce(const HnnDesc& h, const Word& w);
bool is_reduced(const HnnDesc& h, const Word& w);

// Connecting-element search for two reduced words: c_{2k} is forced by
// c_{2k-1}, so the search is linear in the number of stable letters.
bool equal_reduced_certificate(const HnnDesc& h, const Word& u, const Word& v);

// Element of A(alpha) of letter i (alpha = +1: dom, -1: ran) equal to w in
// the base, if any.
std::optional<int> side_member(const HnnDesc& h, int letter, int alpha, const Word& w);

}  // namespace cwp::oracle
