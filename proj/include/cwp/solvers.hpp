#pragma once

#include "cwp/context.hpp"
#include "cwp/group.hpp"
#include "cwp/slp.hpp"

namespace cwp {

struct Verdict {
  bool trivial = false;
  Stats stats;
  unsigned fp_bits = 0;
};

// Decides val(w) = 1 in g. Throws InputError on symbols outside g.
Verdict cwp(const GroupPtr& g, const CompressedWord& w, Context& ctx);
// Decides val(u) = val(v) in g.
Verdict equal_in(const GroupPtr& g, const CompressedWord& u, const CompressedWord& v, Context& ctx);

// Dispatcher used inside the recursion; `depth` is the current rcwp depth.
bool is_trivial(const GroupPtr& g, const CompressedWord& w, Context& ctx, unsigned depth);
void check_alphabet(const GroupNode& g, const CompressedWord& w);

int evaluate_finite(const EmbeddingPtr& f, const CompressedWord& w, Context& ctx);
bool cwp_finite(const EmbeddingPtr& f, const CompressedWord& w, Context& ctx);

CompressedWord free_reduce(const CompressedWord& w, Context& ctx);
bool cwp_free(const CompressedWord& w, Context& ctx);

bool cwp_free_product(const GroupPtr& left, const GroupPtr& right, const CompressedWord& w, Context& ctx,
                      unsigned depth);

bool cwp_semidirect(const SemidirectDesc& g, const CompressedWord& w, Context& ctx);

// The HNN-extension <h1*h2, t | t^-1 a t = iso(a)> the amalgam embeds into,
// and the embedding x -> t^-1 x t (x in h1), y -> y (y in h2).
GroupPtr amalgam_hnn(const AmalgamDesc& g);
CompressedWord amalgam_embed(const AmalgamDesc& g, const CompressedWord& w);
bool cwp_amalgam(const AmalgamDesc& g, const CompressedWord& w, Context& ctx, unsigned depth);

}  // namespace cwp
