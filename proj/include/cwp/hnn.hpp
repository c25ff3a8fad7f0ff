#pragma once

#include <vector>

#include "cwp/context.hpp"
#include "cwp/group.hpp"
#include "cwp/slp.hpp"

namespace cwp {

const HnnDesc& hnn_of(const GroupPtr& g);

// Symbols of the A-side (alpha = +1) or B-side (alpha = -1) subgroup of
// letter i: the elements c with t_i^-alpha c t_i^alpha in the base.
std::vector<Symbol> side_symbols(const HnnDesc& h, int letter, int alpha);

// Reduced word equal to val(y)·val(z), for reduced y and z.
CompressedWord concat_reduced(const GroupPtr& g, const CompressedWord& y, const CompressedWord& z, Context& ctx,
                              unsigned depth);
// Reduced word equal to val(w) in the group.
CompressedWord reduce_to_reduced(const GroupPtr& g, const CompressedWord& w, Context& ctx, unsigned depth);

bool check_pi_t(const HnnDesc& h, const CompressedWord& u, const CompressedWord& v, Context& ctx);

struct LetterReduction {
  GroupPtr group;
  CompressedWord u;
  CompressedWord v;
  bool pi_mismatch = false;
};

// Renames stable letters so that at most two letters per distinct partial
// isomorphism occur; occurrences of a class alternate between the two copies.
LetterReduction reduce_stable_letters(const GroupPtr& g, const CompressedWord& u, const CompressedWord& v,
                                      Context& ctx);

// Words over {t, t^-1} and block symbols; a block symbol's id is the store
// node holding its value.
struct Skeleton {
  CompressedWord u;
  CompressedWord v;
  Symbol letter;
};

Skeleton split_variables(const HnnDesc& h, int letter, const CompressedWord& u, const CompressedWord& v,
                         Context& ctx);

struct Tagged {
  int tag;  // 0: element of A1, 1: element of B1
  int element;
};

// z1 c1 = c2 z2 holds in K.
struct Relation {
  NodeId z1;
  Tagged c1;
  Tagged c2;
  NodeId z2;
};

// All relations z1 c1 = c2 z2 in `k` with z1 from `left`, z2 from `right`,
// c1 from `c1_choices`, c2 from `c2_choices`.
std::vector<Relation> compute_relations(const GroupPtr& k, const HnnDesc& h, const std::vector<NodeId>& left,
                                        const std::vector<NodeId>& right, const std::vector<Tagged>& c1_choices,
                                        const std::vector<Tagged>& c2_choices, Context& ctx, unsigned depth);

struct BracketWords {
  CompressedWord u;
  CompressedWord v;
};

// Runs the block/t transducer on u·$ and v·$.
BracketWords eliminate_b1_t(const Skeleton& s, Context& ctx);

// Relation over bracket symbols and A1 elements: z1 a1 = a2 z2.
struct BracketRelation {
  Symbol z1;
  int a1;
  int a2;
  Symbol z2;
};

std::vector<BracketRelation> bracket_relations(const HnnDesc& h, int letter, const std::vector<Relation>& e);

struct Collapsed {
  GroupPtr group;  // HNN-extension over A1 with A = B = A1
  CompressedWord u;
  CompressedWord v;
};

Collapsed eliminate_z_generators(const HnnDesc& h, int letter, const std::vector<BracketRelation>& e,
                                 const BracketWords& words, Context& ctx);

// Moves letters with total partial isomorphisms of a finite base into a
// semidirect product base.
GroupPtr split_total_letters(const GroupPtr& g);

bool rcwp(const GroupPtr& g, const CompressedWord& u, const CompressedWord& v, Context& ctx, unsigned depth);
bool rucwp(const GroupPtr& g, const CompressedWord& u, const CompressedWord& v, Context& ctx, unsigned depth);
bool ucwp(const GroupPtr& g, const CompressedWord& w, Context& ctx, unsigned depth);
bool ucwp_equal(const GroupPtr& g, const CompressedWord& u, const CompressedWord& v, Context& ctx, unsigned depth);

}  // namespace cwp
