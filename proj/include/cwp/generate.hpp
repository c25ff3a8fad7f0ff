#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>

#include "cwp/io.hpp"

namespace cwp {

enum class GenFamily { hnn, amalgam };
enum class GenMode { mixed, random, trivial, perturbed };

struct GenConfig {
  GenFamily family = GenFamily::hnn;
  GenMode mode = GenMode::mixed;
  int max_base_order = 8;
  int max_a = 4;
  int max_letters = 4;
  std::size_t max_rules = 40;
  BigInt max_length = 5000;
};

struct Instance {
  std::shared_ptr<SymbolTable> table;
  GroupPtr group;
  CompressedWord word;
  GenMode mode = GenMode::random;  // mode actually used
};

// Reproducible: equal (config, seed) give identical instances.
Instance gen_random(const GenConfig& config, std::uint64_t seed);

Json instance_to_json(const Instance& inst);
std::string mode_name(GenMode m);
GenMode parse_mode(const std::string& name);

// All subgroups of g (each sorted), in a deterministic order.
std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g);
// All isomorphisms between a subgroup of `a` and a subgroup of `b` (both subgroups of g).
std::vector<PartialIso> all_partial_isos(const FiniteGroupPtr& g, const std::vector<int>& a, const std::vector<int>& b);

}  // namespace cwp
