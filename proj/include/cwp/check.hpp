#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cwp/context.hpp"
#include "cwp/generate.hpp"

namespace cwp {

struct CheckResult {
  std::uint64_t seed = 0;
  bool pipeline = false;  // verdict of the compressed solver
  bool oracle = false;    // verdict of the explicit-word oracle
  bool agree = false;
  std::string error;      // non-empty if either side threw
  GenMode mode = GenMode::random;
  int a_order = 0;
  Stats stats;
  double seconds = 0;
};

// Seed of the i-th instance of a batch.
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t i);

CheckResult check_instance(const GenConfig& gen, std::uint64_t seed, const SolveConfig& solve, const BigInt& cap);

// Reference implementation: one instance after another.
std::vector<CheckResult> check_serial(const GenConfig& gen, std::uint64_t seed, std::size_t count,
                                      const SolveConfig& solve, const BigInt& cap);
// Same results, instances distributed over OpenMP threads.
std::vector<CheckResult> check_parallel(const GenConfig& gen, std::uint64_t seed, std::size_t count,
                                        const SolveConfig& solve, const BigInt& cap);

}  // namespace cwp
