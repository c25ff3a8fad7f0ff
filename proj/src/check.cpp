#include "cwp/check.hpp"

#include <chrono>

#include "cwp/oracle.hpp"
#include "cwp/solvers.hpp"

namespace cwp {

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + i + 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

CheckResult check_instance(const GenConfig& gen, std::uint64_t seed, const SolveConfig& solve, const BigInt& cap) {
  CheckResult r;
  r.seed = seed;
  auto start = std::chrono::steady_clock::now();
  try {
    Instance inst = gen_random(gen, seed);
    r.mode = inst.mode;
    if (auto h = std::get_if<HnnDesc>(&inst.group->desc)) r.a_order = h->a_order();
    Context ctx(solve);
    Verdict v = cwp(inst.group, inst.word, ctx);
    r.pipeline = v.trivial;
    r.stats = v.stats;
    r.oracle = oracle::trivial(inst.group, decompress(inst.word, cap));
    r.agree = r.pipeline == r.oracle;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CheckResult> check_serial(const GenConfig& gen, std::uint64_t seed, std::size_t count,
                                      const SolveConfig& solve, const BigInt& cap) {
  std::vector<CheckResult> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(check_instance(gen, instance_seed(seed, i), solve, cap));
  return out;
}

std::vector<CheckResult> check_parallel(const GenConfig& gen, std::uint64_t seed, std::size_t count,
                                        const SolveConfig& solve, const BigInt& cap) {
  std::vector<CheckResult> out(count);
  const auto n = static_cast<std::int64_t>(count);
  // Instances are independent: each builds its own store and context.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = check_instance(gen, instance_seed(seed, static_cast<std::uint64_t>(i)), solve, cap);
  return out;
}

}  // namespace cwp
