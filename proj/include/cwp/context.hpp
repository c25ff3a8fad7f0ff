#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <typeinfo>
#include <unordered_map>

#include "cwp/fingerprint.hpp"
#include "cwp/store.hpp"

namespace cwp {

struct SolveConfig {
  unsigned fp_bits = 128;
  std::uint64_t seed = 1;
  std::size_t max_exact_len = 4096;
  std::optional<unsigned> max_depth;  // default |A|·delta of the top-level group
};

struct Stats {
  std::uint64_t oracle_queries = 0;  // recursive equality checks answered by the pipeline
  std::uint64_t rcwp_calls = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t relation_queries = 0;
  unsigned max_depth = 0;
  unsigned max_letters_after_reduction = 0;
};

// Shared state of one top-level solve: node store, equality tester,
// counters, caches, and an optional diagnostics sink.
class Context {
 public:
  explicit Context(SolveConfig config = {});

  const SolveConfig& config() const { return config_; }
  const std::shared_ptr<Store>& store_ptr() const { return store_; }
  Store& store() { return *store_; }
  WordEquality& eq() { return eq_; }
  Stats& stats() { return stats_; }
  const Stats& stats() const { return stats_; }

  // Line-delimited JSON diagnostics; no-op without a sink.
  void set_sink(std::function<void(const std::string&)> sink) { sink_ = std::move(sink); }
  bool tracing() const { return static_cast<bool>(sink_); }
  void emit(const std::string& json_line) {
    if (sink_) sink_(json_line);
  }

  std::unordered_map<std::string, bool>& memo() { return memo_; }

  // Per-context cache of a T attached to `owner`; the owner is kept alive
  // so its address cannot be reused while the entry exists.
  template <class T, class Make>
  T& cache(const std::shared_ptr<const void>& owner, Make&& make) {
    auto& slot = caches_[{owner.get(), typeid(T).hash_code()}];
    if (!slot.value) {
      slot.owner = owner;
      slot.value = std::make_shared<T>(make());
    }
    return *static_cast<T*>(slot.value.get());
  }

  // Effective recursion cap for a group whose A has the given order.
  unsigned depth_cap(int a_order) const;
  // Fixed by the first HNN instance a solve enters.
  std::optional<unsigned> depth_limit;

 private:
  SolveConfig config_;
  std::shared_ptr<Store> store_;
  WordEquality eq_;
  Stats stats_;
  std::function<void(const std::string&)> sink_;
  std::unordered_map<std::string, bool> memo_;
  struct CacheKey {
    const void* owner;
    std::size_t type;
    bool operator==(const CacheKey&) const = default;
  };
  struct CacheKeyHash {
    std::size_t operator()(const CacheKey& k) const noexcept {
      return std::hash<const void*>{}(k.owner) ^ (k.type * 0x9E3779B97F4A7C15ull);
    }
  };
  struct CacheEntry {
    std::shared_ptr<const void> owner;
    std::shared_ptr<void> value;
  };
  std::unordered_map<CacheKey, CacheEntry, CacheKeyHash> caches_;
};

// delta(n) = 2 · n! · 2^n, saturating at UINT_MAX.
unsigned letter_bound(int a_order);

}  // namespace cwp
