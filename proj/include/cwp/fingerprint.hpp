#pragma once

#include <memory>
#include <string>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "cwp/slp.hpp"

namespace cwp {

using FieldInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<
    512, 512, boost::multiprecision::unsigned_magnitude, boost::multiprecision::unchecked, void>>;

struct FingerprintMonoid {
  struct Value {
    FieldInt hash;   // sum of code(w[i]) * x^(i-1)
    FieldInt power;  // x^|w|
  };
  const FieldInt* prime = nullptr;
  const FieldInt* base = nullptr;
  std::uint64_t seed = 0;

  Value identity() const { return {0, 1}; }
  Value op(const Value& a, const Value& b) const;
  Value of(Symbol s) const;
};

struct Fingerprint {
  BigInt length;
  FieldInt hash;
  bool operator==(const Fingerprint&) const = default;
  std::string str() const;
};

// Randomized equality of compressed words. Equal words always compare
// equal; unequal words collide with probability about |w| / 2^(fp_bits+64).
class WordEquality {
 public:
  WordEquality(unsigned fp_bits, std::uint64_t seed, std::size_t max_exact_len = 4096);

  bool operator()(const CompressedWord& u, const CompressedWord& v) { return equal(u, v); }
  bool equal(const CompressedWord& u, const CompressedWord& v);
  bool equal(const Store& s, NodeId u, NodeId v);
  bool equal(const Store& su, NodeId u, const Store& sv, NodeId v);
  // a[ai .. ai+len-1] == b[bi .. bi+len-1], both inside one store.
  bool equal_range(const Store& s, NodeId a, const BigInt& ai, NodeId b, const BigInt& bi, const BigInt& len);

  Fingerprint fingerprint(const CompressedWord& w);
  Fingerprint fingerprint(const Store& s, NodeId id);
  // Fingerprint of positions i..j of id.
  Fingerprint fingerprint(const Store& s, NodeId id, const BigInt& i, const BigInt& j);

  unsigned fp_bits() const { return fp_bits_; }
  const FieldInt& prime() const { return prime_; }
  std::uint64_t exact_comparisons() const { return exact_; }
  std::uint64_t fingerprint_comparisons() const { return hashed_; }

 private:
  RangeEvaluator<FingerprintMonoid>& evaluator(const Store& s);

  unsigned fp_bits_;
  std::uint64_t seed_;
  std::size_t max_exact_len_;
  FieldInt prime_;
  FieldInt base_;
  std::unordered_map<std::uint64_t, std::unique_ptr<RangeEvaluator<FingerprintMonoid>>> evaluators_;
  std::uint64_t exact_ = 0;
  std::uint64_t hashed_ = 0;
};

}  // namespace cwp
