#include "cwp/fingerprint.hpp"

#include <random>

#include <boost/multiprecision/miller_rabin.hpp>

namespace cwp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

BigInt random_bits(std::mt19937_64& rng, unsigned bits) {
  BigInt x = 0;
  for (unsigned have = 0; have < bits; have += 64) x = (x << 64) | BigInt(rng());
  return x & ((BigInt(1) << bits) - 1);
}

}  // namespace

FingerprintMonoid::Value FingerprintMonoid::op(const Value& a, const Value& b) const {
  return {(a.hash + a.power * b.hash % *prime) % *prime, a.power * b.power % *prime};
}

FingerprintMonoid::Value FingerprintMonoid::of(Symbol s) const {
  std::uint64_t h = seed ^ s.key();
  FieldInt code = 0;
  for (int i = 0; i < 4; ++i) {
    h = splitmix64(h);
    code = (code << 64) | FieldInt(h);
  }
  return {code % *prime, *base};
}

std::string Fingerprint::str() const { return length.str() + ":" + hash.str(); }

WordEquality::WordEquality(unsigned fp_bits, std::uint64_t seed, std::size_t max_exact_len)
    : fp_bits_(fp_bits), seed_(seed), max_exact_len_(max_exact_len) {
  if (fp_bits < 16 || fp_bits > 192) throw InputError("fp-bits must lie in [16, 192]");
  std::mt19937_64 rng(splitmix64(seed) ^ fp_bits);
  unsigned bits = fp_bits + 64;
  BigInt p;
  do {
    p = random_bits(rng, bits) | (BigInt(1) << (bits - 1)) | 1;
  } while (!boost::multiprecision::miller_rabin_test(p, 32, rng));
  prime_ = FieldInt(p);
  base_ = FieldInt(random_bits(rng, bits) % (p - 3) + 2);
}

RangeEvaluator<FingerprintMonoid>& WordEquality::evaluator(const Store& s) {
  auto& slot = evaluators_[s.uid()];
  if (!slot)
    slot = std::make_unique<RangeEvaluator<FingerprintMonoid>>(
        s, FingerprintMonoid{&prime_, &base_, splitmix64(seed_ + 1)});
  return *slot;
}

Fingerprint WordEquality::fingerprint(const Store& s, NodeId id) {
  return {s.length(id), evaluator(s).value(id).hash};
}

Fingerprint WordEquality::fingerprint(const CompressedWord& w) { return fingerprint(w.store(), w.root()); }

Fingerprint WordEquality::fingerprint(const Store& s, NodeId id, const BigInt& i, const BigInt& j) {
  return {i > j ? BigInt(0) : BigInt(j - i + 1), evaluator(s).range(id, i, j).hash};
}

bool WordEquality::equal(const Store& su, NodeId u, const Store& sv, NodeId v) {
  if (su.length(u) != sv.length(v)) return false;
  if (u == kEmpty) return true;
  if (&su == &sv && u == v) return true;
  if (su.length(u) <= max_exact_len_) {
    ++exact_;
    return decompress(su, u, max_exact_len_) == decompress(sv, v, max_exact_len_);
  }
  ++hashed_;
  return evaluator(su).value(u).hash == evaluator(sv).value(v).hash;
}

bool WordEquality::equal_range(const Store& s, NodeId a, const BigInt& ai, NodeId b, const BigInt& bi,
                               const BigInt& len) {
  if (len <= 0) return true;
  if (len <= max_exact_len_) {
    ++exact_;
    return decompress_range(s, a, ai, ai + len - 1) == decompress_range(s, b, bi, bi + len - 1);
  }
  ++hashed_;
  auto& ev = evaluator(s);
  return ev.range(a, ai, ai + len - 1).hash == ev.range(b, bi, bi + len - 1).hash;
}

bool WordEquality::equal(const Store& s, NodeId u, NodeId v) { return equal(s, u, s, v); }

bool WordEquality::equal(const CompressedWord& u, const CompressedWord& v) {
  return equal(u.store(), u.root(), v.store(), v.root());
}

}  // namespace cwp
