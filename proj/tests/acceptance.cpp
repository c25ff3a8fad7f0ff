// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "cwp/check.hpp"
#include "cwp/hnn.hpp"
#include "cwp/solvers.hpp"
#include "support.hpp"

using namespace cwp;

namespace {

// Pinned parameters.
constexpr std::uint64_t kHnnSeed = 1;
constexpr std::size_t kHnnCount = 500;
constexpr double kHnnSeconds = 300;
constexpr std::uint64_t kAmalgamSeed = 2;
constexpr std::size_t kAmalgamCount = 200;
constexpr unsigned kStressDoublings = 48;
constexpr std::size_t kStressMaxRules = 60;
constexpr double kStressSeconds = 10;
constexpr unsigned kFreeDoublings = 29;  // |w| = 2 * 2^29
constexpr double kFreeSeconds = 1;
constexpr int kFreeRandom = 10000;
constexpr std::size_t kSemidirectLength = 6;
constexpr double kSemidirectSeconds = 60;
constexpr std::uint64_t kReduceSeed = 3;
constexpr std::size_t kReduceCount = 500;
constexpr int kEqualityPairs = 10000;
constexpr unsigned kEqualityBits = 128;
constexpr std::size_t kMaxExactLen = 4096;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << id << " " << name << ": " << detail << std::endl;
  failures += !ok;
}

void guarded(int id, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

std::vector<CheckResult> hnn_results;
double hnn_seconds = 0;

void hnn_oracle() {
  GenConfig c;
  auto start = Clock::now();
  hnn_results = check_parallel(c, kHnnSeed, kHnnCount, SolveConfig{}, c.max_length);
  hnn_seconds = since(start);
  std::size_t agree = 0, trivial = 0;
  for (const auto& r : hnn_results) {
    agree += r.agree;
    trivial += r.oracle;
    if (!r.agree) std::cout << "  disagreement: seed " << r.seed << " " << r.error << '\n';
  }
  bool ok = agree == kHnnCount && hnn_seconds < kHnnSeconds;
  report(1, "HNN oracle equivalence", ok,
         std::to_string(agree) + "/" + std::to_string(kHnnCount) + " agree (" + std::to_string(trivial) +
             " trivial), " + fmt(hnn_seconds) + " s, limit " + fmt(kHnnSeconds) + " s");
}

void amalgam_oracle() {
  GenConfig c;
  c.family = GenFamily::amalgam;
  c.max_length = 2000;
  auto results = check_parallel(c, kAmalgamSeed, kAmalgamCount, SolveConfig{}, c.max_length);
  std::size_t agree = 0;
  for (const auto& r : results) {
    agree += r.agree;
    if (!r.agree) std::cout << "  disagreement: seed " << r.seed << " " << r.error << '\n';
  }
  auto f = testing::z4_amalgam();
  auto solve = [&](const std::string& text) {
    Context ctx;
    return cwp::cwp(f.group, f.w(text), ctx).trivial;
  };
  int fixed = solve("b2 c2^-1") + !solve("b c^-1") + !solve("b2");
  report(2, "amalgam oracle equivalence", agree == kAmalgamCount && fixed == 3,
         std::to_string(agree) + "/" + std::to_string(kAmalgamCount) + " agree, fixed examples " +
             std::to_string(fixed) + "/3");
}

void stress() {
  auto f = testing::z2_fixture();
  Store& s = *f.store;
  NodeId w = testing::power_of_two(s, s.word(f.explicit_word("t^-1 a t a")), kStressDoublings);
  CompressedWord word{f.store, w};
  std::size_t rules = grammar_size(s, w);
  auto start = Clock::now();
  Context ctx;
  bool trivial = cwp::cwp(f.group, word, ctx).trivial;
  double secs = since(start);
  bool ok = trivial && secs < kStressSeconds && rules <= kStressMaxRules && word.length() == BigInt(1) << 50;
  report(3, "compression stress", ok,
         std::string(trivial ? "TRIVIAL" : "NONTRIVIAL") + ", length 2^50, " + std::to_string(rules) +
             " rules, " + fmt(secs) + " s, limit " + fmt(kStressSeconds) + " s");
}

void free_group() {
  auto f = testing::fixture(R"({"kind":"free","generators":["a","b"]})");
  Store& s = *f.store;
  NodeId w = testing::power_of_two(s, s.word(f.explicit_word("a b")), kFreeDoublings);
  CompressedWord ww{f.store, s.pair(w, s.invert(w))};
  auto start = Clock::now();
  Context ctx;
  bool trivial = cwp::cwp(f.group, ww, ctx).trivial;
  double secs = since(start);

  std::vector<Symbol> letters = f.explicit_word("a a^-1 b b^-1");
  std::mt19937_64 rng(4);
  int agree = 0;
  for (int i = 0; i < kFreeRandom; ++i) {
    std::vector<Symbol> word;
    for (std::size_t n = rng() % 13; n > 0; --n) word.push_back(letters[rng() % (i % 2 ? 2 : 4)]);
    std::vector<Symbol> stack;
    for (Symbol x : word) {
      if (!stack.empty() && stack.back() == x.inverse())
        stack.pop_back();
      else
        stack.push_back(x);
    }
    agree += cwp_free(make_word(ctx.store_ptr(), word), ctx) == stack.empty();
  }
  bool ok = trivial && secs < kFreeSeconds && agree == kFreeRandom;
  report(4, "free group", ok,
         std::string("w w^-1 with |w| = 2^30 ") + (trivial ? "trivial" : "NONTRIVIAL") + " in " + fmt(secs) +
             " s (limit " + fmt(kFreeSeconds) + " s); random words " + std::to_string(agree) + "/" +
             std::to_string(kFreeRandom) + " agree with stack reduction");
}

void semidirect() {
  auto f = testing::fixture(R"({"kind":"semidirect",
    "finite":{"kind":"finite","elements":["1","g","g2"],"table":[["1","g","g2"],["g","g2","1"],["g2","1","g"]]},
    "letters":[{"name":"t","auto":[["1","1"],["g","g2"],["g2","g"]]}]})");
  std::vector<Symbol> letters = f.explicit_word("g g2 g^-1 t t^-1");
  const SemidirectDesc& d = std::get<SemidirectDesc>(f.group->desc);
  // Evaluation by explicit normal form: the word equals h · (free word in t),
  // with h pushed through the automorphism one letter at a time.
  auto evaluate = [&](const std::vector<Symbol>& w) {
    const FiniteGroup& g = *d.finite->group;
    int h = g.identity();
    std::vector<Symbol> ts;
    // Read right to left: w = x · rest, with rest = h · T already computed.
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      Symbol x = *it;
      if (auto e = d.finite->element(x)) {
        h = g.mul(*e, h);
        continue;
      }
      // t^s h = phi^-s(h) t^s
      h = x.sign > 0 ? *d.autos[0].inverse().apply(h) : *d.autos[0].apply(h);
      if (!ts.empty() && ts.front() == x.inverse())
        ts.erase(ts.begin());
      else
        ts.insert(ts.begin(), x);
    }
    return h == g.identity() && ts.empty();
  };
  auto start = Clock::now();
  Context ctx;
  std::size_t checked = 0, agree = 0, trivial = 0;
  std::vector<Symbol> word;
  std::function<void()> walk = [&] {
    bool expected = evaluate(word);
    agree += cwp_semidirect(d, make_word(ctx.store_ptr(), word), ctx) == expected;
    trivial += expected;
    ++checked;
    if (word.size() == kSemidirectLength) return;
    for (Symbol x : letters) {
      word.push_back(x);
      walk();
      word.pop_back();
    }
  };
  walk();
  double secs = since(start);
  report(5, "semidirect exhaustive", agree == checked && secs < kSemidirectSeconds,
         std::to_string(agree) + "/" + std::to_string(checked) + " words of length <= 6 agree (" +
             std::to_string(trivial) + " trivial), " + fmt(secs) + " s");
}

void reducedness() {
  GenConfig c;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < kReduceCount; ++i) {
    Instance inst = gen_random(c, instance_seed(kReduceSeed, i));
    Context ctx;
    auto r = reduce_to_reduced(inst.group, inst.word, ctx, 0);
    auto in = decompress(inst.word, c.max_length);
    auto out = decompress(r, 100 * c.max_length);
    const HnnDesc& h = hnn_of(inst.group);
    bool good = oracle::is_reduced(h, out) && oracle::equal(*inst.group, in, out);
    if (!good) std::cout << "  failure at instance " << i << '\n';
    ok += good;
  }
  report(6, "reducedness post-condition", ok == kReduceCount,
         std::to_string(ok) + "/" + std::to_string(kReduceCount) + " outputs reduced and equal to their input");
}

void bounds() {
  std::size_t ok = 0;
  unsigned max_depth = 0, max_letters = 0;
  for (const auto& r : hnn_results) {
    unsigned delta = letter_bound(r.a_order);
    bool good = r.error.empty() && r.stats.max_letters_after_reduction <= delta &&
                r.stats.max_depth <= static_cast<unsigned>(r.a_order) * delta;
    ok += good;
    max_depth = std::max(max_depth, r.stats.max_depth);
    max_letters = std::max(max_letters, r.stats.max_letters_after_reduction);
  }
  report(7, "structural bounds", !hnn_results.empty() && ok == hnn_results.size(),
         std::to_string(ok) + "/" + std::to_string(hnn_results.size()) +
             " within bounds; observed max depth " + std::to_string(max_depth) + ", max letters " +
             std::to_string(max_letters));
}

void equality() {
  auto store = std::make_shared<Store>();
  Store& s = *store;
  std::vector<Symbol> letters{make_symbol(SymbolKind::generator, 0), make_symbol(SymbolKind::generator, 1)};
  std::mt19937_64 rng(8);
  WordEquality eq(kEqualityBits, 5, kMaxExactLen);
  int false_neg = 0, false_pos = 0, equal_pairs = 0;
  for (int i = 0; i < kEqualityPairs; ++i) {
    auto u = testing::random_grammar(rng, store, letters, 12, 500);
    NodeId root = u.root();
    // Some words are stretched past the exact-comparison threshold.
    if (i % 3 == 0)
      while (s.length(root) <= kMaxExactLen) root = s.pair(root, root);
    for (int d = static_cast<int>(rng() % 4); d > 0 && s.length(root) < 40000; --d) root = s.pair(root, root);
    BigInt n = s.length(root);
    BigInt k = 1 + BigInt(rng() % static_cast<std::uint64_t>(n));
    // A structurally different grammar for the same word.
    NodeId same = s.pair(s.prefix(root, k - 1), normalize(s, s.suffix_from(root, k)));
    NodeId v = same;
    if (i % 2) {
      Symbol x = s.char_at(root, k);
      Symbol y = x == letters[0] ? letters[1] : letters[0];
      switch (rng() % 3) {
        case 0:  // substitution
          v = s.pair(s.prefix(root, k - 1), s.term(y), s.suffix_from(root, k + 1));
          break;
        case 1:  // deletion
          v = s.pair(s.prefix(root, k - 1), s.suffix_from(root, k + 1));
          break;
        default:  // transposition of two halves
          v = s.pair(s.suffix_from(root, k), s.prefix(root, k - 1));
      }
    }
    bool truth = decompress(s, root, 100000) == decompress(s, v, 100000);
    bool got = eq.equal(s, root, v);
    false_neg += truth && !got;
    false_pos += !truth && got;
    equal_pairs += truth;
  }
  bool ok = false_neg == 0 && false_pos == 0 && eq.exact_comparisons() > 0 && eq.fingerprint_comparisons() > 0;
  report(8, "equality soundness", ok,
         std::to_string(kEqualityPairs) + " pairs (" + std::to_string(equal_pairs) + " equal): " +
             std::to_string(false_neg) + " false negatives, " + std::to_string(false_pos) +
             " false positives; exact comparisons " + std::to_string(eq.exact_comparisons()) +
             ", fingerprint comparisons " + std::to_string(eq.fingerprint_comparisons()));
}

}  // namespace

int main() {
  guarded(1, "HNN oracle equivalence", hnn_oracle);
  guarded(2, "amalgam oracle equivalence", amalgam_oracle);
  guarded(3, "compression stress", stress);
  guarded(4, "free group", free_group);
  guarded(5, "semidirect exhaustive", semidirect);
  guarded(6, "reducedness post-condition", reducedness);
  guarded(7, "structural bounds", bounds);
  guarded(8, "equality soundness", equality);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
