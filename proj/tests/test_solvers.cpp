#include <doctest.h>

#include "cwp/check.hpp"
#include "cwp/solvers.hpp"
#include "support.hpp"

using namespace cwp;
using testing::Fx;
using testing::fixture;
using testing::power_of_two;

namespace {

const char* kZ3 = R"({"kind":"finite","elements":["1","g","g2"],
  "table":[["1","g","g2"],["g","g2","1"],["g2","1","g"]]})";
const char* kZ4 = R"({"kind":"finite","elements":["1","b","b2","b3"],
  "table":[["1","b","b2","b3"],["b","b2","b3","1"],["b2","b3","1","b"],["b3","1","b","b2"]]})";

bool solve(const Fx& f, const CompressedWord& w) {
  Context ctx;
  return cwp::cwp(f.group, w, ctx).trivial;
}

bool solve(const Fx& f, const std::string& text) { return solve(f, f.w(text)); }

Fx z3_semidirect() {
  return fixture(std::string(R"({"kind":"semidirect","finite":)") + kZ3 +
                 R"(,"letters":[{"name":"t","auto":[["1","1"],["g","g2"],["g2","g"]]}]})");
}

// Random words biased towards trivial ones: conjugates of relators spliced
// together, sometimes perturbed by one letter.
CompressedWord mixed_word(std::mt19937_64& rng, const Fx& f, const std::vector<Symbol>& alphabet,
                          const std::vector<std::vector<Symbol>>& relators, std::size_t max_len) {
  Store& s = *f.store;
  auto sub = [&](std::size_t nodes, std::size_t len) {
    return testing::random_grammar(rng, f.store, alphabet, nodes, len).root();
  };
  if (rng() % 3 == 0) return {f.store, sub(15, max_len)};
  NodeId w = kEmpty;
  for (int i = 0, n = 1 + static_cast<int>(rng() % 4); i < n; ++i) {
    NodeId u = sub(8, max_len / 16);
    NodeId rel = s.word(relators[rng() % relators.size()]);
    if (rng() % 2) rel = s.pair(rel, rel);
    NodeId piece = s.pair(u, rel, s.invert(u));
    if (s.length(w) + s.length(piece) > max_len / 2) break;
    w = s.pair(w, piece);
  }
  if (w == kEmpty) w = s.word(relators[0]);
  if (rng() % 4 == 0) {
    Symbol x = alphabet[rng() % alphabet.size()];
    BigInt k = BigInt(rng() % static_cast<std::uint64_t>(s.length(w) + 1));
    w = s.pair(s.prefix(w, k), s.term(x), s.suffix_from(w, k + 1));
  }
  // Doubling keeps triviality and exercises compression.
  if (rng() % 3 == 0 && 2 * s.length(w) <= max_len) w = s.pair(w, w);
  return {f.store, w};
}

struct Tally {
  int agree = 0, total = 0, trivial = 0;
};

Tally run_against_oracle(std::mt19937_64& rng, const Fx& f, const std::vector<Symbol>& alphabet,
                         const std::vector<std::vector<Symbol>>& relators, int count) {
  Tally t;
  for (int i = 0; i < count; ++i) {
    auto w = mixed_word(rng, f, alphabet, relators, 5000);
    bool expected = oracle::trivial(f.group, decompress(w, 5000));
    bool got = solve(f, w);
    if (got != expected) MESSAGE("disagreement on " << f.show(w));
    t.agree += got == expected;
    t.trivial += expected;
    ++t.total;
  }
  return t;
}

std::vector<Symbol> elements_of(const Fx& f, std::initializer_list<const char*> names) {
  std::vector<Symbol> out;
  for (const char* n : names) out.push_back(f.sym(n));
  return out;
}

bool is_freely_reduced(const std::vector<Symbol>& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1].inverse()) return false;
  return true;
}

}  // namespace

TEST_CASE("cwp dispatch") {
  auto z3 = fixture(kZ3);
  CHECK(solve(z3, "g g g"));
  auto free2 = fixture(R"({"kind":"free","generators":["a","b"]})");
  CHECK_FALSE(solve(free2, "a b a^-1"));
  auto hnn = testing::z2_fixture();
  CHECK(solve(hnn, "t^-1 a t a"));
  CHECK_THROWS_AS(solve(z3, free2.w("a")), InputError);
}

TEST_CASE("cwp_finite") {
  auto z2 = fixture(R"({"kind":"finite","elements":["1","a"],"table":[["1","a"],["a","1"]]})");
  CompressedWord a40{z2.store, power_of_two(*z2.store, z2.store->term(z2.sym("a")), 40)};
  CHECK(solve(z2, a40));

  auto z3 = fixture(kZ3);
  CompressedWord g40{z3.store, power_of_two(*z3.store, z3.store->term(z3.sym("g")), 40)};
  unsigned residue = 1;
  for (int i = 0; i < 40; ++i) residue = residue * 2 % 3;
  CHECK(residue == 1);
  CHECK(solve(z3, g40) == (residue == 0));
  Context ctx;
  CHECK(evaluate_finite(finite_part_of(*z3.group, z3.sym("g")), g40, ctx) == residue);

  auto z4 = fixture(kZ4);
  CHECK(solve(z4, "b b b2"));
  CHECK_FALSE(solve(z4, "b b b"));
}

TEST_CASE("free_reduce") {
  auto f = fixture(R"({"kind":"free","generators":["a","b"]})");
  Context ctx;
  CHECK(free_reduce(f.w("a b b^-1 a^-1"), ctx).empty());
  CHECK(f.show(free_reduce(f.w("a b a^-1"), ctx)) == "a b a^-1");

  Store& s = *f.store;
  NodeId up = power_of_two(s, s.term(f.sym("a")), 20);
  NodeId down = power_of_two(s, s.term(f.sym("a^-1")), 20);
  CHECK(free_reduce({f.store, s.pair(up, down)}, ctx).empty());
  CHECK(cwp_free(f.w("a a^-1"), ctx));
  CHECK_FALSE(cwp_free(f.w("a"), ctx));

  // [a^1024, b^1024]: reduced length 4·1024 by construction.
  NodeId a10 = power_of_two(s, s.term(f.sym("a")), 10);
  NodeId b10 = power_of_two(s, s.term(f.sym("b")), 10);
  CompressedWord comm{f.store, s.pair(s.pair(a10, b10), s.pair(s.invert(a10), s.invert(b10)))};
  CHECK(free_reduce(comm, ctx).length() == 4 * 1024);
  CHECK_FALSE(solve(f, comm));
}

TEST_CASE("free_reduce agrees with stack reduction") {
  auto f = fixture(R"({"kind":"free","generators":["a","b","c"]})");
  std::mt19937_64 rng(41);
  auto alphabet = elements_of(f, {"a", "b", "c"});
  for (int i = 0; i < 400; ++i) {
    auto w = mixed_word(rng, f, alphabet, {{alphabet[0], alphabet[0].inverse()}}, 5000);
    Context ctx;
    auto r = decompress(free_reduce(w, ctx), 100000);
    CHECK(is_freely_reduced(r));
    CHECK(r == oracle::free_reduce(decompress(w, 100000)));
  }
}

TEST_CASE("cwp_free_product") {
  auto z2z2 = fixture(R"({"kind":"free_product",
    "left":{"kind":"finite","elements":["1","a"],"table":[["1","a"],["a","1"]]},
    "right":{"kind":"finite","elements":["e","b"],"table":[["e","b"],["b","e"]]}})");
  CHECK_FALSE(oracle::trivial(z2z2.group, z2z2.explicit_word("a b a b")));
  CHECK_FALSE(solve(z2z2, "a b a b"));
  CHECK(solve(z2z2, "a a b b"));
  CHECK(solve(z2z2, "a b a b b a b a"));

  auto mixed = fixture(std::string(R"({"kind":"free_product","left":{"kind":"free","generators":["t"]},"right":)") +
                       kZ3 + "}");
  CHECK(solve(mixed, "t g g g t^-1"));
  CHECK_FALSE(solve(mixed, "t g g t^-1"));
}

TEST_CASE("cwp_semidirect") {
  auto f = z3_semidirect();
  CHECK(solve(f, "t^-1 g t g"));
  CHECK_FALSE(solve(f, "t^-1 g t g2"));
  CHECK(solve(f, "t g t^-1 g"));
  CHECK_FALSE(solve(f, "t g t g"));
}

TEST_CASE("cwp_semidirect agrees with evaluation on all words of length <= 6") {
  auto f = z3_semidirect();
  std::vector<Symbol> letters = elements_of(f, {"g", "g2", "g^-1", "t", "t^-1"});
  std::size_t checked = 0, trivial = 0, agree = 0;
  Context ctx;
  std::vector<Symbol> word;
  std::function<void()> walk = [&] {
    bool expected = oracle::trivial(f.group, word);
    bool got = cwp::cwp(f.group, make_word(f.store, word), ctx).trivial;
    agree += got == expected;
    trivial += expected;
    ++checked;
    if (word.size() == 6) return;
    for (Symbol x : letters) {
      word.push_back(x);
      walk();
      word.pop_back();
    }
  };
  walk();
  std::size_t expected_count = 0, layer = 1;
  for (int k = 0; k <= 6; ++k, layer *= letters.size()) expected_count += layer;
  CHECK(checked == expected_count);
  CHECK(agree == checked);
  CHECK(trivial > 0);
}

TEST_CASE("cwp_amalgam fixed examples") {
  auto f = testing::z4_amalgam();
  CHECK(solve(f, "b2 c2^-1"));
  CHECK_FALSE(solve(f, "b c^-1"));
  CHECK_FALSE(oracle::trivial(f.group, f.explicit_word("b c^-1")));
  CHECK_FALSE(solve(f, "b2"));
  CHECK(solve(f, "b c2 b3 c2"));
}

TEST_CASE("random instances agree with the oracle") {
  std::mt19937_64 rng(2024);

  SUBCASE("finite") {
    int agree = 0, total = 0;
    for (const auto& name : catalog_names()) {
      auto f = fixture(R"({"kind":"finite","catalog":")" + name + R"(","prefix":"x"})");
      auto emb = finite_part_of(*f.group, f.sym("x0"));
      std::vector<Symbol> alphabet = emb->symbols;
      std::vector<std::vector<Symbol>> relators;
      const FiniteGroup& g = *emb->group;
      for (int x = 0; x < g.order(); ++x)
        for (int y = 0; y < g.order(); ++y)
          relators.push_back({emb->symbol(x), emb->symbol(y), emb->symbol(g.mul(x, y)).inverse()});
      auto t = run_against_oracle(rng, f, alphabet, relators, 40);
      agree += t.agree;
      total += t.total;
    }
    CHECK(total >= 300);
    CHECK(agree == total);
  }

  SUBCASE("free") {
    auto f = fixture(R"({"kind":"free","generators":["a","b"]})");
    auto al = elements_of(f, {"a", "b"});
    auto t = run_against_oracle(rng, f, al, {{al[0], al[1], al[1].inverse(), al[0].inverse()}}, 300);
    CHECK(t.agree == t.total);
    CHECK(t.trivial > 30);
  }

  SUBCASE("free product") {
    auto f = fixture(std::string(R"({"kind":"free_product","left":)") + kZ3 + R"(,"right":)" +
                     R"({"kind":"free_product","left":{"kind":"free","generators":["s"]},"right":)" +
                     R"({"kind":"finite","elements":["e","c"],"table":[["e","c"],["c","e"]]}}})");
    auto al = elements_of(f, {"g", "g2", "s", "c", "1", "e"});
    std::vector<std::vector<Symbol>> rel{{f.sym("g"), f.sym("g"), f.sym("g")},
                                         {f.sym("c"), f.sym("c")},
                                         {f.sym("g2"), f.sym("g")},
                                         {f.sym("e")}};
    auto t = run_against_oracle(rng, f, al, rel, 300);
    CHECK(t.agree == t.total);
    CHECK(t.trivial > 30);
  }

  SUBCASE("semidirect") {
    auto f = fixture(std::string(R"({"kind":"semidirect","finite":)") + kZ4 +
                     R"(,"letters":[{"name":"t","auto":[["1","1"],["b","b3"],["b2","b2"],["b3","b"]]},)" +
                     R"({"name":"u","auto":[["1","1"],["b","b"],["b2","b2"],["b3","b3"]]}]})");
    auto al = elements_of(f, {"b", "b2", "t", "u"});
    Symbol t = f.sym("t"), u = f.sym("u"), b = f.sym("b"), b3 = f.sym("b3");
    std::vector<std::vector<Symbol>> rel{{t.inverse(), b, t, b},
                                         {u.inverse(), b, u, b3},
                                         {b, b, f.sym("b2")},
                                         {t, b3.inverse(), t.inverse(), b3.inverse()}};
    auto tally = run_against_oracle(rng, f, al, rel, 300);
    CHECK(tally.agree == tally.total);
    CHECK(tally.trivial > 30);
  }

  SUBCASE("amalgam") {
    GenConfig c;
    c.family = GenFamily::amalgam;
    c.max_length = 2000;
    auto results = check_serial(c, 99, 300, SolveConfig{}, 2000);
    std::size_t agree = 0, trivial = 0;
    for (const auto& r : results) {
      agree += r.agree;
      trivial += r.oracle;
      if (!r.agree) MESSAGE("amalgam seed " << r.seed << " " << r.error);
    }
    CHECK(agree == results.size());
    CHECK(trivial > 30);
  }
}

TEST_CASE("equal_in") {
  auto f = testing::z2_fixture();
  Context ctx;
  CHECK(equal_in(f.group, f.w("a t"), f.w("t a"), ctx).trivial);
  CHECK_FALSE(equal_in(f.group, f.w("t"), f.w("t^-1"), ctx).trivial);
}
