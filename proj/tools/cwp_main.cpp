// cwp: command-line front end for the compressed word problem solver.
//
// Exit codes: 0 trivial/equal/ok, 1 nontrivial/unequal/disagreement,
// 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cwp/check.hpp"
#include "cwp/hnn.hpp"
#include "cwp/io.hpp"
#include "cwp/solvers.hpp"

namespace {

struct Options {
  unsigned fp_bits = 128;
  std::size_t max_exact_len = 4096;
  std::uint64_t seed = 1;
  std::string cap = "1000000";
  unsigned max_depth = 0;
  bool stats = false;
};

cwp::SolveConfig solve_config(const Options& o) {
  cwp::SolveConfig c;
  c.fp_bits = o.fp_bits;
  c.max_exact_len = o.max_exact_len;
  c.seed = o.seed;
  if (o.max_depth > 0) c.max_depth = o.max_depth;
  return c;
}

cwp::BigInt decimal(const std::string& text, const char* flag) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw cwp::InputError(std::string(flag) + ": expected a decimal integer");
  return cwp::BigInt(text);
}

cwp::BigInt cap_of(const Options& o) { return decimal(o.cap, "--cap"); }

void attach_stats(const Options& o, cwp::Context& ctx) {
  if (o.stats) ctx.set_sink([](const std::string& line) { std::cerr << line << '\n'; });
}

cwp::Json stats_json(const cwp::Verdict& v) {
  return {{"oracle_queries", v.stats.oracle_queries},
          {"rcwp_calls", v.stats.rcwp_calls},
          {"memo_hits", v.stats.memo_hits},
          {"relation_queries", v.stats.relation_queries},
          {"max_depth", v.stats.max_depth},
          {"max_letters_after_reduction", v.stats.max_letters_after_reduction},
          {"fp_bits", v.fp_bits}};
}

int report(const Options& o, const cwp::Verdict& v, const char* yes, const char* no, double seconds) {
  std::cout << (v.trivial ? yes : no) << '\n';
  cwp::Json s = stats_json(v);
  s["seconds"] = seconds;
  if (o.stats)
    std::cerr << cwp::Json{{"stage", "summary"}, {"stats", s}}.dump() << '\n';
  else
    std::cout << s.dump() << '\n';
  return v.trivial ? 0 : 1;
}

double since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

void write_file(const std::string& path, const cwp::Json& j) {
  std::ofstream out(path);
  if (!out) throw cwp::InputError(path + ": cannot write file");
  out << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed word problem solver for graphs of finite groups"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--fp-bits", o.fp_bits, "fingerprint strength in bits (16..192)")->capture_default_str();
    c->add_option("--max-exact-len", o.max_exact_len, "compare exactly up to this length")->capture_default_str();
    c->add_option("--seed", o.seed, "random seed")->capture_default_str();
    c->add_option("--cap", o.cap, "decompression cap")->capture_default_str();
    c->add_option("--max-depth", o.max_depth, "recursion depth cap (0: |A|*delta)");
    c->add_flag("--stats", o.stats, "JSON diagnostics on stderr");
  };

  std::string group_file, slp_file, slp_file2, group_out, slp_out, family = "hnn", mode = "mixed";
  std::size_t count = 100, max_rules = 40;
  std::string max_length = "5000";
  bool serial = false, verbose = false;

  auto* solve = app.add_subcommand("solve", "decide whether the word is trivial");
  solve->add_option("group", group_file, "group JSON")->required();
  solve->add_option("slp", slp_file, "SLP JSON")->required();
  add_common(solve);

  auto* equal = app.add_subcommand("equal", "decide whether two words are equal");
  equal->add_option("group", group_file, "group JSON")->required();
  equal->add_option("slp_a", slp_file, "SLP JSON")->required();
  equal->add_option("slp_b", slp_file2, "SLP JSON")->required();
  add_common(equal);

  auto* reduce = app.add_subcommand("reduce", "print a reduced composition system for the word (HNN groups)");
  reduce->add_option("group", group_file, "group JSON")->required();
  reduce->add_option("slp", slp_file, "SLP JSON")->required();
  add_common(reduce);

  auto* eval = app.add_subcommand("eval", "print the word if it is shorter than --cap");
  eval->add_option("slp", slp_file, "SLP JSON")->required();
  add_common(eval);

  auto* gen = app.add_subcommand("gen", "emit a random instance");
  gen->add_option("--family", family, "hnn or amalgam")->capture_default_str();
  gen->add_option("--mode", mode, "mixed, random, trivial or perturbed")->capture_default_str();
  gen->add_option("--max-rules", max_rules, "grammar size bound")->capture_default_str();
  gen->add_option("--max-length", max_length, "word length bound")->capture_default_str();
  gen->add_option("--group-out", group_out, "write the group here instead of stdout");
  gen->add_option("--slp-out", slp_out, "write the word here instead of stdout");
  add_common(gen);

  auto* check = app.add_subcommand("check", "compare solver and oracle on random instances");
  check->add_option("--count", count, "number of instances")->capture_default_str();
  check->add_option("--family", family, "hnn or amalgam")->capture_default_str();
  check->add_option("--mode", mode, "mixed, random, trivial or perturbed")->capture_default_str();
  check->add_option("--max-rules", max_rules, "grammar size bound")->capture_default_str();
  check->add_option("--max-length", max_length, "word length bound")->capture_default_str();
  check->add_flag("--serial", serial, "run without threads");
  check->add_flag("-v,--verbose", verbose, "one line per instance");
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto gen_config = [&] {
      cwp::GenConfig g;
      if (family != "hnn" && family != "amalgam") throw cwp::InputError("--family: expected hnn or amalgam");
      g.family = family == "hnn" ? cwp::GenFamily::hnn : cwp::GenFamily::amalgam;
      g.mode = cwp::parse_mode(mode);
      g.max_rules = max_rules;
      g.max_length = decimal(max_length, "--max-length");
      return g;
    };

    if (*eval) {
      cwp::SymbolTable table;
      table.open = true;
      auto w = cwp::parse_slp(cwp::read_json_file(slp_file), table, std::make_shared<cwp::Store>());
      std::ostringstream out;
      for (cwp::Symbol s : cwp::decompress(w, cap_of(o))) out << table.name(s) << ' ';
      std::string text = out.str();
      if (!text.empty()) text.pop_back();
      std::cout << text << '\n';
      return 0;
    }

    if (*gen) {
      cwp::GenConfig g = gen_config();
      cwp::Instance inst = cwp::gen_random(g, o.seed);
      cwp::Json j = cwp::instance_to_json(inst);
      if (!group_out.empty()) write_file(group_out, j["group"]);
      if (!slp_out.empty()) write_file(slp_out, j["word"]);
      if (group_out.empty() && slp_out.empty()) std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*check) {
      cwp::BigInt cap = cap_of(o);
      cwp::GenConfig g = gen_config();
      auto start = std::chrono::steady_clock::now();
      auto results = serial ? cwp::check_serial(g, o.seed, count, solve_config(o), cap)
                            : cwp::check_parallel(g, o.seed, count, solve_config(o), cap);
      std::size_t agree = 0;
      for (const auto& r : results) {
        agree += r.agree;
        if (verbose || !r.agree)
          std::cout << "seed " << r.seed << " mode " << cwp::mode_name(r.mode) << " pipeline "
                    << (r.pipeline ? "trivial" : "nontrivial") << " oracle " << (r.oracle ? "trivial" : "nontrivial")
                    << " depth " << r.stats.max_depth << " letters " << r.stats.max_letters_after_reduction
                    << " rcwp " << r.stats.rcwp_calls << (r.error.empty() ? "" : " error: " + r.error) << '\n';
      }
      std::cout << agree << "/" << results.size() << " agree (" << since(start) << " s)\n";
      return agree == results.size() ? 0 : 1;
    }

    cwp::SymbolTable table;
    cwp::GroupPtr group = cwp::parse_group(cwp::read_json_file(group_file), table);
    cwp::Context ctx(solve_config(o));
    attach_stats(o, ctx);
    auto word = [&](const std::string& path) { return cwp::parse_slp(cwp::read_json_file(path), table, ctx.store_ptr()); };
    auto start = std::chrono::steady_clock::now();

    if (*solve) {
      cwp::Verdict v = cwp::cwp(group, word(slp_file), ctx);
      return report(o, v, "TRIVIAL", "NONTRIVIAL", since(start));
    }
    if (*equal) {
      auto u = word(slp_file);
      cwp::Verdict v = cwp::equal_in(group, u, word(slp_file2), ctx);
      return report(o, v, "EQUAL", "UNEQUAL", since(start));
    }
    if (*reduce) {
      if (!std::holds_alternative<cwp::HnnDesc>(group->desc))
        throw cwp::InputError("reduce: the group must be an HNN-extension");
      auto w = word(slp_file);
      cwp::check_alphabet(*group, w);
      auto r = cwp::reduce_to_reduced(group, w, ctx, 0);
      std::cout << cwp::slp_to_json(r, table).dump(2) << '\n';
      return 0;
    }
  } catch (const cwp::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const cwp::TooLong& e) {
    std::cerr << "error: TooLong: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
