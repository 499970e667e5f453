// killword: decide mortality and synthesize short killing words,
// minimum-rank words, and uncompletable words of finite codes.
//
// Exit codes: 0 success (mortal / word found), 1 negative verdict (immortal /
// complete code / nothing found), 2 malformed input, 3 precondition failure,
// 4 cap exceeded, 5 internal invariant failure.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "killword/analysis.hpp"
#include "killword/codes.hpp"
#include "killword/core.hpp"
#include "killword/general_synthesis.hpp"
#include "killword/generators.hpp"
#include "killword/io.hpp"
#include "killword/oracle.hpp"
#include "killword/sc_synthesis.hpp"

namespace {

using killword::io::json;
using namespace killword;

struct Output {
  bool quiet = false;
  bool timings = false;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  void emit(json doc, int /*code*/ = 0) const {
    if (quiet) return;
    if (timings) {
      auto elapsed = std::chrono::steady_clock::now() - started;
      doc["timings_ms"] = {
          {"total",
           std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()}};
    }
    std::cout << doc.dump(2) << "\n";
  }
};

long long to_ll(const Int& v) { return v.convert_to<long long>(); }

MatrixMorphism load_morphism(const std::string& path) {
  io::Instance inst = io::load_instance(path);
  if (!inst.morphism)
    throw input_error("expected a matrices or nfa document, got kind \"" + inst.kind + "\"");
  return std::move(*inst.morphism);
}

Code load_code(const std::string& path) {
  io::Instance inst = io::load_instance(path);
  if (!inst.code)
    throw input_error("expected a code document, got kind \"" + inst.kind + "\"");
  return std::move(*inst.code);
}

json sc_certificate(const Alphabet& alphabet, const ScSynthesisResult& r,
                    const std::vector<std::size_t>* state_map = nullptr) {
  auto global = [&](std::size_t q) { return state_map ? (*state_map)[q] : q; };
  json seps = json::array();
  for (const auto& [i, x] : r.separators)
    seps.push_back({{"survivor", global(r.context.survivors[i])},
                    {"word", io::word_json(alphabet, x)}});
  json survivors = json::array();
  for (std::size_t q : r.context.survivors) survivors.push_back(global(q));
  return json{{"z", io::word_json(alphabet, r.context.z)},
              {"y", io::word_json(alphabet, r.context.y)},
              {"survivors", std::move(survivors)},
              {"separators", std::move(seps)},
              {"c_realized", r.context.c_realized},
              {"m_realized", r.context.m_realized}};
}

json block_certificate(const MatrixMorphism& m, const SynthesisResult& r) {
  json blocks = json::array();
  for (std::size_t i = 0; i < r.plan.decomposition.classes.size(); ++i) {
    json block =
        sc_certificate(m.alphabet(), r.block_results[i], &r.plan.decomposition.classes[i]);
    block["states"] = r.plan.decomposition.classes[i];
    block["word"] = io::word_json(m.alphabet(), r.plan.block_words[i]);
    block["rank"] = r.plan.block_ranks[i];
    block["mortal"] = r.plan.block_ranks[i] == 0;
    blocks.push_back(std::move(block));
  }
  return json{{"blocks", std::move(blocks)}};
}

json jsr_witness_json(const MatrixMorphism& m, const JsrVerdict& v) {
  return json{{"state", v.witness->state},
              {"word", io::word_json(m.alphabet(), v.witness->word)}};
}

int run_validate(const std::string& path, const Output& out) {
  io::Instance inst = io::load_instance(path);
  out.emit({{"verdict", "valid"}, {"kind", inst.kind}});
  return 0;
}

int run_jsr(const std::string& path, const Output& out) {
  MatrixMorphism m = load_morphism(path);
  JsrVerdict v = check_jsr_le_one(m);
  if (v.ok) {
    out.emit({{"verdict", "jsr_le_one"}});
    return 0;
  }
  out.emit({{"verdict", "jsr_gt_one"}, {"witness", jsr_witness_json(m, v)}});
  return 3;
}

int run_mortal(const std::string& path, const Output& out) {
  MatrixMorphism m = load_morphism(path);
  bool mortal = mortality(m);
  out.emit({{"verdict", mortal ? "mortal" : "immortal"}});
  return mortal ? 0 : 1;
}

int run_kill(const std::string& path, bool verify, const Output& out) {
  MatrixMorphism m = load_morphism(path);
  if (!mortality(m))
    throw precondition_error("morphism is immortal; use minrank");
  SynthesisResult r = synthesize(m);
  if (r.rank != 0) throw std::logic_error("mortal morphism synthesized a nonzero rank");
  if (verify && !evaluate(m, r.word).is_zero())
    throw std::logic_error("killing word failed re-evaluation");
  out.emit({{"verdict", "killing_word"},
            {"word", io::word_json(m.alphabet(), r.word)},
            {"length", r.word.size()},
            {"bound", to_ll(r.bound)},
            {"rank", 0},
            {"certificate", block_certificate(m, r)}});
  return 0;
}

int run_synthesize(const std::string& path, bool verify, const Output& out) {
  MatrixMorphism m = load_morphism(path);
  SynthesisResult r = synthesize(m);
  if (verify && rank(evaluate(m, r.word)) != r.rank)
    throw std::logic_error("synthesized word failed re-evaluation");
  out.emit({{"verdict", "min_rank_word"},
            {"word", io::word_json(m.alphabet(), r.word)},
            {"length", r.word.size()},
            {"bound", to_ll(r.bound)},
            {"rank", r.rank},
            {"certificate", block_certificate(m, r)}});
  return 0;
}

int run_flower(const std::string& path, const Output& out) {
  Code code = load_code(path);
  FlowerAutomaton fl = flower(code);
  out.emit(io::nfa_document(fl.morphism));
  return 0;
}

int run_uncompletable(const std::string& path, bool verify, const Output& out) {
  Code code = load_code(path);
  UncompletableResult r = uncompletable_word(code);
  if (r.complete) {
    out.emit({{"verdict", "complete"},
              {"word", nullptr},
              {"bound", to_ll(r.bound)},
              {"certificate", {{"complete", true}, {"flower_states", r.flower.morphism.dim()}}}});
    return 1;
  }
  if (verify && !evaluate(r.flower.morphism, *r.word).is_zero())
    throw std::logic_error("uncompletable word failed re-evaluation");
  json cert = sc_certificate(code.alphabet(), *r.synthesis);
  cert["flower_states"] = r.flower.morphism.dim();
  cert["k"] = code.k();
  cert["m"] = code.m();
  out.emit({{"verdict", "uncompletable_word"},
            {"word", io::word_json(code.alphabet(), *r.word)},
            {"length", r.word->size()},
            {"bound", to_ll(r.bound)},
            {"rank", nullptr},
            {"certificate", std::move(cert)}});
  return 0;
}

int run_iscode(const std::string& path, const Output& out) {
  Code code = load_code(path);
  CodeCheck check = sardinas_patterson(code);
  if (check.is_code) {
    out.emit({{"verdict", "code"}});
    return 0;
  }
  out.emit({{"verdict", "not_code"},
            {"witness", {{"word", io::word_json(code.alphabet(), *check.ambiguous_word)},
                         {"factorizations", check.factorizations}}}});
  return 3;
}

int run_oracle_kill(const std::string& path, std::size_t max_len, bool verify,
                    const Output& out) {
  MatrixMorphism m = load_morphism(path);
  auto w = oracle::shortest_killing_word_bfs(m, max_len);
  if (!w) {
    out.emit({{"verdict", "immortal"}});
    return 1;
  }
  if (verify && !evaluate(m, *w).is_zero())
    throw std::logic_error("oracle killing word failed re-evaluation");
  out.emit({{"verdict", "killing_word"},
            {"word", io::word_json(m.alphabet(), *w)},
            {"length", w->size()}});
  return 0;
}

int run_oracle_monoid(const std::string& path, std::size_t element_cap, std::size_t len_cap,
                      const Output& out) {
  MatrixMorphism m = load_morphism(path);
  oracle::MonoidTable table = oracle::enumerate_monoid(m, element_cap, len_cap);
  out.emit({{"verdict", table.complete ? "closure" : "incomplete"},
            {"elements", table.elements.size()},
            {"complete", table.complete},
            {"min_rank", table.min_rank}});
  return table.complete ? 0 : 4;
}

int run_oracle_uncompletable(const std::string& path, std::size_t max_len, const Output& out) {
  Code code = load_code(path);
  auto w = oracle::shortest_uncompletable_brute(code, max_len);
  if (!w) {
    out.emit({{"verdict", "none_within_bound"}, {"max_len", max_len}});
    return 1;
  }
  out.emit({{"verdict", "uncompletable_word"},
            {"word", io::word_json(code.alphabet(), *w)},
            {"length", w->size()}});
  return 0;
}

std::size_t env_element_cap() {
  if (const char* v = std::getenv("KILLWORD_ELEMENT_CAP")) {
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && parsed > 0) return static_cast<std::size_t>(parsed);
  }
  return 200000;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"killing words, minimum-rank words and uncompletable words "
               "for nonnegative matrix sets with joint spectral radius at most one"};
  app.require_subcommand(1);

  Output out;
  bool verify = true;
  bool json_mode = true;
  app.add_flag("--quiet", out.quiet, "suppress stdout, use exit codes only");
  app.add_flag("--json,!--no-json", json_mode, "JSON output (default)");
  app.add_flag("--verify,!--no-verify", verify, "re-evaluate emitted words (default on)");
  app.add_flag("--timings", out.timings, "include timings_ms in the output");

  std::string file;
  auto add_file = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "instance document")->required();
  };

  auto* c_validate = app.add_subcommand("validate", "parse and check a document");
  add_file(c_validate);
  auto* c_jsr = app.add_subcommand("jsr", "joint spectral radius gate");
  add_file(c_jsr);
  auto* c_mortal = app.add_subcommand("mortal", "decide mortality");
  add_file(c_mortal);
  auto* c_kill = app.add_subcommand("kill", "synthesize a killing word");
  add_file(c_kill);
  auto* c_minrank = app.add_subcommand("minrank", "synthesize a minimum-rank word");
  add_file(c_minrank);
  auto* c_synth = app.add_subcommand("synthesize", "alias of minrank");
  add_file(c_synth);
  auto* c_flower = app.add_subcommand("flower", "emit the flower automaton of a code");
  add_file(c_flower);
  auto* c_unc = app.add_subcommand("uncompletable", "synthesize an uncompletable word");
  add_file(c_unc);
  auto* c_iscode = app.add_subcommand("iscode", "Sardinas-Patterson code test");
  add_file(c_iscode);

  auto* c_gen = app.add_subcommand("gen", "emit instance documents");
  c_gen->require_subcommand(1);
  std::size_t gen_m = 1, gen_n = 4, gen_alphabet = 2, gen_words = 3, gen_len = 3;
  double gen_density = 0.2;
  std::uint64_t gen_seed = 1;
  auto* g_primes = c_gen->add_subcommand("primes", "primes-family instance");
  g_primes->add_option("--m", gen_m, "number of petals")->required();
  auto* g_ufa = c_gen->add_subcommand("ufa", "random strongly connected unambiguous instance");
  g_ufa->add_option("--n", gen_n, "states")->required();
  g_ufa->add_option("--density", gen_density, "edge density in (0,1)");
  g_ufa->add_option("--seed", gen_seed, "PRNG seed");
  auto* g_code = c_gen->add_subcommand("code", "random code");
  g_code->add_option("--alphabet", gen_alphabet, "alphabet size");
  g_code->add_option("--max-words", gen_words, "maximum number of words");
  g_code->add_option("--max-len", gen_len, "maximum word length");
  g_code->add_option("--seed", gen_seed, "PRNG seed");

  auto* c_oracle = app.add_subcommand("oracle", "brute-force cross checks");
  c_oracle->require_subcommand(1);
  std::size_t oracle_max_len = 64;
  std::size_t oracle_element_cap = env_element_cap();
  std::size_t oracle_len_cap = 64;
  auto* o_kill = c_oracle->add_subcommand("kill", "shortest killing word by subset BFS");
  add_file(o_kill);
  o_kill->add_option("--max-len", oracle_max_len, "length cap");
  auto* o_monoid = c_oracle->add_subcommand("monoid", "enumerate the generated monoid");
  add_file(o_monoid);
  o_monoid->add_option("--element-cap", oracle_element_cap, "element cap");
  o_monoid->add_option("--len-cap", oracle_len_cap, "word length cap");
  auto* o_unc = c_oracle->add_subcommand("uncompletable", "shortest uncompletable word");
  add_file(o_unc);
  o_unc->add_option("--max-len", oracle_max_len, "length cap");

  CLI11_PARSE(app, argc, argv);
  if (!json_mode) out.quiet = true;

  try {
    if (c_validate->parsed()) return run_validate(file, out);
    if (c_jsr->parsed()) return run_jsr(file, out);
    if (c_mortal->parsed()) return run_mortal(file, out);
    if (c_kill->parsed()) return run_kill(file, verify, out);
    if (c_minrank->parsed() || c_synth->parsed()) return run_synthesize(file, verify, out);
    if (c_flower->parsed()) return run_flower(file, out);
    if (c_unc->parsed()) return run_uncompletable(file, verify, out);
    if (c_iscode->parsed()) return run_iscode(file, out);
    if (c_gen->parsed()) {
      if (g_primes->parsed()) {
        out.emit(io::matrices_document(primes_family(gen_m).morphism));
        return 0;
      }
      if (g_ufa->parsed()) {
        out.emit(io::matrices_document(
            random_strongly_connected_ufa(gen_n, gen_density, gen_seed)));
        return 0;
      }
      if (g_code->parsed()) {
        out.emit(io::code_document(random_code(gen_alphabet, gen_words, gen_len, gen_seed)));
        return 0;
      }
    }
    if (c_oracle->parsed()) {
      if (o_kill->parsed()) return run_oracle_kill(file, oracle_max_len, verify, out);
      if (o_monoid->parsed())
        return run_oracle_monoid(file, oracle_element_cap, oracle_len_cap, out);
      if (o_unc->parsed()) return run_oracle_uncompletable(file, oracle_max_len, out);
    }
  } catch (const jsr_gate_error& e) {
    json witness{{"state", e.verdict.witness->state}, {"letters", e.verdict.witness->word}};
    out.emit({{"error", "precondition"}, {"reason", e.what()}, {"witness", std::move(witness)}});
    std::cerr << "precondition: " << e.what() << "\n";
    return 3;
  } catch (const code_error& e) {
    out.emit({{"error", "precondition"}, {"reason", e.what()}, {"witness_letters", e.witness}});
    std::cerr << "precondition: " << e.what() << "\n";
    return 3;
  } catch (const precondition_error& e) {
    out.emit({{"error", "precondition"}, {"reason", e.what()}});
    std::cerr << "precondition: " << e.what() << "\n";
    return 3;
  } catch (const cap_error& e) {
    out.emit({{"error", "cap_exceeded"}, {"reason", e.what()}});
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 4;
  } catch (const input_error& e) {
    out.emit({{"error", "input"}, {"reason", e.what()}});
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
