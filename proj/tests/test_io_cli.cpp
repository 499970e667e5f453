#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "killword/generators.hpp"
#include "killword/io.hpp"

using namespace killword;
using killword::io::json;
using kwtest::make_morphism;
using kwtest::wd;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(KILLWORD_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
  int status = pclose(pipe);
  result.code = WEXITSTATUS(status);
  return result;
}

std::string write_doc(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path.string();
}

const char* kNilpotent =
    R"({"kind":"matrices","alphabet":["a"],"n":2,"generators":{"a":[[0,1],[0,0]]}})";
const char* kCodeAaBa = R"({"kind":"code","alphabet":["a","b"],"words":["aa","ba"]})";

}  // namespace

TEST_SUITE_BEGIN("io_cli");

TEST_CASE("parse: matrices documents round-trip") {
  auto m = primes_family(2).morphism;
  json doc = io::matrices_document(m);
  auto parsed = io::parse_instance(doc);
  REQUIRE(parsed.morphism.has_value());
  CHECK(parsed.morphism->dim() == m.dim());
  for (Letter a = 0; a < m.letters(); ++a)
    CHECK(parsed.morphism->generator(a) == m.generator(a));
}

TEST_CASE("parse: nfa kind is sugar for 0/1 matrices") {
  json doc = {
      {"kind", "nfa"},
      {"alphabet", {"a", "b"}},
      {"states", 2},
      {"delta", {{"a", {{0, 1}}}, {"b", {{1, 0}, {1, 1}}}}},
  };
  auto parsed = io::parse_instance(doc);
  REQUIRE(parsed.morphism.has_value());
  auto expected = make_morphism({{{0, 1}, {0, 0}}, {{0, 0}, {1, 1}}});
  for (Letter a = 0; a < 2; ++a) CHECK(parsed.morphism->generator(a) == expected.generator(a));

  // round-trip through the nfa emitter
  auto again = io::parse_instance(io::nfa_document(*parsed.morphism));
  for (Letter a = 0; a < 2; ++a)
    CHECK(again.morphism->generator(a) == expected.generator(a));
}

TEST_CASE("parse: code documents accept strings and symbol arrays") {
  json doc = {{"kind", "code"}, {"alphabet", {"a", "b"}}, {"words", {"aa", "ba"}}};
  auto parsed = io::parse_instance(doc);
  REQUIRE(parsed.code.has_value());
  CHECK(parsed.code->words() == std::vector<Word>{wd("aa"), wd("ba")});

  json doc2 = {{"kind", "code"},
               {"alphabet", {"x", "yy"}},
               {"words", {json::array({"x", "yy"}), json::array({"yy"})}}};
  auto parsed2 = io::parse_instance(doc2);
  REQUIRE(parsed2.code.has_value());
  CHECK(parsed2.code->words() == std::vector<Word>{Word{0, 1}, Word{1}});
}

TEST_CASE("parse: malformed documents are rejected") {
  auto reject = [](json doc) {
    CHECK_THROWS_AS(io::parse_instance(doc), input_error);
  };
  reject(json::array());
  reject({{"kind", "nonsense"}});
  reject({{"kind", "matrices"}, {"alphabet", {"a"}}, {"n", 0}, {"generators", json::object()}});
  reject({{"kind", "matrices"}, {"alphabet", {"a"}}, {"n", 1}, {"generators", json::object()}});
  reject({{"kind", "matrices"},
          {"alphabet", {"a"}},
          {"n", 1},
          {"generators", {{"a", {{-1}}}}}});
  reject({{"kind", "matrices"},
          {"alphabet", {"a"}},
          {"n", 2},
          {"generators", {{"a", {{0, 1}}}}}});  // wrong row count
  reject({{"kind", "matrices"},
          {"alphabet", {"a"}},
          {"n", 1},
          {"generators", {{"a", {{1}}}, {"b", {{1}}}}}});  // unknown symbol
  reject({{"kind", "nfa"},
          {"alphabet", {"a"}},
          {"states", 2},
          {"delta", {{"a", {{0, 5}}}}}});  // state out of range
  reject({{"kind", "code"}, {"alphabet", {"a"}}, {"words", {"ab"}}});  // bad letter
}

TEST_CASE("words serialize as symbol arrays") {
  Alphabet ab({"a", "b1"});
  json arr = io::word_json(ab, Word{1, 0, 1});
  CHECK(arr == json::array({"b1", "a", "b1"}));
  CHECK(io::word_from_json(ab, arr) == Word{1, 0, 1});
}

TEST_CASE("cli: gen output validates (round trip)") {
  auto path = std::filesystem::temp_directory_path() / "kw_gen_roundtrip.json";
  for (const char* gen : {"gen primes --m 2", "gen ufa --n 4 --density 0.2 --seed 5",
                          "gen code --alphabet 2 --max-words 3 --max-len 3 --seed 7"}) {
    auto generated = run_cli(gen);
    REQUIRE(generated.code == 0);
    std::ofstream(path) << generated.out;
    auto validated = run_cli("validate " + path.string());
    CHECK(validated.code == 0);
  }
}

TEST_CASE("cli: mortality verdicts and exit codes") {
  auto nil = write_doc("kw_nil.json", kNilpotent);
  auto r1 = run_cli("mortal " + nil);
  CHECK(r1.code == 0);
  CHECK(json::parse(r1.out)["verdict"] == "mortal");

  auto id = write_doc("kw_id.json",
                      R"({"kind":"matrices","alphabet":["a"],"n":1,"generators":{"a":[[1]]}})");
  auto r2 = run_cli("mortal " + id);
  CHECK(r2.code == 1);
  CHECK(json::parse(r2.out)["verdict"] == "immortal");
}

TEST_CASE("cli: jsr gate failure exits 3 with a witness") {
  auto bad = write_doc("kw_two.json",
                       R"({"kind":"matrices","alphabet":["a"],"n":1,"generators":{"a":[[2]]}})");
  auto r = run_cli("jsr " + bad);
  CHECK(r.code == 3);
  json doc = json::parse(r.out);
  CHECK(doc["verdict"] == "jsr_gt_one");
  CHECK(doc["witness"]["word"] == json::array({"a"}));
}

TEST_CASE("cli: kill emits the word with its bound") {
  auto nil = write_doc("kw_nil.json", kNilpotent);
  auto r = run_cli("kill " + nil);
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["word"] == json::array({"a", "a"}));
  CHECK(doc["length"] == 2);
  CHECK(doc["bound"] == 17);
  CHECK(doc["rank"] == 0);
}

TEST_CASE("cli: kill on an immortal instance is a precondition failure") {
  auto id = write_doc("kw_id.json",
                      R"({"kind":"matrices","alphabet":["a"],"n":1,"generators":{"a":[[1]]}})");
  CHECK(run_cli("kill " + id).code == 3);
}

TEST_CASE("cli: synthesize on primes m=2 reports rank 1") {
  auto path = std::filesystem::temp_directory_path() / "kw_primes2.json";
  auto generated = run_cli("gen primes --m 2");
  REQUIRE(generated.code == 0);
  std::ofstream(path) << generated.out;
  auto r = run_cli("synthesize " + path.string());
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["rank"] == 1);
  CHECK(doc["verdict"] == "min_rank_word");
}

TEST_CASE("cli: uncompletable pipeline and flower emission") {
  auto code_path = write_doc("kw_code.json", kCodeAaBa);
  auto r = run_cli("uncompletable " + code_path);
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["bound"] == 360);
  CHECK(doc["length"].get<int>() <= 360);

  auto fl = run_cli("flower " + code_path);
  REQUIRE(fl.code == 0);
  json fdoc = json::parse(fl.out);
  CHECK(fdoc["kind"] == "nfa");
  CHECK(fdoc["states"] == 3);

  auto complete = write_doc("kw_complete.json",
                            R"({"kind":"code","alphabet":["a","b"],"words":["a","b"]})");
  CHECK(run_cli("uncompletable " + complete).code == 1);
}

TEST_CASE("cli: iscode flags non-codes with exit 3") {
  auto bad = write_doc("kw_noncode.json",
                       R"({"kind":"code","alphabet":["a","b"],"words":["a","ab","ba"]})");
  auto r = run_cli("iscode " + bad);
  CHECK(r.code == 3);
  json doc = json::parse(r.out);
  CHECK(doc["verdict"] == "not_code");
  CHECK(doc["witness"]["word"] == json::array({"a", "b", "a"}));

  auto good = write_doc("kw_code2.json", kCodeAaBa);
  CHECK(run_cli("iscode " + good).code == 0);
}

TEST_CASE("cli: oracle commands") {
  auto nil = write_doc("kw_nil.json", kNilpotent);
  auto r = run_cli("oracle kill " + nil);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["word"] == json::array({"a", "a"}));

  auto code_path = write_doc("kw_code.json", kCodeAaBa);
  auto r2 = run_cli("oracle uncompletable " + code_path + " --max-len 12");
  REQUIRE(r2.code == 0);
  CHECK(json::parse(r2.out)["word"] == json::array({"b", "b"}));

  auto r3 = run_cli("oracle monoid " + nil);
  REQUIRE(r3.code == 0);
  json doc = json::parse(r3.out);
  CHECK(doc["complete"] == true);
  CHECK(doc["elements"] == 3);
  CHECK(doc["min_rank"] == 0);
}

TEST_CASE("cli: identical inputs give byte-identical output") {
  auto path = std::filesystem::temp_directory_path() / "kw_det.json";
  auto generated = run_cli("gen ufa --n 5 --density 0.2 --seed 13");
  REQUIRE(generated.code == 0);
  std::ofstream(path) << generated.out;
  auto r1 = run_cli("synthesize " + path.string());
  auto r2 = run_cli("synthesize " + path.string());
  CHECK(r1.code == r2.code);
  CHECK(r1.out == r2.out);
}

TEST_CASE("cli: --timings adds the field, default output omits it") {
  auto nil = write_doc("kw_nil.json", kNilpotent);
  auto plain = run_cli("mortal " + nil);
  CHECK_FALSE(json::parse(plain.out).contains("timings_ms"));
  auto timed = run_cli("--timings mortal " + nil);
  CHECK(json::parse(timed.out).contains("timings_ms"));
}

TEST_CASE("cli: malformed input exits 2; quiet mode stays silent") {
  auto junk = write_doc("kw_junk.json", "this is not json");
  auto r = run_cli("validate " + junk);
  CHECK(r.code == 2);

  auto nil = write_doc("kw_nil.json", kNilpotent);
  auto q = run_cli("--quiet kill " + nil);
  CHECK(q.code == 0);
  CHECK(q.out.empty());
}

TEST_SUITE_END();
