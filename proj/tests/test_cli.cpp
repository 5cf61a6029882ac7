#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

#include "linkchain/corpus.hpp"

using namespace linkchain;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(LINKCHAIN_BIN) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), n);
  }
  int rc = pclose(pipe);
  r.status = WEXITSTATUS(rc);
  return r;
}

std::string tmp_path(const std::string& name) {
  return std::string("linkchain_clitest_") + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  REQUIRE(f.good());
  f << text;
}

const char* kFig1File =
    "1\tThe\tDT\t2\n"
    "2\tking\tNN\t5\n"
    "3\tof\tIN\t2\n"
    "4\tPrussia\tNNP\t3\n"
    "5\tbought\tVBD\t0\n"
    "6\ta\tDT\t7\n"
    "7\tcamel\tNN\t5\n";

}  // namespace

TEST_CASE("generate / train / parse / eval round-trip") {
  auto corpus = tmp_path("synth.conll");
  auto model = tmp_path("synth.model");

  auto gen = run("generate --seed 42 --count 300 > " + corpus);
  CHECK(gen.status == 0);

  auto train = run("train " + corpus + " -o " + model);
  CHECK(train.status == 0);

  auto parsed = run("parse " + model + " " + corpus);
  CHECK(parsed.status == 0);
  std::istringstream pred_in(parsed.out);
  auto pred = read_corpus(pred_in);
  auto gold = read_corpus_file(corpus);
  REQUIRE(pred.size() == gold.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    CHECK(validate_tree(pred[i].heads()).ok);
  }

  // Parsing twice gives identical output.
  auto parsed2 = run("parse " + model + " " + corpus);
  CHECK(parsed2.out == parsed.out);

  auto eval = run("eval " + model + " " + corpus);
  CHECK(eval.status == 0);
  CHECK(eval.out.find("directed\t") != std::string::npos);

  std::remove(corpus.c_str());
  std::remove(model.c_str());
}

TEST_CASE("eval on gold-equal predictions prints all ones") {
  auto corpus = tmp_path("fig1.conll");
  auto model = tmp_path("fig1.model");
  write_file(corpus, kFig1File);
  CHECK(run("train " + corpus + " -o " + model + " --alpha 0").status == 0);
  auto eval = run("eval " + model + " " + corpus);
  CHECK(eval.status == 0);
  CHECK(eval.out.find("directed\t1\n") != std::string::npos);
  CHECK(eval.out.find("exact\t1\n") != std::string::npos);
  std::remove(corpus.c_str());
  std::remove(model.c_str());
}

TEST_CASE("layers subcommand dumps the gold derivation") {
  auto corpus = tmp_path("layers.conll");
  write_file(corpus, kFig1File);
  auto r = run("layers " + corpus);
  CHECK(r.status == 0);
  CHECK(r.out.find("1 The DT none none RIGHT") != std::string::npos);
  CHECK(r.out.find("5 bought VBD one one NONE") != std::string::npos);
  std::remove(corpus.c_str());
}

TEST_CASE("train rejects empty and unusable input with exit code 2") {
  auto corpus = tmp_path("empty.conll");
  write_file(corpus, "");
  auto r = run("train " + corpus + " -o /dev/null");
  CHECK(r.status == 2);

  // Non-projective-only corpus.
  write_file(corpus, "1\ta\tX\t0\n2\tb\tX\t4\n3\tc\tX\t1\n4\td\tX\t2\n");
  auto r2 = run("train " + corpus + " -o /dev/null");
  CHECK(r2.status == 2);
  std::remove(corpus.c_str());
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run("frobnicate").status == 1);
  CHECK(run("train").status == 1);
}

TEST_CASE("split emits disjoint train and test files") {
  auto corpus = tmp_path("split.conll");
  auto model = tmp_path("split.model");
  auto gen = run("generate --seed 5 --count 100 > " + corpus);
  REQUIRE(gen.status == 0);
  auto r = run("train " + corpus + " -o " + model + " --split 0.9 --seed 3");
  CHECK(r.status == 0);
  auto train_set = read_corpus_file(model + ".train");
  auto test_set = read_corpus_file(model + ".test");
  CHECK(train_set.size() == 90);
  CHECK(test_set.size() == 10);
  std::remove(corpus.c_str());
  std::remove(model.c_str());
  std::remove((model + ".train").c_str());
  std::remove((model + ".test").c_str());
}

TEST_CASE("stats reports filter counts") {
  auto corpus = tmp_path("stats.conll");
  write_file(corpus, kFig1File);
  auto r = run("stats " + corpus);
  CHECK(r.status == 0);
  CHECK(r.out.find("sentences\t1") != std::string::npos);
  CHECK(r.out.find("usable_sentences\t1") != std::string::npos);
  std::remove(corpus.c_str());
}
