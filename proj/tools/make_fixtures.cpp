// Writes a deterministic synthetic corpus and prompt set for the CLI tests:
//   <dir>/corpus.txt   60 documents over ids [0, 200)
//   <dir>/prompts.txt  12 prompts of 48 tokens plus one 5-token line that
//                      exercises the too-short skip path
//   <dir>/config.json  run config pointing at the corpus above
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "modec/corpus.hpp"

namespace {

constexpr int kVocab = 200;

std::vector<modec::TokenId> make_doc(std::mt19937_64& rng, int length) {
  std::uniform_int_distribution<int> any(0, kVocab - 1);
  std::uniform_int_distribution<int> topic_pick(0, 11);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int topic_base = any(rng) % (kVocab - 12);
  std::vector<modec::TokenId> doc;
  doc.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    const double c = coin(rng);
    if (c < 0.55) {
      doc.push_back(topic_base + topic_pick(rng));
    } else if (c < 0.85 || doc.size() < 2) {
      doc.push_back(any(rng));
    } else {
      doc.push_back(doc[doc.size() - 2]);
    }
  }
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(20240817u);
  std::uniform_int_distribution<int> doc_len(80, 160);

  std::vector<std::vector<modec::TokenId>> corpus;
  for (int d = 0; d < 60; ++d) corpus.push_back(make_doc(rng, doc_len(rng)));
  modec::save_token_lines(dir + "/corpus.txt", corpus);

  std::vector<std::vector<modec::TokenId>> prompts;
  for (int p = 0; p < 12; ++p) prompts.push_back(make_doc(rng, 48));
  prompts.push_back(make_doc(rng, 5));
  modec::save_token_lines(dir + "/prompts.txt", prompts);

  std::ofstream config(dir + "/config.json");
  config << "{\n"
         << "  \"strategy\": \"momentum\",\n"
         << "  \"decoder\": {\"top_k\": 5, \"max_steps\": 48, \"seed\": 7},\n"
         << "  \"provider\": {\"kind\": \"toy-lm\", \"corpus\": \"" << dir
         << "/corpus.txt\"},\n"
         << "  \"prompt_length\": 32,\n"
         << "  \"workers\": 2\n"
         << "}\n";
  return config.good() ? 0 : 1;
}
