#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ten/corpus.hpp"

namespace ten {

// A worked demonstration used as a few-shot example for the teacher: a fully
// annotated sample plus the reviewed rationale text for it.
struct DemoExample {
  Sample sample;  // carries operation and correct_numeral annotations
  std::string rationale_text;
};

// The five built-in demonstrations, one per derivation flavor, in the order
// they appear in few-shot prompts: Copy, Add, Subtract, Paraphrase, Round.
const std::vector<DemoExample>& builtin_demos();

// Materializes demos as an editable fixture directory of numbered JSON files
// ({id, article, headline, correct_numeral, operation, rationale}).
void write_demo_dir(const std::filesystem::path& dir,
                    const std::vector<DemoExample>& demos);

// Loads a fixture directory (files in name order). Throws CorpusError on
// malformed files.
std::vector<DemoExample> load_demo_dir(const std::filesystem::path& dir);

// Checks every demo invariant: annotations present, the rationale parses,
// its final numeral equals the annotation, and the headline masks cleanly.
// Throws ValidationError listing all violations.
void check_demos(const std::vector<DemoExample>& demos);

// The numeral pool an oracle run uses for a demo: values extracted from the
// article plus values appearing in the rationale's Numbers Mentioned raws
// (the curated list catches numbers written as words the extractor does not
// model, like "a Highway Patrol trooper" counting as 1).
std::vector<Decimal> demo_numeral_pool(const DemoExample& demo);

}  // namespace ten
