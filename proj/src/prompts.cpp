#include "ten/prompts.hpp"

namespace ten::prompts {

std::string teacher_user(const std::string& article,
                         const std::string& masked_headline,
                         const std::string& correct_number) {
  return "News: " + article + "\nHeadline: " + masked_headline +
         "\nCorrect Number: " + correct_number;
}

std::string rationale_user(const std::string& article) {
  return "News: " + article;
}

std::string headline_user(const std::string& article,
                          const std::string& rationale) {
  return "News: " + article + "\nRationale: " + rationale;
}

}  // namespace ten::prompts
