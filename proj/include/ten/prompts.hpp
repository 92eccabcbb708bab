#pragma once

#include <string>
#include <string_view>

namespace ten::prompts {

// Teacher instruction for producing a rationale from a news article, its
// masked headline, and the correct missing numeral.
inline constexpr std::string_view kTeacherSystem =
    "You will be given a piece of news after prefix \"News: \". You will be "
    "given a masked headline of the news after prefix \"Headline:\". You "
    "will be provided the correct missing numeral after prefix \"Correct "
    "Number:\". Please emphasise what Topic the headline should focus on, "
    "list all Entities and Numbers mentioned in the news, and elaborate on "
    "the Reasoning steps for how to calculate the correct number in the "
    "headline.";

// Student-side instruction: same task from the article alone, which is all a
// deployed rationale generator sees.
inline constexpr std::string_view kRationaleGenSystem =
    "You will be given a piece of news after prefix \"News: \". Please "
    "emphasise what Topic the headline should focus on, list all Entities "
    "and Numbers mentioned in the news, and elaborate on the Reasoning steps "
    "for how to calculate the correct number in the headline.";

// Headline generator instruction: article plus rationale in, headline out.
inline constexpr std::string_view kHeadlineGenSystem =
    "You will be given a piece of news after prefix \"News: \" and a "
    "rationale after prefix \"Rationale: \". Generate the news headline "
    "using the rationale.";

std::string teacher_user(const std::string& article,
                         const std::string& masked_headline,
                         const std::string& correct_number);
std::string rationale_user(const std::string& article);
std::string headline_user(const std::string& article,
                          const std::string& rationale);

}  // namespace ten::prompts
