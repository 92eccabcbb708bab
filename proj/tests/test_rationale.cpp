#include <doctest.h>

#include <random>

#include "ten/errors.hpp"
#include "ten/rationale.hpp"

using namespace ten;

namespace {

TenRationale sample_rationale() {
  TenRationale r;
  r.topic = "The headline should focus on the cost of the wedding.";
  r.entities = {"Dax Shepard", "Kristen Bell"};
  r.numbers = {{"the cost of the wedding", "$142"},
               {"", "2013"}};
  r.reasoning =
      "The headline highlights the total cost of the wedding, which the "
      "news states directly as $142.";
  r.final_numeral = Decimal(142);
  return r;
}

constexpr const char* kGolden =
    "**Topic the headline should focus on**\n"
    "The headline should focus on the cost of the wedding.\n"
    "\n"
    "**Entities Mentioned**\n"
    "1. Dax Shepard\n"
    "2. Kristen Bell\n"
    "\n"
    "**Numbers Mentioned**\n"
    "1. $142 (the cost of the wedding)\n"
    "2. 2013\n"
    "\n"
    "**Reasoning steps**\n"
    "The headline highlights the total cost of the wedding, which the news "
    "states directly as $142.\n"
    "\n"
    "Therefore, the numeral in the headline should be 142.";

}  // namespace

TEST_CASE("render produces the exact template") {
  CHECK(render(sample_rationale()) == kGolden);
}

TEST_CASE("render rejects empty or header-shaped fields") {
  TenRationale r = sample_rationale();
  SUBCASE("empty topic") {
    r.topic.clear();
    CHECK_THROWS_AS((void)render(r), ValidationError);
  }
  SUBCASE("no entities") {
    r.entities.clear();
    CHECK_THROWS_AS((void)render(r), ValidationError);
  }
  SUBCASE("blank entity") {
    r.entities.push_back("");
    CHECK_THROWS_AS((void)render(r), ValidationError);
  }
  SUBCASE("no numbers") {
    r.numbers.clear();
    CHECK_THROWS_AS((void)render(r), ValidationError);
  }
  SUBCASE("empty reasoning") {
    r.reasoning.clear();
    CHECK_THROWS_AS((void)render(r), ValidationError);
  }
  SUBCASE("topic containing a header line") {
    r.topic = "fine line\n**Entities Mentioned**\nsneaky";
    CHECK_THROWS_AS((void)render(r), ValidationError);
  }
}

TEST_CASE("parse_rationale inverts render") {
  TenRationale r = sample_rationale();
  CHECK(parse_rationale(render(r)) == r);
}

TEST_CASE("parse_rationale round-trips generated rationales") {
  std::mt19937_64 rng(99);
  auto word = [&] {
    static const char* words[] = {"news",  "cost",   "police", "city",
                                  "mayor", "budget", "report", "growth"};
    return std::string(words[rng() % 8]);
  };
  auto sentence = [&] {
    std::string s = word();
    const int n = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) s += " " + word();
    return s + ".";
  };
  for (int trial = 0; trial < 600; ++trial) {
    CAPTURE(trial);
    TenRationale r;
    r.topic = sentence();
    const int entities = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < entities; ++i) r.entities.push_back(word());
    const int numbers = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < numbers; ++i) {
      NumberMention m;
      m.raw = std::to_string(rng() % 100000);
      if (rng() % 4 == 0) m.raw = "$" + m.raw;
      if (rng() % 3 != 0) m.description = word() + " " + word();
      r.numbers.push_back(m);
    }
    r.reasoning = sentence();
    if (rng() % 2) r.reasoning += "\n" + sentence();
    auto value = Decimal(static_cast<std::int64_t>(rng() % 1000000))
                     .shifted_pow10(-static_cast<int>(rng() % 3));
    REQUIRE(value.has_value());
    r.final_numeral = *value;

    TenRationale back = parse_rationale(render(r));
    CHECK(back == r);
  }
}

TEST_CASE("parse_rationale tolerates observed header variants") {
  std::string text = kGolden;
  auto replace_once = [](std::string& s, const std::string& from,
                         const std::string& to) {
    auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    s.replace(pos, from.size(), to);
  };

  SUBCASE("doubled s in Entities") {
    replace_once(text, "**Entities Mentioned**", "**Entitiess Mentioned**");
    CHECK(parse_rationale(text) == sample_rationale());
  }
  SUBCASE("capitalized Steps") {
    replace_once(text, "**Reasoning steps**", "**Reasoning Steps**");
    CHECK(parse_rationale(text) == sample_rationale());
  }
  SUBCASE("trailing colon inside the stars") {
    replace_once(text, "**Entities Mentioned**", "**Entities Mentioned:**");
    CHECK(parse_rationale(text) == sample_rationale());
  }
  SUBCASE("trailing colon after the stars") {
    replace_once(text, "**Numbers Mentioned**", "**Numbers Mentioned**:");
    CHECK(parse_rationale(text) == sample_rationale());
  }
}

TEST_CASE("parse_rationale accepts nested parentheses in descriptions") {
  TenRationale r = sample_rationale();
  r.numbers[0].description = "the cost (fuel (and cake) included)";
  CHECK(parse_rationale(render(r)) == r);
}

TEST_CASE("parse_rationale reports structural problems by name") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      (void)parse_rationale(text);
      FAIL_CHECK("expected ParseError for: " << needle);
    } catch (const ParseError& error) {
      CHECK(std::string(error.what()).find(needle) != std::string::npos);
    }
  };

  std::string text = kGolden;
  SUBCASE("missing section") {
    auto pos = text.find("**Numbers Mentioned**");
    text = text.substr(0, pos) + text.substr(text.find("**Reasoning steps**"));
    expect_error(text, "missing section");
  }
  SUBCASE("swapped sections read as a skipped one") {
    TenRationale r = sample_rationale();
    std::string swapped =
        "**Topic the headline should focus on**\n" + r.topic + "\n\n" +
        "**Numbers Mentioned**\n1. $142\n\n" +
        "**Entities Mentioned**\n1. Dax Shepard\n\n" +
        "**Reasoning steps**\n" + r.reasoning + "\n\n" +
        "Therefore, the numeral in the headline should be 142.";
    expect_error(swapped, "missing section: Entities Mentioned");
  }
  SUBCASE("repeated section") {
    TenRationale r = sample_rationale();
    std::string repeated =
        "**Topic the headline should focus on**\n" + r.topic + "\n\n" +
        "**Entities Mentioned**\n1. Dax Shepard\n\n" +
        "**Numbers Mentioned**\n1. $142\n\n" +
        "**Entities Mentioned**\n1. Kristen Bell\n\n" +
        "**Reasoning steps**\n" + r.reasoning + "\n\n" +
        "Therefore, the numeral in the headline should be 142.";
    expect_error(repeated, "duplicate or out-of-order section");
  }
  SUBCASE("text before the first header") {
    expect_error("Sure! Here is the rationale.\n" + text,
                 "text before first section header");
  }
  SUBCASE("empty section") {
    auto pos = text.find("1. Dax Shepard\n2. Kristen Bell\n");
    std::string gutted = text;
    gutted.erase(pos, std::string("1. Dax Shepard\n2. Kristen Bell\n").size());
    expect_error(gutted, "empty section");
  }
  SUBCASE("missing closing sentence") {
    auto pos = text.rfind("Therefore,");
    expect_error(text.substr(0, pos), "closing sentence");
  }
  SUBCASE("closing sentence without a numeral") {
    auto pos = text.rfind("142.");
    expect_error(text.substr(0, pos) + "unknown.", "no numeral");
  }
  SUBCASE("ambiguous closing numeral") {
    auto pos = text.rfind("142.");
    expect_error(text.substr(0, pos) + "142 or 143.", "ambiguous");
  }
}

TEST_CASE("final_numeral reads the last closing sentence") {
  CHECK(final_numeral("Therefore, the numeral in the headline should be 65.") ==
        Decimal(65));
  CHECK(final_numeral(
            "the numeral in the headline should be 10. More text.\n"
            "Revised: the numeral in the headline should be 12.") ==
        Decimal(12));
  CHECK(final_numeral("The Numeral In The Headline Should Be 30,000.") ==
        Decimal(30000));
  CHECK(final_numeral("the numeral in the headline should be 21.9.") ==
        *Decimal::parse("21.9"));
  CHECK_THROWS_AS((void)final_numeral("no conclusion here"), ParseError);
}

TEST_CASE("closing sentence numerals normalize suffixes") {
  CHECK(final_numeral("the numeral in the headline should be 30K.") ==
        Decimal(30000));
}
