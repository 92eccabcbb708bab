#include <doctest.h>

#include <algorithm>
#include <random>

#include "ten/errors.hpp"
#include "ten/numeral.hpp"

using namespace ten;

namespace {

std::vector<std::string> surfaces(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& n : extract_numerals(text)) out.push_back(n.surface);
  return out;
}

}  // namespace

TEST_CASE("extract_numerals finds digit mentions") {
  auto one = extract_numerals("the wedding cost $142.");
  REQUIRE(one.size() == 1);
  CHECK(one[0].surface == "142");
  CHECK(one[0].value == Decimal(142));
  CHECK(one[0].multiplier == Multiplier::one);
  CHECK(one[0].begin == 18);
  CHECK(one[0].end == 21);
  CHECK_FALSE(one[0].is_word);
  CHECK(one[0].mantissa_len == 3);
}

TEST_CASE("extract_numerals keeps magnitude suffixes in the surface") {
  auto m = extract_numerals("a $400m deal");
  REQUIRE(m.size() == 1);
  CHECK(m[0].surface == "400m");
  CHECK(m[0].value == Decimal(400));
  CHECK(m[0].multiplier == Multiplier::million);
  CHECK(m[0].mantissa_len == 3);
  CHECK(normalize(m[0]) == Decimal(400000000));

  auto k = extract_numerals("30K Walmart part-timers");
  REQUIRE(k.size() == 1);
  CHECK(k[0].surface == "30K");
  CHECK(normalize(k[0]) == Decimal(30000));
  CHECK(digit_string(k[0]) == "30");

  auto bn = extract_numerals("he said 0.5bn then left");
  REQUIRE(bn.size() == 1);
  CHECK(bn[0].surface == "0.5bn");
  CHECK(normalize(bn[0]) == Decimal(500000000));

  // A suffix letter followed by another letter is a unit, not a magnitude.
  auto kg = extract_numerals("5kg of rice");
  REQUIRE(kg.size() == 1);
  CHECK(kg[0].surface == "5");
  CHECK(kg[0].multiplier == Multiplier::one);
}

TEST_CASE("extract_numerals reads comma thousand separators") {
  auto grouped = extract_numerals("6,000 people");
  REQUIRE(grouped.size() == 1);
  CHECK(grouped[0].surface == "6,000");
  CHECK(grouped[0].value == Decimal(6000));
  CHECK(digit_string(grouped[0]) == "6000");

  auto big = extract_numerals("12,345,678 total");
  REQUIRE(big.size() == 1);
  CHECK(big[0].value == Decimal(12345678));

  // Groups must be exactly three digits; otherwise the comma separates
  // independent numerals.
  CHECK(surfaces("1,23 items") == std::vector<std::string>{"1", "23"});
  CHECK(surfaces("1,2345 odd") == std::vector<std::string>{"1", "2345"});
}

TEST_CASE("extract_numerals reads decimals and stops at a second point") {
  auto pct = extract_numerals("a 3.5% rise");
  REQUIRE(pct.size() == 1);
  CHECK(pct[0].surface == "3.5");
  CHECK(pct[0].value == *Decimal::parse("3.5"));

  CHECK(surfaces("version 2.0.1") == std::vector<std::string>{"2.0", "1"});
}

TEST_CASE("extract_numerals reads spelled-out cardinals") {
  auto nine = extract_numerals("nine officers were hurt");
  REQUIRE(nine.size() == 1);
  CHECK(nine[0].surface == "nine");
  CHECK(nine[0].value == Decimal(9));
  CHECK(nine[0].is_word);
  CHECK(digit_string(nine[0]) == "9");

  auto compound = extract_numerals("twenty-one years");
  REQUIRE(compound.size() == 1);
  CHECK(compound[0].surface == "twenty-one");
  CHECK(compound[0].value == Decimal(21));

  auto scaled = extract_numerals("five thousand people");
  REQUIRE(scaled.size() == 1);
  CHECK(scaled[0].surface == "five thousand");
  CHECK(scaled[0].value == Decimal(5));
  CHECK(scaled[0].multiplier == Multiplier::thousand);
  CHECK(normalize(scaled[0]) == Decimal(5000));

  auto hundred = extract_numerals("nine hundred miles");
  REQUIRE(hundred.size() == 1);
  CHECK(hundred[0].value == Decimal(900));
  CHECK(hundred[0].multiplier == Multiplier::one);

  auto both = extract_numerals("twenty-five thousand fans");
  REQUIRE(both.size() == 1);
  CHECK(normalize(both[0]) == Decimal(25000));

  // Embedded in a longer word: not a numeral.
  CHECK(extract_numerals("canine unit").empty());
  CHECK(extract_numerals("the nineties").empty());
}

TEST_CASE("extract_numerals handles multiple mentions left to right") {
  auto all = extract_numerals("2.5m and 7bn and nine");
  REQUIRE(all.size() == 3);
  CHECK(all[0].surface == "2.5m");
  CHECK(all[1].surface == "7bn");
  CHECK(all[2].surface == "nine");
  CHECK(all[0].end <= all[1].begin);
  CHECK(all[1].end <= all[2].begin);
}

TEST_CASE("numerals_match compares the first numeral by value or digits") {
  CHECK(numerals_match("Wedding Cost $142.", Decimal(142)));
  CHECK(numerals_match("30K Walmart Part-Timers", Decimal(30)));    // digits
  CHECK(numerals_match("30K Walmart Part-Timers", Decimal(30000))); // value
  CHECK(numerals_match("nine cops hurt", Decimal(9)));
  CHECK(numerals_match("It rose 21.90 percent", *Decimal::parse("21.9")));
  CHECK_FALSE(numerals_match("no numbers here", Decimal(5)));
  CHECK_FALSE(numerals_match("Wedding Cost $142.", Decimal(143)));
  // Only the first numeral counts.
  CHECK_FALSE(numerals_match("5 of the 30K workers", Decimal(30)));
  CHECK(numerals_match("5 of the 30K workers", Decimal(5)));
}

TEST_CASE("mask_numeral replaces exactly the mantissa") {
  CHECK(mask_numeral("Wedding Cost $142.") == "Wedding Cost $____.");
  CHECK(mask_numeral("30K Walmart Part-Timers to Lose Health Insurance.") ==
        "____K Walmart Part-Timers to Lose Health Insurance.");
  CHECK(mask_numeral("He Spent 32 Years on the Run.") ==
        "He Spent ____ Years on the Run.");
  CHECK(mask_numeral("Deal worth $2.5bn done") == "Deal worth $____bn done");
  CHECK(mask_numeral("nine hurt in protests") == "____ hurt in protests");
  CHECK(mask_numeral("Crowd of 6,000 gathers") == "Crowd of ____ gathers");
}

TEST_CASE("mask_numeral requires exactly one numeral") {
  CHECK_THROWS_AS((void)mask_numeral("no numerals at all"), ValidationError);
  CHECK_THROWS_AS((void)mask_numeral("between 5 and 10 people"),
                  ValidationError);
}

TEST_CASE("operation labels round-trip") {
  for (OperationType op : kAllOperations) {
    auto parsed = parse_operation(to_string(op));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == op);
  }
  CHECK(parse_operation("Copy") == OperationType::copy);
  CHECK(parse_operation("Paraphrase") == OperationType::paraphrase);
  CHECK_FALSE(parse_operation("copy").has_value());
  CHECK_FALSE(parse_operation("Unknown").has_value());
}

TEST_CASE("infer_operations covers each derivation") {
  auto infer = [](std::vector<Decimal> pool, Decimal target) {
    return infer_operations(pool, target);
  };

  CHECK(infer({142}, 142).contains(OperationType::copy));
  CHECK(infer({Decimal(9), Decimal(1)}, 10).contains(OperationType::add));
  CHECK(infer({Decimal(2017), Decimal(1985)}, 32)
            .contains(OperationType::subtract));
  CHECK(infer({Decimal(6), Decimal(5)}, 30).contains(OperationType::multiply));
  CHECK(infer({Decimal(30), Decimal(5)}, 6).contains(OperationType::divide));
  CHECK(infer({30000}, 30).contains(OperationType::paraphrase));
  CHECK(infer({64728}, 65).contains(OperationType::round));

  SUBCASE("absent derivations stay absent") {
    auto only_copy = infer({142}, 142);
    CHECK_FALSE(only_copy.contains(OperationType::add));
    CHECK_FALSE(only_copy.contains(OperationType::round));
    CHECK_FALSE(only_copy.contains(OperationType::paraphrase));

    auto nothing = infer({Decimal(3), Decimal(17)}, 1000);
    CHECK(nothing.empty());
  }

  SUBCASE("trans and span are never inferred") {
    for (const auto& result :
         {infer({142}, 142), infer({Decimal(9), Decimal(1)}, 10),
          infer({*Decimal::parse("0.5")}, 50)}) {
      CHECK_FALSE(result.contains(OperationType::trans));
      CHECK_FALSE(result.contains(OperationType::span));
    }
  }

  SUBCASE("round must actually change the value") {
    // 30 would "round" to itself; that alone is not a Round derivation.
    auto same = infer({30}, 30);
    CHECK(same.contains(OperationType::copy));
    CHECK_FALSE(same.contains(OperationType::round));
    // Rescaled rounding: 64728 / 10^3 = 64.728, rounded to 65.
    CHECK(infer({64728}, 65).contains(OperationType::round));
  }

  SUBCASE("pairs require two distinct mentions") {
    auto single = infer({10}, 20);
    CHECK_FALSE(single.contains(OperationType::add));
    auto doubled = infer({Decimal(10), Decimal(10)}, 20);
    CHECK(doubled.contains(OperationType::add));
  }

  CHECK_THROWS_AS((void)infer_operations({}, Decimal(5)), ValidationError);
}

namespace {

// Straight-line re-derivation used to cross-check infer_operations. Each rule
// is written out independently rather than sharing the library's search
// order.
bool oracle_copy(const std::vector<Decimal>& pool, const Decimal& target) {
  return std::find(pool.begin(), pool.end(), target) != pool.end();
}

bool oracle_pairwise(const std::vector<Decimal>& pool, const Decimal& target,
                     OperationType op) {
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (i == j) continue;
      std::optional<Decimal> got;
      switch (op) {
        case OperationType::add:
          got = pool[i].plus(pool[j]);
          break;
        case OperationType::subtract:
          got = pool[i].minus(pool[j]);
          break;
        case OperationType::multiply:
          got = pool[i].times(pool[j]);
          break;
        case OperationType::divide: {
          if (pool[j].is_zero()) continue;
          auto product = target.times(pool[j]);
          if (product && *product == pool[i]) return true;
          continue;
        }
        default:
          return false;
      }
      if (got && *got == target) return true;
    }
  }
  return false;
}

bool oracle_paraphrase(const std::vector<Decimal>& pool,
                       const Decimal& target) {
  for (int exp : {3, 6, 9}) {
    auto scaled = target.shifted_pow10(exp);
    if (scaled && oracle_copy(pool, *scaled)) return true;
  }
  return false;
}

bool oracle_round(const std::vector<Decimal>& pool, const Decimal& target) {
  std::vector<Decimal> rescaled(pool.begin(), pool.end());
  for (const Decimal& value : pool) {
    for (int exp : {3, 6, 9, -3, -6, -9}) {
      if (auto shifted = value.shifted_pow10(exp))
        rescaled.push_back(*shifted);
    }
  }
  for (const Decimal& value : rescaled) {
    if (value == target) continue;  // a no-op rounding is no derivation
    for (int digits = 1; digits <= 3; ++digits) {
      auto r = value.rounded_to_significant(digits);
      if (r && *r == target) return true;
    }
    for (std::int32_t places = 0; places < value.scale(); ++places) {
      if (value.rounded_to_places(places) == target) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("infer_operations agrees with a brute-force re-derivation") {
  std::mt19937_64 rng(20260823);
  const std::vector<Decimal> universe = {
      Decimal(0),     Decimal(1),
      Decimal(2),     Decimal(3),
      Decimal(5),     Decimal(9),
      Decimal(10),    Decimal(12),
      Decimal(30),    Decimal(65),
      Decimal(100),   Decimal(142),
      Decimal(1000),  Decimal(30000),
      Decimal(64728), Decimal(1985),
      Decimal(2017),  *Decimal::parse("0.5"),
      *Decimal::parse("2.5"), *Decimal::parse("64.728"),
      *Decimal::parse("21.9")};

  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Decimal> pool;
    const std::size_t size = 1 + rng() % 5;
    for (std::size_t i = 0; i < size; ++i)
      pool.push_back(universe[rng() % universe.size()]);
    const Decimal target = universe[rng() % universe.size()];
    CAPTURE(trial);

    auto inferred = infer_operations(pool, target);
    CHECK(inferred.contains(OperationType::copy) == oracle_copy(pool, target));
    CHECK(inferred.contains(OperationType::add) ==
          oracle_pairwise(pool, target, OperationType::add));
    CHECK(inferred.contains(OperationType::subtract) ==
          oracle_pairwise(pool, target, OperationType::subtract));
    CHECK(inferred.contains(OperationType::multiply) ==
          oracle_pairwise(pool, target, OperationType::multiply));
    CHECK(inferred.contains(OperationType::divide) ==
          oracle_pairwise(pool, target, OperationType::divide));
    CHECK(inferred.contains(OperationType::paraphrase) ==
          oracle_paraphrase(pool, target));
    CHECK(inferred.contains(OperationType::round) ==
          oracle_round(pool, target));
    CHECK_FALSE(inferred.contains(OperationType::trans));
    CHECK_FALSE(inferred.contains(OperationType::span));
  }
}
