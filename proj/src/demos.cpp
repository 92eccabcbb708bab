#include "ten/demos.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ten/errors.hpp"
#include "ten/jsonl.hpp"
#include "ten/rationale.hpp"

namespace ten {

namespace {

using nlohmann::ordered_json;

DemoExample make_demo(const char* id, OperationType op,
                      std::int64_t correct_numeral, const char* headline,
                      const char* article, const char* rationale) {
  DemoExample d;
  d.sample.id = id;
  d.sample.article = article;
  d.sample.headline = headline;
  d.sample.operation = op;
  d.sample.correct_numeral = Decimal(correct_numeral);
  d.rationale_text = rationale;
  return d;
}

std::vector<DemoExample> build_demos() {
  std::vector<DemoExample> demos;

  demos.push_back(make_demo(
      "demo-copy", OperationType::copy, 142,
      "Dax Shepard: Wedding to Kristen Bell Cost $142.",
      "(Oct 29, 2013 8:15 AM CDT) Dax Shepard and Kristen Bell got married "
      "at the Beverly Hills courthouse, in a ceremony about as different "
      "from Kim Kardashian's last wedding extravaganza as it is possible to "
      "be. As Shepard revealed last night on Jimmy Kimmel Live, the whole "
      "thing—including the fuel it took to get to the courthouse—"
      "cost $142. It was just Kristen and I at this lonely courthouse, he "
      "said, so friends showed up afterward with a cake reading, in icing, "
      "The World's Worst Wedding. How many people can say they threw the "
      "world's worst wedding? Shepard asked.",
      R"(**Topic the headline should focus on**
The headline should focus on the cost of Dax Shepard and Kristen Bell's wedding.

**Entities Mentioned**
1. Dax Shepard
2. Kristen Bell
3. Kim Kardashian
4. Jimmy Kimmel

**Numbers Mentioned**
1. $142 (cost of the wedding)

**Reasoning steps**
The news content directly states that the entire wedding, including the fuel to get to the courthouse, cost $142.

Therefore, the numeral in the headline should be 142.)"));

  demos.push_back(make_demo(
      "demo-add", OperationType::add, 10,
      "10 Cops Injured in St. Louis Protests.",
      "(Sep 16, 2017 8:26 AM CDT) Police in St. Louis used tear gas to "
      "break up protests Friday night after around 1,000 demonstrators "
      "surrounded the home of Mayor Lyda Krewson, hurling red paint and "
      "breaking a front window. Police say at least nine St. Louis officers "
      "and a Highway Patrol trooper were injured in the protests, which "
      "followed the acquittal of white former police officer Jason Stockley "
      "in the 2011 shooting death of black motorist Anthony Lamar Smith, "
      "the St. Louis Post-Dispatch reports. Police say 32 people were "
      "arrested when a demonstration that had been largely peaceful turned "
      "violent after dark and agitators began to destroy property and "
      "assault police officers. Activists have promised more protests "
      "against the acquittal of Stockley, who, during a police chase, was "
      "caught on dashcam video saying I'm going to kill this motherf*****, "
      "don't you know it, the AP reports. Less than a minute later, he shot "
      "Smith five times.....",
      R"(**Topic the headline should focus on**
The headline should focus on the number of police officers injured during the St. Louis protests.

**Entities Mentioned**
1. Mayor Lyda Krewson
2. Jason Stockley (white former police officer)
3. Anthony Lamar Smith (black motorist)
4. Reverend Clinton Stancil
5. St. Louis officers
6. Highway Patrol trooper

**Numbers Mentioned**
1. 1,000 (demonstrators)
2. 9 (St. Louis officers injured)
3. 1 (Highway Patrol trooper injured)
4. 2011 (year of the shooting)
5. 32 (people arrested)
6. 3 (years since Ferguson unrest)
7. 18 (age of Michael Brown)
8. 5 (times Smith was shot)
9. 24 (age of Anthony Lamar Smith)

**Reasoning steps**
To find the total number of cops injured in the St. Louis protests, we need to sum the number of St. Louis officers injured and the Highway Patrol trooper injured.

- St. Louis officers injured: 9
- Highway Patrol trooper injured: 1

Total injured cops = 9 (St. Louis officers) + 1 (Highway Patrol trooper) = 10

Therefore, the numeral in the headline should be 10.)"));

  demos.push_back(make_demo(
      "demo-subtract", OperationType::subtract, 32,
      "He Spent 32 Years on the Run. Then Police Received a Tip.",
      "(Jun 26, 2017 9:30 AM CDT) After three decades on the lam, an "
      "Arkansas man has been quickly reacquainted with life behind bars. "
      "Steven Dishman, 60—who was five months into a seven-year "
      "sentence for burglary and property theft when he escaped from the "
      "Cummins Unit in Lincoln County, Ark., on May 28, 1985, reports KTHV"
      "—was arrested Sunday at a home in Springdale in the "
      "northwestern part of the state, report Arkansas Online and KFSM. "
      "Arkansas State Police and local cops raided the home after receiving "
      "a tip. A rep for the Arkansas Department of Correction tells Fox 16 "
      "that Dishman will now be required to serve the remainder of his "
      "sentence. Dishman may also face additional charges related to his "
      "escape, the details of which were not immediately explained. Had "
      "Dishman stayed in jail, he would have been eligible for parole in "
      "1987 and freed by 1991.",
      R"(**Topic the headline should focus on**
The headline should focus on the number of years Steven Dishman spent on the run before being recaptured.

**Entities Mentioned**
1. Steven Dishman
2. Arkansas State Police
3. Local cops
4. Arkansas Department of Correction representative

**Numbers Mentioned**
1. 60 (age of Steven Dishman)
2. 7 (years sentence for burglary and property theft)
3. 5 (months into his sentence when he escaped)
4. May 28, 1985 (date of escape)
5. 1987 (year he would have been eligible for parole)
6. 1991 (year he would have been freed)
7. 2017 (current year)

**Reasoning steps**
To find the number of years Steven Dishman spent on the run, we need to calculate the difference between the year he escaped (1985) and the year he was recaptured (2017).

- Year of escape: 1985
- Year of recapture: 2017

Years on the run = 2017 - 1985 = 32

Therefore, the numeral in the headline should be 32.)"));

  demos.push_back(make_demo(
      "demo-paraphrase", OperationType::paraphrase, 30,
      "30K Walmart Part-Timers to Lose Health Insurance.",
      "(Oct 7, 2014 12:40 PM CDT) As of Jan. 1, Walmart will no longer "
      "offer 30,000 of its employees health insurance. Bloomberg notes "
      "that's about 2% of its workforce. The move comes as a reaction to "
      "the company's rising health care costs as far more of its employees "
      "and their families enrolled in its health care plans than it had "
      "expected following the ObamaCare rollout. The AP reports those costs "
      "will surge $500 million this fiscal year, $170 million more than had "
      "been estimated. Those affected are employees who average fewer than "
      "30 hours of work per week; the Wall Street Journal explains they "
      "were grandfathered in when Walmart in 2012 stopped offering "
      "insurance to new hires who didn't exceed the 30-hour threshold. A "
      "benefits expert says Walmart is actually late to the game in terms "
      "of cutting insurance to some part-time workers; Target, the Home "
      "Depot, and others have already done so. Meanwhile, Walmart's full "
      "time workers will see their premiums rise in 2015. Premiums for the "
      "basic plan, which 40% of its workforce is on, will increase 19% to "
      "$21.90 per pay period come Jan. 1.",
      R"(**Topic the headline should focus on**
The headline should focus on the number of Walmart part-time employees who will lose their health insurance.

**Entities Mentioned**
1. Walmart employees
2. Walmart's full-time workers
3. Target
4. The Home Depot
5. ObamaCare

**Numbers Mentioned**
1. 30,000 (employees losing health insurance)
2. 2% (of Walmart's workforce)
3. $500 million (surge in health care costs)
4. $170 million (more than estimated)
5. 30 hours (work per week threshold)
6. 2012 (year when Walmart stopped offering insurance to new hires under 30 hours)
7. 2015 (year when premiums will rise)
8. 40% (of workforce on the basic plan)
9. 19% (increase in premiums)
10. $21.90 (new premium per pay period)

**Reasoning steps**
The news content directly states that Walmart will no longer offer health insurance to 30,000 of its employees.

To convert this number into thousands (K):
- 30,000 employees = 30K employees

Therefore, the numeral in the headline should be 30.)"));

  demos.push_back(make_demo(
      "demo-round", OperationType::round, 65,
      "Walker Demotes Donor's Kid— to Puny $65K Job.",
      "(Apr 6, 2011 10:10 AM CDT) Well that was fast. Scott Walker did an "
      "about-face yesterday and demoted the son of a major campaign donor "
      "from his $81,500-per-year Commerce Department gig—to his former "
      "$64,728 job. Brian Deschane will return to his previous post as a "
      "bureau director at the Department of Regulation and Licensing, the "
      "Milwaukee Journal-Sentinel reports. The 27-year-old, who has no "
      "college degree and little experience (but does have two "
      "drunk-driving convictions!), had been in that job just two months "
      "when he was promoted to head of Wisconsin's environmental and "
      "regulatory affairs. Among those Deschane beat out for the job: a "
      "former Cabinet secretary with a doctoral degree and eight years "
      "experience overseeing oil contamination cleanup, and a professional "
      "engineer who had held the job since 2003 under the last governor. "
      "Neither was even interviewed. When Governor Walker learned the "
      "details of this agency staffing decision, he directed his "
      "administration to move in another direction, a Walker spokesman "
      "says (last week, this same rep called Deschane a natural fit for "
      "the position). But the demotion didn't satisfy some Democrats. I "
      "want to make sure he was properly hired for that job in the first "
      "place, said Assembly Minority Leader Peter Barca. Click for more on "
      "the brouhaha.",
      R"(**Topic the headline should focus on**
The headline should focus on the new, lower salary of the demoted son of a major campaign donor.

**Entities Mentioned**
1. Scott Walker
2. Brian Deschane
3. Assembly Minority Leader Peter Barca
4. Former Cabinet secretary (unnamed)
5. Professional engineer (unnamed)

**Numbers Mentioned**
1. $81,500 (initial salary at Commerce Department)
2. $64,728 (new salary after demotion)
3. 27 (age of Brian Deschane)
4. 2 (months in the initial job before promotion)
5. 2003 (year since the professional engineer held the job)
6. 8 (years of experience of the former Cabinet secretary)

**Reasoning steps**
The news content states that Brian Deschane was demoted from his $81,500-per-year job to his former $64,728 job.

To convert this new salary into thousands (K):
$64,728 ≈ $65,000

Therefore, the numeral in the headline should be 65.)"));

  return demos;
}

}  // namespace

const std::vector<DemoExample>& builtin_demos() {
  static const std::vector<DemoExample> demos = build_demos();
  return demos;
}

void write_demo_dir(const std::filesystem::path& dir,
                    const std::vector<DemoExample>& demos) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < demos.size(); ++i) {
    const DemoExample& d = demos[i];
    if (!d.sample.operation || !d.sample.correct_numeral) {
      throw ValidationError("demo " + d.sample.id + " is missing annotations");
    }
    ordered_json j;
    j["id"] = d.sample.id;
    j["article"] = d.sample.article;
    j["headline"] = d.sample.headline;
    j["correct_numeral"] = d.sample.correct_numeral->units();
    j["operation"] = std::string(to_string(*d.sample.operation));
    j["rationale"] = d.rationale_text;
    char name[32];
    std::snprintf(name, sizeof(name), "%02zu_%s.json", i + 1,
                  std::string(to_string(*d.sample.operation)).c_str());
    std::string lowered(name);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    std::ofstream out(dir / lowered);
    if (!out) {
      throw Error("cannot write demo file in " + dir.string());
    }
    out << j.dump(2) << "\n";
  }
}

std::vector<DemoExample> load_demo_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw CorpusError("demo fixture directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        entry.path().filename() != "manifest.json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<DemoExample> demos;
  for (const auto& file : files) {
    std::ifstream in(file);
    ordered_json j;
    try {
      j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw CorpusError("demo file " + file.string() + ": invalid JSON: " +
                        e.what());
    }
    DemoExample d;
    try {
      d.sample.id = j.at("id").get<std::string>();
      d.sample.article = j.at("article").get<std::string>();
      d.sample.headline = j.at("headline").get<std::string>();
      auto op = parse_operation(j.at("operation").get<std::string>());
      if (!op) {
        throw CorpusError("demo file " + file.string() +
                          ": unknown operation label");
      }
      d.sample.operation = *op;
      auto value = Decimal::parse(j.at("correct_numeral").dump());
      if (!value) {
        throw CorpusError("demo file " + file.string() +
                          ": correct_numeral is not a plain number");
      }
      d.sample.correct_numeral = *value;
      d.rationale_text = j.at("rationale").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw CorpusError("demo file " + file.string() + ": " + e.what());
    }
    demos.push_back(std::move(d));
  }
  return demos;
}

void check_demos(const std::vector<DemoExample>& demos) {
  std::vector<std::string> problems;
  for (const auto& d : demos) {
    const std::string& id = d.sample.id;
    if (!d.sample.operation) {
      problems.push_back(id + ": missing operation annotation");
    }
    if (!d.sample.correct_numeral) {
      problems.push_back(id + ": missing correct_numeral annotation");
      continue;
    }
    try {
      TenRationale r = parse_rationale(d.rationale_text);
      if (r.final_numeral != *d.sample.correct_numeral) {
        problems.push_back(id + ": rationale concludes " +
                           r.final_numeral.to_string() + " but annotation is " +
                           d.sample.correct_numeral->to_string());
      }
    } catch (const ParseError& e) {
      problems.push_back(id + ": rationale does not parse: " + e.what());
    }
    try {
      mask_numeral(d.sample.headline);
    } catch (const ValidationError& e) {
      problems.push_back(id + ": headline does not mask: " + e.what());
    }
  }
  if (demos.empty()) {
    problems.push_back("no demos found");
  }
  if (!problems.empty()) {
    std::string msg = "demo validation failed:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ValidationError(msg);
  }
}

std::vector<Decimal> demo_numeral_pool(const DemoExample& demo) {
  std::vector<Decimal> pool;
  auto add = [&pool](const Numeral& n) {
    auto scaled = n.value.times(Decimal(multiplier_factor(n.multiplier)));
    if (!scaled) return;
    if (std::find(pool.begin(), pool.end(), *scaled) == pool.end()) {
      pool.push_back(*scaled);
    }
  };
  for (const auto& n : extract_numerals(demo.sample.article)) add(n);
  try {
    TenRationale r = parse_rationale(demo.rationale_text);
    for (const auto& m : r.numbers) {
      for (const auto& n : extract_numerals(m.raw)) add(n);
    }
  } catch (const ParseError&) {
    // fall back to article numerals only
  }
  return pool;
}

}  // namespace ten
