#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <random>
#include <regex>
#include <set>

#include "generators.hpp"
#include "oracle_xml.hpp"
#include "xbrlcore/cli.hpp"
#include "xbrlcore/namespaces.hpp"
#include "xbrlcore/validation.hpp"

using namespace xbrlcore;

namespace {

const std::string kDir = XBRLCORE_FIXTURE_DIR;

std::string fixture(const std::string& name) { return oracle::read_file(kDir + "/" + name); }

ParseOutcome load(const std::string& name, ParseMode mode = ParseMode::Strict, const ConceptRegistry* reg = nullptr) {
  ParseOptions o;
  o.mode = mode;
  o.registry = reg;
  return parse_instance(read_document(fixture(name)), o);
}

Dts taxonomy_for(const Instance& inst, const std::string& name) {
  FileSystemResolver r(kDir);
  return discover(inst, r, "file:///" + name);
}

std::multiset<std::string> codes(const ValidationReport& r) {
  std::multiset<std::string> out;
  for (const auto& f : r.findings) out.insert(f.code);
  return out;
}

Item numeric_item(const std::string& value, std::optional<std::string> unit) {
  Item i;
  i.concept_name = {"urn:t", "X"};
  i.context_ref = "c";
  i.value = value;
  i.unit_ref = std::move(unit);
  return i;
}

}  // namespace

TEST(Catalog, CodesUniqueAndFindable) {
  std::set<std::string_view> seen;
  for (const auto& r : rule_catalog()) {
    EXPECT_TRUE(seen.insert(r.code).second) << r.code;
    EXPECT_EQ(find_rule(r.code), &r);
  }
  EXPECT_EQ(find_rule("NOPE-1"), nullptr);
}

TEST(Catalog, MatchesRulesDoc) {
  const std::string doc = oracle::read_file(std::string(XBRLCORE_DOCS_DIR) + "/rules.md");
  // table rows: | CODE | severity | requires taxonomy | description |
  const std::regex row(R"(^\|\s*`([A-Z]+-[A-Z0-9]+)`\s*\|\s*(\w+)\s*\|\s*(yes|no)\s*\|)");
  std::vector<std::tuple<std::string, std::string, bool>> documented;
  std::istringstream in(doc);
  for (std::string line; std::getline(in, line);) {
    std::smatch m;
    if (std::regex_search(line, m, row)) documented.emplace_back(m[1], m[2], m[3] == "yes");
  }
  ASSERT_EQ(documented.size(), rule_catalog().size());
  for (std::size_t i = 0; i < documented.size(); ++i) {
    const auto& r = rule_catalog()[i];
    EXPECT_EQ(std::get<0>(documented[i]), r.code);
    EXPECT_EQ(std::get<1>(documented[i]), to_string(r.severity));
    EXPECT_EQ(std::get<2>(documented[i]), r.requires_dts);
  }
}

TEST(Validate, BadCtxRefOneError) {
  const auto report = validate(load("bad-ctxref.xml"));
  EXPECT_EQ(codes(report), (std::multiset<std::string>{"CTX-001"}));
  EXPECT_EQ(report.count(Severity::Error), 1u);
  EXPECT_EQ(report.findings[0].subject, "f-orphan");
}

TEST(Validate, MiniInstanceWithTaxonomyIsClean) {
  const auto first = load("mini-instance.xml");
  const Dts dts = taxonomy_for(first.instance, "mini-instance.xml");
  const auto out = load("mini-instance.xml", ParseMode::Strict, &dts.concepts);
  const auto report = validate(out, &dts);
  EXPECT_TRUE(report.findings.empty());
  EXPECT_TRUE(report.skipped_rules.empty());
}

TEST(Validate, MonetaryUnit) {
  const auto out = load("bad-monetary-unit.xml");
  const Dts dts = taxonomy_for(out.instance, "bad-monetary-unit.xml");
  const auto with = validate(out, &dts);
  EXPECT_EQ(codes(with), (std::multiset<std::string>{"UNT-002"}));
  EXPECT_EQ(with.findings[0].severity, Severity::Error);
  const auto without = validate(out);
  EXPECT_EQ(codes(without).count("UNT-002"), 0u);
  EXPECT_NE(std::find(without.skipped_rules.begin(), without.skipped_rules.end(), "UNT-002"),
            without.skipped_rules.end());
}

TEST(Validate, DivideWithMonetaryNumeratorPasses) {
  const auto out = load("mini-instance.xml");
  const Dts dts = taxonomy_for(out.instance, "mini-instance.xml");
  Instance inst = out.instance;
  Unit per_share;
  per_share.id = "u-usd";
  per_share.body = Divide{{QName{std::string(ns::kIso4217), "USD"}}, {QName{std::string(ns::kInstance), "shares"}}};
  inst.units["u-usd"] = per_share;
  EXPECT_EQ(codes(validate(inst, &dts)).count("UNT-002"), 0u);
}

TEST(Validate, UnknownUnitAndConcept) {
  Instance inst = load("mini-instance.xml").instance;
  Item stray = numeric_item("5", "u-nowhere");
  stray.context_ref = "c-2008i";
  inst.facts.push_back(Fact{stray});
  const Dts dts = taxonomy_for(inst, "mini-instance.xml");
  const auto c = codes(validate(inst, &dts));
  EXPECT_EQ(c.count("UNT-001"), 1u);
  EXPECT_EQ(c.count("DTS-001"), 1u);
}

TEST(Validate, NumericWithoutUnit) {
  Instance inst = load("mini-instance.xml").instance;
  Item assets;
  assets.concept_name = {"http://example.com/mini-taxonomy", "Assets"};
  assets.context_ref = "c-2008i";
  assets.value = "10";
  inst.facts.push_back(Fact{assets});
  const Dts dts = taxonomy_for(inst, "mini-instance.xml");
  EXPECT_EQ(codes(validate(inst, &dts)).count("NUM-001"), 1u);
  EXPECT_EQ(codes(validate(inst)).count("NUM-001"), 0u);
}

TEST(Validate, TupleRules) {
  Instance inst;
  Context c;
  c.id = "c";
  c.entity = {"urn:s", "E", std::nullopt};
  c.period = Forever{};
  inst.contexts.emplace("c", c);
  Fact leaf{numeric_item("x", std::nullopt)};
  for (int i = 0; i < 4; ++i) {
    Tuple t;
    t.concept_name = {"urn:t", "T" + std::to_string(i)};
    t.children.push_back(leaf);
    if (i == 0) t.stray_context_ref = "c";
    leaf = Fact{t};
  }
  inst.facts.push_back(leaf);
  ValidationOptions opts;
  opts.max_tuple_depth = 2;
  const auto c2 = codes(validate(inst, nullptr, opts));
  EXPECT_EQ(c2.count("T-001"), 1u);
  EXPECT_EQ(c2.count("T-DEPTH"), 2u);
  EXPECT_EQ(codes(validate(inst)).count("T-DEPTH"), 0u);
}

TEST(Validate, ProgrammaticPeriodAndScenarioChecks) {
  Instance inst;
  Context c;
  c.id = "c";
  c.entity = {"urn:s", "E", std::nullopt};
  DateOrDateTime bad;
  bad.lexical = "2008-13-01";
  c.period = Duration{*parse_iso8601("2009-01-01"), *parse_iso8601("2008-01-01")};
  XmlElement empty;
  empty.name = {std::string(ns::kInstance), "scenario"};
  c.scenario = empty;
  inst.contexts.emplace("c", c);
  Context d = c;
  d.id = "d";
  d.scenario.reset();
  d.period = Instant{bad};
  inst.contexts.emplace("d", d);
  const auto got = codes(validate(inst));
  EXPECT_EQ(got.count("PER-002"), 1u);
  EXPECT_EQ(got.count("SCN-001"), 1u);
  EXPECT_EQ(got.count("PER-001"), 1u);
}

TEST(Validate, MixedZonesWarn) {
  const auto report = validate(load("bad-period.xml", ParseMode::Lenient));
  const auto c = codes(report);
  EXPECT_EQ(c.count("PER-003"), 1u);
  EXPECT_EQ(c.count("PER-001"), 1u);
  EXPECT_EQ(c.count("PER-002"), 1u);
  for (const auto& f : report.findings) {
    if (f.code == "PER-003") EXPECT_EQ(f.severity, Severity::Warning);
  }
}

TEST(Validate, FootnoteEndpoints) {
  const auto report = validate(load("bad-footnote.xml", ParseMode::Lenient));
  EXPECT_EQ(codes(report).count("FTN-001"), 2u);
}

TEST(Validate, OrderedByLocationThenCode) {
  const auto report = validate(load("bad-period.xml", ParseMode::Lenient));
  for (std::size_t i = 1; i < report.findings.size(); ++i) {
    const auto& a = report.findings[i - 1];
    const auto& b = report.findings[i];
    EXPECT_TRUE(a.location < b.location || (a.location == b.location && a.code <= b.code));
  }
}

TEST(Validate, Deterministic) {
  const auto out = load("bad-period.xml", ParseMode::Lenient);
  EXPECT_EQ(cli::render_report_json(validate(out)), cli::render_report_json(validate(out)));
}

TEST(Validate, DtsOnlyAddsRequiresDtsFindings) {
  std::mt19937 rng(7);
  for (int n = 0; n < 30; ++n) {
    Instance inst = gen::random_instance(rng);
    gen::corrupt_context_refs(inst, rng, 0.2);
    Dts empty_dts;
    const auto without = validate(inst);
    const auto with = validate(inst, &empty_dts);
    std::multiset<std::string> base, extended;
    for (const auto& f : without.findings) base.insert(f.code + "|" + f.subject + "|" + f.message);
    for (const auto& f : with.findings) {
      if (find_rule(f.code)->requires_dts) continue;
      extended.insert(f.code + "|" + f.subject + "|" + f.message);
    }
    EXPECT_EQ(base, extended);
  }
}

TEST(Validate, CleanFixtureStaysCleanAfterRoundTrip) {
  const auto out = load("mini-instance.xml");
  const Dts dts = taxonomy_for(out.instance, "mini-instance.xml");
  const auto again = parse_instance(read_document(serialize(out.instance)));
  EXPECT_TRUE(validate(again, &dts).findings.empty());
}

TEST(Numeric, Classification) {
  const auto out = load("mini-instance.xml");
  const Dts dts = taxonomy_for(out.instance, "mini-instance.xml");
  Item assets = numeric_item("text", std::nullopt);
  assets.concept_name = {"http://example.com/mini-taxonomy", "Assets"};
  EXPECT_TRUE(is_numeric_item(assets, &dts.concepts));
  EXPECT_FALSE(is_numeric_item(numeric_item("Annual report text", std::nullopt), nullptr));
  EXPECT_TRUE(is_numeric_item(numeric_item("42.0", "u"), nullptr));
  EXPECT_FALSE(is_numeric_item(numeric_item("42.0", std::nullopt), nullptr));
}

TEST(Numeric, DecimalLexemes) {
  for (const char* ok : {"0", "-1", "+2.5", ".5", "5.", "0012"}) EXPECT_TRUE(is_decimal_lexeme(ok)) << ok;
  for (const char* bad : {"", ".", "-", "1e3", "1,000", "INF", " 1"}) EXPECT_FALSE(is_decimal_lexeme(bad)) << bad;
}

TEST(Digest, KnownVector) {
  EXPECT_EQ(content_digest("abc"), "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Report, AssemblyOrderDoesNotMatter) {
  const auto base = validate(load("bad-period.xml", ParseMode::Lenient));
  ASSERT_GT(base.findings.size(), 2u);
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    ValidationReport shuffled = base;
    std::shuffle(shuffled.findings.begin(), shuffled.findings.end(), rng);
    finalize_report(shuffled);
    EXPECT_EQ(shuffled, base);
  }
}
