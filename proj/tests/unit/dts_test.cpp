#include <gtest/gtest.h>

#include <filesystem>

#include "oracle_xml.hpp"
#include "xbrlcore/dts.hpp"
#include "xbrlcore/parser.hpp"

using namespace xbrlcore;

namespace {

const std::string kDir = XBRLCORE_FIXTURE_DIR;

std::string fixture(const std::string& name) { return oracle::read_file(kDir + "/" + name); }

Instance instance_with_schema(const std::string& href) {
  Instance inst;
  inst.schema_refs.push_back({href, RefKind::Schema, {}});
  return inst;
}

std::string schema(const std::string& tns, const std::string& body) {
  return R"(<xs:schema xmlns:xs="http://www.w3.org/2001/XMLSchema" xmlns:xbrli="http://www.xbrl.org/2003/instance")"
         R"( targetNamespace=")" +
         tns + "\">" + body + "</xs:schema>";
}

std::string item_decl(const std::string& name) {
  return R"(<xs:element name=")" + name +
         R"(" type="xbrli:stringItemType" substitutionGroup="xbrli:item" xbrli:periodType="instant"/>)";
}

const QName kAssets{"http://example.com/mini-taxonomy", "Assets"};

}  // namespace

TEST(Discover, NoRefsIsEmpty) {
  MemoryResolver r;
  const Dts dts = discover(Instance{}, r, "file:///inst.xml");
  EXPECT_TRUE(dts.documents.empty());
  EXPECT_EQ(dts.concepts.size(), 0u);
  EXPECT_TRUE(dts.unresolved.empty());
}

TEST(Discover, MiniTaxonomyFromFilesystem) {
  FileSystemResolver r(kDir);
  const Dts dts = discover(instance_with_schema("mini-taxonomy.xsd"), r, "file:///mini-instance.xml");
  EXPECT_EQ(dts.documents.size(), 1u);
  EXPECT_EQ(dts.concepts.size(), 4u);
  EXPECT_TRUE(dts.unresolved.empty());
  EXPECT_TRUE(dts.findings.empty());
  const Concept* assets = dts.concepts.lookup(kAssets);
  ASSERT_NE(assets, nullptr);
  EXPECT_EQ(assets->item_kind, ItemKind::Item);
  EXPECT_EQ(assets->data_kind, DataKind::Monetary);
  EXPECT_EQ(assets->period_type, PeriodType::Instant);
  EXPECT_EQ(assets->balance, Balance::Debit);
  const Concept* seg = dts.concepts.lookup({"http://example.com/mini-taxonomy", "ReportingSegment"});
  ASSERT_NE(seg, nullptr);
  EXPECT_EQ(seg->item_kind, ItemKind::Tuple);
  EXPECT_EQ(dts.concepts.lookup({"http://example.com/mini-taxonomy", "SharesOutstanding"})->data_kind,
            DataKind::Shares);
}

TEST(Discover, ImportCycleLoadsEachOnce) {
  MemoryResolver r;
  r.add("file:///a.xsd", schema("urn:a", R"(<xs:import namespace="urn:b" schemaLocation="b.xsd"/>)" + item_decl("A")));
  r.add("file:///b.xsd", schema("urn:b", R"(<xs:import namespace="urn:a" schemaLocation="a.xsd"/>)" + item_decl("B")));
  const Dts dts = discover(instance_with_schema("a.xsd"), r, "file:///inst.xml");
  EXPECT_EQ(dts.documents.size(), 2u);
  EXPECT_EQ(r.fetch_count("file:///a.xsd"), 1u);
  EXPECT_EQ(r.fetch_count("file:///b.xsd"), 1u);
  EXPECT_EQ(dts.concepts.size(), 2u);
  EXPECT_EQ(dts.load_order, (std::vector<std::string>{"file:///a.xsd", "file:///b.xsd"}));
}

TEST(Discover, CycleFixtureWithLinkbaseAndMissing) {
  const auto inst = parse_instance(read_document(fixture("cycle-instance.xml"))).instance;
  FileSystemResolver r(kDir);
  const Dts dts = discover(inst, r, "file:///cycle-instance.xml");
  EXPECT_EQ(dts.documents.size(), 3u);
  EXPECT_EQ(dts.documents.at("file:///cycle-labels.xml").kind, DocumentKind::Linkbase);
  ASSERT_EQ(dts.unresolved.size(), 1u);
  EXPECT_EQ(dts.unresolved[0].uri, "file:///missing-taxonomy.xsd");
  EXPECT_FALSE(dts.unresolved[0].reason.empty());
}

TEST(Discover, Deterministic) {
  const auto inst = parse_instance(read_document(fixture("cycle-instance.xml"))).instance;
  FileSystemResolver r1(kDir), r2(kDir);
  EXPECT_EQ(discover(inst, r1, "file:///cycle-instance.xml"), discover(inst, r2, "file:///cycle-instance.xml"));
}

TEST(Discover, DepthAndDocumentLimits) {
  MemoryResolver r;
  for (int i = 0; i < 6; ++i) {
    const std::string next = R"(<xs:import schemaLocation="s)" + std::to_string(i + 1) + R"(.xsd"/>)";
    r.add("file:///s" + std::to_string(i) + ".xsd", schema("urn:s" + std::to_string(i), next + item_decl("X")));
  }
  DtsLimits tight{256, 3};
  const Dts shallow = discover(instance_with_schema("s0.xsd"), r, "file:///i.xml", tight);
  EXPECT_EQ(shallow.documents.size(), 3u);
  EXPECT_TRUE(shallow.limit_exceeded);
  EXPECT_FALSE(shallow.unresolved.empty());

  DtsLimits few{2, 16};
  const Dts small = discover(instance_with_schema("s0.xsd"), r, "file:///i.xml", few);
  EXPECT_EQ(small.documents.size(), 2u);
  EXPECT_TRUE(small.limit_exceeded);

  // raising limits never removes documents
  const Dts wide = discover(instance_with_schema("s0.xsd"), r, "file:///i.xml", DtsLimits{256, 16});
  for (const auto& [uri, d] : shallow.documents) EXPECT_TRUE(wide.documents.count(uri)) << uri;
  EXPECT_EQ(wide.documents.size(), 6u);
  EXPECT_EQ(wide.unresolved.size(), 1u);  // s6.xsd does not exist
}

TEST(Discover, DuplicateConceptFirstWins) {
  MemoryResolver r;
  r.add("file:///a.xsd", schema("urn:same", R"(<xs:include schemaLocation="b.xsd"/>)" + item_decl("Dup")));
  r.add("file:///b.xsd", schema("urn:same", item_decl("Dup")));
  const Dts dts = discover(instance_with_schema("a.xsd"), r, "file:///i.xml");
  EXPECT_EQ(dts.concepts.size(), 1u);
  EXPECT_EQ(dts.concepts.lookup({"urn:same", "Dup"})->source_uri, "file:///a.xsd");
  ASSERT_EQ(dts.findings.size(), 1u);
  EXPECT_EQ(dts.findings[0].code, "DTS-003");
  EXPECT_NE(dts.findings[0].message.find("file:///a.xsd"), std::string::npos);
  EXPECT_NE(dts.findings[0].message.find("file:///b.xsd"), std::string::npos);
}

TEST(Discover, UnparseableDocumentIsUnresolved) {
  MemoryResolver r;
  r.add("file:///a.xsd", "not xml at all");
  const Dts dts = discover(instance_with_schema("a.xsd"), r, "file:///i.xml");
  EXPECT_TRUE(dts.documents.empty());
  ASSERT_EQ(dts.unresolved.size(), 1u);
}

TEST(Discover, FragmentsShareOneDocument) {
  MemoryResolver r;
  r.add("file:///a.xsd", schema("urn:a", item_decl("A")));
  Instance inst = instance_with_schema("a.xsd");
  inst.schema_refs.push_back({"a.xsd#A", RefKind::Schema, {}});
  const Dts dts = discover(inst, r, "file:///i.xml");
  EXPECT_EQ(dts.documents.size(), 1u);
  EXPECT_EQ(r.fetch_count("file:///a.xsd"), 1u);
}

TEST(LoadSchema, ConceptsFromFixture) {
  const auto contents = load_taxonomy_schema(fixture("mini-taxonomy.xsd"), "file:///mini-taxonomy.xsd");
  EXPECT_EQ(contents.concepts.size(), 4u);
  EXPECT_TRUE(contents.findings.empty());
}

TEST(LoadSchema, EmptySchema) {
  const auto contents = load_taxonomy_schema(schema("urn:e", ""), "file:///e.xsd");
  EXPECT_TRUE(contents.concepts.empty());
}

TEST(LoadSchema, MissingPeriodType) {
  const auto contents = load_taxonomy_schema(
      schema("urn:p", R"(<xs:element name="P" type="xbrli:stringItemType" substitutionGroup="xbrli:item"/>)"),
      "file:///p.xsd");
  ASSERT_EQ(contents.concepts.size(), 1u);
  EXPECT_EQ(contents.concepts[0].period_type, PeriodType::Unknown);
  EXPECT_EQ(contents.concepts[0].data_kind, DataKind::NonNumeric);
  ASSERT_EQ(contents.findings.size(), 1u);
  EXPECT_EQ(contents.findings[0].code, "DTS-002");
}

TEST(LoadSchema, NoTargetNamespace) {
  const auto contents = load_taxonomy_schema(
      R"(<xs:schema xmlns:xs="http://www.w3.org/2001/XMLSchema"><xs:element name="X"/></xs:schema>)", "file:///x.xsd");
  EXPECT_TRUE(contents.concepts.empty());
  ASSERT_EQ(contents.findings.size(), 1u);
  EXPECT_EQ(contents.findings[0].code, "DTS-004");
}

TEST(LoadSchema, NotASchema) {
  try {
    load_taxonomy_schema("<notschema/>", "file:///x.xsd");
    FAIL();
  } catch (const DtsError& e) {
    EXPECT_EQ(e.code(), DtsErrorCode::NotASchema);
  }
  EXPECT_THROW(load_taxonomy_schema("<<", "file:///x.xsd"), XmlError);
}

TEST(LoadSchema, SubstitutionChain) {
  MemoryResolver r;
  r.add("file:///a.xsd",
        schema("urn:a", R"(<xs:element name="Head" abstract="true" substitutionGroup="xbrli:item")"
                        R"( type="xbrli:monetaryItemType" xbrli:periodType="instant"/>)"
                        R"(<xs:element xmlns:a="urn:a" name="Member" substitutionGroup="a:Head")"
                        R"( type="xbrli:monetaryItemType" xbrli:periodType="instant"/>)"));
  const Dts dts = discover(instance_with_schema("a.xsd"), r, "file:///i.xml");
  EXPECT_EQ(dts.concepts.lookup({"urn:a", "Member"})->item_kind, ItemKind::Item);
  EXPECT_TRUE(dts.concepts.lookup({"urn:a", "Head"})->abstract);
}

TEST(Registry, LookupAndConflict) {
  ConceptRegistry reg;
  Concept c;
  c.qname = kAssets;
  EXPECT_TRUE(reg.add(c));
  EXPECT_FALSE(reg.add(c));
  EXPECT_NE(reg.lookup(kAssets), nullptr);
  EXPECT_EQ(reg.lookup({"urn:other", "Assets"}), nullptr);
}

TEST(Registry, PrefixNeverMatters) {
  FileSystemResolver r(kDir);
  const Dts dts = discover(instance_with_schema("mini-taxonomy.xsd"), r, "file:///mini-instance.xml");
  // the fixture instance binds a different prefix than the schema would suggest
  const auto tree = read_document(
      R"(<other:Assets xmlns:other="http://example.com/mini-taxonomy"/>)");
  EXPECT_NE(dts.concepts.lookup(tree.root.name), nullptr);
}

TEST(Resolvers, FileSystemMissingAndEscape) {
  FileSystemResolver r(kDir);
  EXPECT_TRUE(r.fetch("file:///mini-taxonomy.xsd").bytes);
  EXPECT_FALSE(r.fetch("file:///nope.xsd").bytes);
  EXPECT_FALSE(r.fetch("../etc/passwd").bytes);
  EXPECT_FALSE(r.fetch("file:///nope.xsd").error.empty());
}

TEST(Resolvers, FallbackAndCaching) {
  MemoryResolver a, b;
  b.add("u", "bytes");
  FallbackResolver chain;
  chain.add(a);
  chain.add(b);
  EXPECT_EQ(chain.fetch("u").bytes, std::optional<std::string>("bytes"));
  EXPECT_FALSE(chain.fetch("v").bytes);
  CachingResolver cache(b);
  cache.fetch("u");
  cache.fetch("u");
  EXPECT_EQ(b.fetch_count("u"), 2u);  // one from the chain above, one through the cache
}

TEST(LinkbaseRefs, Locators) {
  const auto refs = linkbase_refs(read_document(fixture("cycle-labels.xml")));
  EXPECT_FALSE(refs.empty());
  for (const auto& h : refs) EXPECT_NE(h.find(".xsd"), std::string::npos) << h;
}
