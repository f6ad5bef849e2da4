#include <gtest/gtest.h>

#include "oracle_xml.hpp"
#include "xbrlcore/namespaces.hpp"
#include "xbrlcore/xml.hpp"

using namespace xbrlcore;

namespace {

std::string fixture(const std::string& name) { return oracle::read_file(std::string(XBRLCORE_FIXTURE_DIR) + "/" + name); }

QName xbrl_root() { return {std::string(ns::kInstance), "xbrl"}; }

}  // namespace

TEST(XmlRead, DefaultNamespaceResolves) {
  const auto tree = read_document(R"(<a xmlns="urn:x"/>)");
  EXPECT_EQ(tree.root.name, (QName{"urn:x", "a"}));
}

TEST(XmlRead, MixedContentKeepsOrder) {
  const auto tree = read_document("<a><b/>text</a>");
  ASSERT_EQ(tree.root.children.size(), 2u);
  ASSERT_NE(tree.root.children[0].element(), nullptr);
  EXPECT_EQ(tree.root.children[0].element()->name.local_name, "b");
  ASSERT_NE(tree.root.children[1].text(), nullptr);
  EXPECT_EQ(tree.root.children[1].text()->text, "text");
}

TEST(XmlRead, FixtureRootMatchesOracle) {
  const std::string bytes = fixture("mini-instance.xml");
  const auto expected = oracle::parse(bytes);
  const auto tree = read_document(bytes);
  EXPECT_EQ(tree.root.name.clark(), expected.clark());
  EXPECT_EQ(tree.root.name, xbrl_root());
}

TEST(XmlRead, PrefixedAttributesAndLocations) {
  const auto tree = read_document("<r xmlns:p=\"urn:p\">\n  <p:c p:att=\"1\" plain=\"2\"/>\n</r>");
  const auto kids = tree.root.child_elements();
  ASSERT_EQ(kids.size(), 1u);
  EXPECT_EQ(kids[0]->name, (QName{"urn:p", "c"}));
  ASSERT_NE(kids[0]->attribute(QName{"urn:p", "att"}), nullptr);
  EXPECT_EQ(*kids[0]->attribute(QName{"urn:p", "att"}), "1");
  EXPECT_EQ(*kids[0]->attribute("plain"), "2");
  EXPECT_EQ(kids[0]->location.line, 2u);
  EXPECT_EQ(kids[0]->location.column, 3u);
}

TEST(XmlRead, ResolveQNameUsesScope) {
  const auto tree = read_document(R"(<m xmlns="urn:d" xmlns:iso4217="http://www.xbrl.org/2003/iso4217">iso4217:USD</m>)");
  EXPECT_EQ(tree.root.resolve_qname("iso4217:USD"), (QName{std::string(ns::kIso4217), "USD"}));
  EXPECT_EQ(tree.root.resolve_qname("plain"), (QName{"urn:d", "plain"}));
  EXPECT_FALSE(tree.root.resolve_qname("nope:x").has_value());
  EXPECT_FALSE(tree.root.resolve_qname("a:b:c").has_value());
}

TEST(XmlRead, EntitiesAndCdataDecode) {
  const auto tree = read_document("<a>x &amp; &lt;y&gt; &#233;<![CDATA[<z>]]></a>");
  EXPECT_EQ(tree.root.text(), "x & <y> \xC3\xA9<z>");
}

TEST(XmlRead, DeterministicTrees) {
  const std::string bytes = fixture("mini-instance.xml");
  EXPECT_EQ(read_document(bytes), read_document(bytes));
}

TEST(XmlRead, WhitespaceBetweenElementsIsKeptButIgnoredByEquality) {
  const auto spaced = read_document("<a>\n  <b/>\n</a>");
  const auto tight = read_document("<a><b/></a>");
  EXPECT_EQ(spaced.root.children.size(), 3u);
  EXPECT_EQ(spaced, tight);
}

TEST(XmlErrors, MalformedThrows) {
  try {
    read_document("<a><b></a>");
    FAIL();
  } catch (const XmlError& e) {
    EXPECT_EQ(e.code(), XmlErrorCode::MalformedXml);
    EXPECT_EQ(e.detail(), XmlErrorDetail::None);
  }
}

TEST(XmlErrors, NotXmlThrows) { EXPECT_THROW(read_document(fixture("not-xml.txt")), XmlError); }

TEST(XmlErrors, EmptyInputThrows) { EXPECT_THROW(read_document(""), XmlError); }

TEST(XmlErrors, UnboundPrefix) {
  try {
    read_document("<p:a/>");
    FAIL();
  } catch (const XmlError& e) {
    EXPECT_EQ(e.code(), XmlErrorCode::UnboundPrefix);
  }
}

TEST(XmlErrors, DtdRejectedWithSubCode) {
  try {
    read_document(fixture("bad-dtd.xml"));
    FAIL();
  } catch (const XmlError& e) {
    EXPECT_EQ(e.code(), XmlErrorCode::MalformedXml);
    EXPECT_NE(e.detail(), XmlErrorDetail::None);
  }
  try {
    read_document("<!DOCTYPE a><a/>");
    FAIL();
  } catch (const XmlError& e) {
    EXPECT_EQ(e.detail(), XmlErrorDetail::DtdForbidden);
  }
}

TEST(XmlErrors, UnknownEncoding) {
  try {
    read_document("<?xml version=\"1.0\" encoding=\"x-made-up\"?><a/>");
    FAIL();
  } catch (const XmlError& e) {
    EXPECT_EQ(e.code(), XmlErrorCode::UnsupportedEncoding);
  }
}

TEST(FindElements, ZeroMatches) {
  const auto tree = read_document("<a><b/></a>");
  EXPECT_TRUE(find_elements(tree, QName{"urn:none", "x"}).empty());
}

TEST(FindElements, TwoSiblingRootsOuterFirst) {
  const auto tree = read_document(
      R"(<w xmlns:x="http://www.xbrl.org/2003/instance"><x:xbrl id="1"/><x:xbrl id="2"/></w>)");
  const auto found = find_elements(tree, xbrl_root());
  ASSERT_EQ(found.size(), 2u);
  EXPECT_EQ(*found[0]->attribute("id"), "1");
  EXPECT_EQ(*found[1]->attribute("id"), "2");
}

TEST(FindElements, EmbeddedFixtureMatchesManualCount) {
  const std::string bytes = fixture("mini-embedded.xml");
  const auto tree = read_document(bytes);
  const auto found = find_elements(tree, xbrl_root());
  // the oracle counts the same elements
  std::vector<int> lines;
  oracle::walk(oracle::parse(bytes), [&](const oracle::Element& e, int) {
    if (e.uri == oracle::kInstanceNs && e.local == "xbrl") lines.push_back(e.line);
  });
  ASSERT_EQ(found.size(), 3u);
  ASSERT_EQ(lines.size(), 3u);
  for (std::size_t i = 0; i < found.size(); ++i) {
    EXPECT_EQ(found[i]->name, xbrl_root());
    EXPECT_EQ(static_cast<int>(found[i]->location.line), lines[i]);
    if (i > 0) EXPECT_LT(found[i - 1]->location, found[i]->location);
  }
}

TEST(XmlWriterTest, RoundTripsArbitraryTree) {
  const std::string src =
      R"(<r xmlns="urn:d" xmlns:q="urn:q"><q:a q:k="v&amp;&quot;" k="2">t &lt; u</q:a><b xmlns=""/>)"
      R"(<c>iso:X</c></r>)";
  const auto tree = read_document(src);
  std::string out;
  {
    XmlWriter w(out);
    w.element(tree.root);
  }
  EXPECT_EQ(read_document(out), tree);
}

TEST(XmlWriterTest, RedeclaresBindingsForQNameText) {
  const auto tree = read_document(R"(<r xmlns:iso4217="http://www.xbrl.org/2003/iso4217"><m>iso4217:USD</m></r>)");
  const XmlElement& m = *tree.root.child_elements()[0];
  std::string out;
  {
    XmlWriter w(out);
    w.element(m);
  }
  const auto back = read_document(out);
  EXPECT_EQ(back.root.resolve_qname(back.root.text()), (QName{std::string(ns::kIso4217), "USD"}));
}

TEST(XmlEscape, SpecialCharacters) {
  EXPECT_EQ(escape_text("a<b&c>"), "a&lt;b&amp;c&gt;");
  EXPECT_EQ(escape_attribute("\"x\"\n"), "&quot;x&quot;&#10;");
}

TEST(XmlWhitespace, Trim) {
  EXPECT_EQ(trim_xml_whitespace(" \t\r\nabc \n"), "abc");
  EXPECT_EQ(trim_xml_whitespace("   "), "");
}
