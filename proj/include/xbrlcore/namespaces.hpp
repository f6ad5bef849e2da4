#pragma once

#include <string_view>

// Namespace constants of the XBRL 2.1 family and the W3C standards it builds
// on. Every namespace comparison in the library goes through this table.
namespace xbrlcore::ns {

inline constexpr std::string_view kInstance = "http://www.xbrl.org/2003/instance";
inline constexpr std::string_view kLinkbase = "http://www.xbrl.org/2003/linkbase";
inline constexpr std::string_view kXLink = "http://www.w3.org/1999/xlink";
inline constexpr std::string_view kIso4217 = "http://www.xbrl.org/2003/iso4217";
inline constexpr std::string_view kXmlSchema = "http://www.w3.org/2001/XMLSchema";
inline constexpr std::string_view kXml = "http://www.w3.org/XML/1998/namespace";
inline constexpr std::string_view kXmlns = "http://www.w3.org/2000/xmlns/";

inline constexpr std::string_view kLinkbaseRefArcrole = "http://www.w3.org/1999/xlink/properties/linkbase";
inline constexpr std::string_view kFactFootnoteArcrole = "http://www.xbrl.org/2003/arcrole/fact-footnote";
inline constexpr std::string_view kFootnoteLinkRole = "http://www.xbrl.org/2003/role/link";
inline constexpr std::string_view kFootnoteRole = "http://www.xbrl.org/2003/role/footnote";

}  // namespace xbrlcore::ns
