#pragma once

// Discoverable taxonomy set: the closure of taxonomy documents reachable from
// an instance, and the concept registry built from its schemas.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "xbrlcore/concept.hpp"
#include "xbrlcore/finding.hpp"
#include "xbrlcore/model.hpp"

namespace xbrlcore {

struct FetchResult {
  std::optional<std::string> bytes;
  std::string error;  // set when bytes is empty

  static FetchResult ok(std::string b) { return {std::move(b), {}}; }
  static FetchResult failure(std::string why) { return {std::nullopt, std::move(why)}; }
};

class Resolver {
 public:
  virtual ~Resolver() = default;
  virtual FetchResult fetch(const std::string& uri) = 0;
};

/// Serves URIs from files under a root directory, mapped by
/// uri_to_relative_path.
class FileSystemResolver : public Resolver {
 public:
  explicit FileSystemResolver(std::filesystem::path root);
  FetchResult fetch(const std::string& uri) override;

 private:
  std::filesystem::path root_;
};

/// Fixed in-memory documents keyed by exact URI.
class MemoryResolver : public Resolver {
 public:
  void add(std::string uri, std::string bytes) { docs_[std::move(uri)] = std::move(bytes); }
  FetchResult fetch(const std::string& uri) override;
  std::size_t fetch_count(const std::string& uri) const;

 private:
  std::map<std::string, std::string> docs_;
  std::map<std::string, std::size_t> fetches_;
};

/// Tries each resolver in turn and returns the first success; on total
/// failure the reasons are joined.
class FallbackResolver : public Resolver {
 public:
  void add(Resolver& r) { chain_.push_back(&r); }
  FetchResult fetch(const std::string& uri) override;

 private:
  std::vector<Resolver*> chain_;
};

/// Memoizes another resolver so repeated fetches of one URI within a run see
/// the same answer.
class CachingResolver : public Resolver {
 public:
  explicit CachingResolver(Resolver& inner) : inner_(inner) {}
  FetchResult fetch(const std::string& uri) override;

 private:
  Resolver& inner_;
  std::mutex mutex_;
  std::map<std::string, FetchResult> cache_;
};

enum class DocumentKind { TaxonomySchema, Linkbase };

std::string_view to_string(DocumentKind k);

struct DtsDocument {
  std::string uri;
  DocumentKind kind = DocumentKind::TaxonomySchema;
  std::vector<std::string> outgoing_refs;  // hrefs as written in the document
  std::size_t depth = 0;                   // 1 for documents the instance references

  friend bool operator==(const DtsDocument&, const DtsDocument&) = default;
};

struct UnresolvedRef {
  std::string uri;  // resolved, fragment removed
  std::string href;
  std::string referenced_from;
  std::string reason;

  friend bool operator==(const UnresolvedRef&, const UnresolvedRef&) = default;
};

struct DtsLimits {
  std::size_t max_documents = 256;
  std::size_t max_depth = 16;
};

struct Dts {
  std::map<std::string, DtsDocument> documents;
  std::vector<std::string> load_order;
  ConceptRegistry concepts;
  std::vector<UnresolvedRef> unresolved;
  std::vector<Finding> findings;  // DTS-002, DTS-003, DTS-004
  bool limit_exceeded = false;

  friend bool operator==(const Dts&, const Dts&) = default;
};

/// Breadth-first discovery from the instance's schemaRef and linkbaseRef
/// hrefs (resolved against `base_uri`), following schema import, include and
/// redefine locations, linkbaseRefs inside schemas, and linkbase locator,
/// roleRef and arcroleRef hrefs. Each document URI is fetched at most once.
/// Hrefs beyond `limits` are listed as unresolved and set limit_exceeded.
Dts discover(const Instance& instance, Resolver& resolver, const std::string& base_uri, const DtsLimits& limits = {});

struct SchemaContents {
  std::vector<Concept> concepts;
  std::vector<std::string> outgoing_refs;
  std::vector<Finding> findings;
};

enum class DtsErrorCode { NotASchema };

class DtsError : public std::runtime_error {
 public:
  DtsError(DtsErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  DtsErrorCode code() const noexcept { return code_; }

 private:
  DtsErrorCode code_;
};

/// Extracts top-level element declarations and outgoing references from a
/// taxonomy schema. Throws DtsError(NotASchema) when the root is not
/// xs:schema, XmlError when the bytes are not XML.
SchemaContents load_taxonomy_schema(std::string_view bytes, const std::string& uri);
SchemaContents load_taxonomy_schema(const XmlTree& tree, const std::string& uri);

/// Outgoing hrefs of a linkbase document.
std::vector<std::string> linkbase_refs(const XmlTree& tree);

inline const Concept* lookup(const ConceptRegistry& registry, const QName& qname) { return registry.lookup(qname); }

}  // namespace xbrlcore
