#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "xbrlcore/cli.hpp"
#include "xbrlcore/namespaces.hpp"
#ifdef XBRLCORE_HAVE_HTTP
#include "xbrlcore/http_resolver.hpp"
#endif

namespace xbrlcore::cli {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitFailure = 2;

constexpr const char* kFooter = R"(Fact table columns:
  concept     {namespace-uri}local-name
  period      I:<instant> | D:<start>/<end> | F (forever)
  unit        measures joined by '*', a divide as <numerator>/<denominator>
  tuple_path  enclosing tuple concepts, outermost first, joined by '/'
Exit codes: 0 ok, 1 validation errors, 2 usage/input/parse failure.
Every option can also be set through an XBRLCORE_* environment variable.)";

struct Config {
  std::string command;
  std::vector<std::string> inputs;
  std::string taxonomy_root;
  bool allow_network = false;
  std::string format;
  std::string mode = "strict";
  std::size_t max_depth = DtsLimits{}.max_depth;
  std::size_t max_documents = DtsLimits{}.max_documents;
  std::size_t max_tuple_depth = ParseOptions{}.max_tuple_depth;
};

// Ends the command with exit code 2 and a diagnostic.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadedDocument {
  std::string path;
  std::string bytes;
  EmbeddedScan scan;
  std::optional<Dts> dts;
};

class Runner {
 public:
  Runner(const Config& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  int run() {
    if (cfg_.command == "rules") {
      out_ << (format("text") == "json" ? render_rules_json() : render_rules_text());
      return kExitOk;
    }
    if (cfg_.command == "facts") return facts();
    if (cfg_.command == "validate") return validate_all();
    if (cfg_.command == "dts") return dts();
    return parse();
  }

 private:
  std::string format(std::string_view fallback) const {
    return cfg_.format.empty() ? std::string(fallback) : cfg_.format;
  }

  ParseOptions parse_options() const {
    ParseOptions o;
    o.mode = cfg_.mode == "lenient" ? ParseMode::Lenient : ParseMode::Strict;
    o.max_tuple_depth = cfg_.max_tuple_depth;
    return o;
  }

  bool discovery_configured() const { return !cfg_.taxonomy_root.empty() || cfg_.allow_network; }

  // Document URI the instance is discovered from: its path below the taxonomy
  // root when it lives there, otherwise just its file name, under file:///.
  std::string base_uri(const std::string& path) const {
    const fs::path input(path);
    if (!cfg_.taxonomy_root.empty()) {
      std::error_code ec;
      const auto rel = fs::relative(fs::weakly_canonical(input, ec), fs::weakly_canonical(cfg_.taxonomy_root, ec), ec);
      if (!ec && !rel.empty() && *rel.begin() != "..") return "file:///" + rel.generic_string();
    }
    return "file:///" + input.filename().generic_string();
  }

  Dts discover_for(const std::string& path, const EmbeddedScan& scan) {
    FallbackResolver chain;
    std::optional<FileSystemResolver> files;
    if (!cfg_.taxonomy_root.empty()) {
      if (!fs::is_directory(cfg_.taxonomy_root)) throw Failure("taxonomy root is not a directory: " + cfg_.taxonomy_root);
      files.emplace(cfg_.taxonomy_root);
      chain.add(*files);
    }
#ifdef XBRLCORE_HAVE_HTTP
    std::optional<HttpResolver> http;
    if (cfg_.allow_network) {
      http.emplace();
      chain.add(*http);
    }
#else
    if (cfg_.allow_network) throw Failure("this build has no network support");
#endif
    // All instances of one document share a taxonomy set.
    Instance refs;
    for (const auto& found : scan.instances) {
      const auto& inst = found.outcome->instance;
      refs.schema_refs.insert(refs.schema_refs.end(), inst.schema_refs.begin(), inst.schema_refs.end());
      refs.linkbase_refs.insert(refs.linkbase_refs.end(), inst.linkbase_refs.begin(), inst.linkbase_refs.end());
    }
    return discover(refs, chain, base_uri(path), DtsLimits{cfg_.max_documents, cfg_.max_depth});
  }

  static void require_parsed(const std::string& path, const EmbeddedScan& scan) {
    if (scan.instances.empty()) throw Failure(path + ": no xbrl instance element found");
    for (const auto& found : scan.instances) {
      if (found.error) throw Failure(path + ": " + found.error->what());
    }
  }

  LoadedDocument load(const std::string& path, bool want_dts) {
    LoadedDocument doc;
    doc.path = path;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure(path + ": cannot read file");
    std::ostringstream buf;
    buf << in.rdbuf();
    doc.bytes = buf.str();

    XmlTree tree;
    try {
      tree = read_document(doc.bytes);
    } catch (const XmlError& e) {
      throw Failure(path + ": " + std::string(to_string(e.code())) + ": " + e.what());
    }
    ParseOptions opts = parse_options();
    doc.scan = find_instances(tree, opts);
    require_parsed(path, doc.scan);
    if (want_dts) {
      doc.dts = discover_for(path, doc.scan);
      if (doc.dts->concepts.size() > 0) {
        opts.registry = &doc.dts->concepts;
        doc.scan = find_instances(tree, opts);
        require_parsed(path, doc.scan);
      }
    }
    return doc;
  }

  // Runs `body` for each input; a Failure on one input is reported and turns
  // the exit code into 2, the remaining inputs still run.
  template <typename Body>
  int each_input(Body body) {
    int code = kExitOk;
    for (const auto& path : cfg_.inputs) {
      try {
        code = std::max(code, body(path));
      } catch (const Failure& f) {
        err_ << "error: " << f.what() << "\n";
        code = kExitFailure;
      }
    }
    return code;
  }

  int facts() {
    std::vector<FactRow> rows;
    const int code = each_input([&](const std::string& path) {
      LoadedDocument doc = load(path, discovery_configured());
      for (const auto& found : doc.scan.instances) {
        auto more = fact_rows(found.outcome->instance);
        rows.insert(rows.end(), more.begin(), more.end());
      }
      for (const auto& f : recovered(doc.scan)) err_ << path << ":" << f.location.str() << ": " << f.code << ": " << f.message << "\n";
      return kExitOk;
    });
    if (code == kExitFailure) return code;
    const std::string fmt = format("csv");
    if (fmt == "json") {
      out_ << render_facts_json(rows);
    } else if (fmt == "text") {
      out_ << render_facts_text(rows);
    } else {
      out_ << render_facts_csv(rows);
    }
    return code;
  }

  static std::vector<Finding> recovered(const EmbeddedScan& scan) {
    std::vector<Finding> out;
    for (const auto& found : scan.instances) {
      out.insert(out.end(), found.outcome->recovered_findings.begin(), found.outcome->recovered_findings.end());
    }
    out.insert(out.end(), scan.findings.begin(), scan.findings.end());
    return out;
  }

  ValidationReport report_for(const LoadedDocument& doc) const {
    ValidationReport report;
    ValidationOptions vopts;
    vopts.max_tuple_depth = cfg_.max_tuple_depth;
    const Dts* dts = doc.dts ? &*doc.dts : nullptr;
    for (const auto& found : doc.scan.instances) {
      auto r = validate(*found.outcome, dts, vopts);
      report.findings.insert(report.findings.end(), r.findings.begin(), r.findings.end());
      report.skipped_rules = r.skipped_rules;
    }
    report.findings.insert(report.findings.end(), doc.scan.findings.begin(), doc.scan.findings.end());
    finalize_report(report);
    // Taxonomy findings repeat once per instance in a multi-instance document.
    report.findings.erase(std::unique(report.findings.begin(), report.findings.end()), report.findings.end());
    finalize_report(report);
    report.input_digest = content_digest(doc.bytes);
    return report;
  }

  int validate_all() {
    std::vector<std::string> rendered;
    auto json_docs = ojson::array();
    const std::string fmt = format("json");
    bool csv_header_done = false;
    const int code = each_input([&](const std::string& path) {
      const LoadedDocument doc = load(path, discovery_configured());
      const ValidationReport report = report_for(doc);
      if (fmt == "text") {
        if (cfg_.inputs.size() > 1) rendered.push_back("== " + path + "\n");
        rendered.push_back(render_report_text(report));
      } else if (fmt == "csv") {
        std::string csv = render_report_csv(report);
        if (csv_header_done) csv.erase(0, csv.find('\n') + 1);
        csv_header_done = true;
        rendered.push_back(std::move(csv));
      } else {
        rendered.push_back(render_report_json(report));
        json_docs.push_back(ojson::parse(rendered.back()));
      }
      return report.count(Severity::Error) > 0 ? kExitFindings : kExitOk;
    });
    if (fmt == "json" && cfg_.inputs.size() > 1) {
      out_ << json_docs.dump(2) << "\n";
    } else {
      for (const auto& r : rendered) out_ << r;
    }
    return code;
  }

  int dts() {
    auto json_docs = ojson::array();
    const std::string fmt = format("text");
    const int code = each_input([&](const std::string& path) {
      LoadedDocument doc = load(path, false);
      const Dts dts = discover_for(path, doc.scan);
      if (fmt == "json") {
        const std::string text = render_dts_json(dts);
        if (cfg_.inputs.size() > 1) {
          json_docs.push_back(ojson::parse(text));
        } else {
          out_ << text;
        }
      } else {
        if (cfg_.inputs.size() > 1) out_ << "== " << path << "\n";
        out_ << render_dts_text(dts);
      }
      return kExitOk;
    });
    if (fmt == "json" && cfg_.inputs.size() > 1) out_ << json_docs.dump(2) << "\n";
    return code;
  }

  int parse() {
    auto json_docs = ojson::array();
    const std::string fmt = format("text");
    const int code = each_input([&](const std::string& path) {
      const LoadedDocument doc = load(path, discovery_configured());
      ValidationReport notes;
      notes.findings = recovered(doc.scan);
      finalize_report(notes);
      if (fmt == "json") {
        ojson j;
        auto instances = ojson::array();
        for (const auto& found : doc.scan.instances) {
          const auto& inst = found.outcome->instance;
          auto hrefs = [](const std::vector<TaxonomyRef>& refs) {
            auto a = ojson::array();
            for (const auto& r : refs) a.push_back(r.href);
            return a;
          };
          instances.push_back({{"line", found.location.line},
                               {"column", found.location.column},
                               {"schema_refs", hrefs(inst.schema_refs)},
                               {"linkbase_refs", hrefs(inst.linkbase_refs)},
                               {"contexts", inst.contexts.size()},
                               {"units", inst.units.size()},
                               {"facts", fact_count(inst)},
                               {"items", iter_items(inst).size()},
                               {"tuples", tuple_count(inst)},
                               {"footnote_links", inst.footnote_links.size()}});
        }
        j["instances"] = std::move(instances);
        auto findings = ojson::array();
        for (const auto& f : notes.findings) {
          findings.push_back({{"code", f.code},
                              {"severity", to_string(f.severity)},
                              {"message", f.message},
                              {"line", f.location.line},
                              {"column", f.location.column},
                              {"subject", f.subject}});
        }
        j["findings"] = std::move(findings);
        if (cfg_.inputs.size() > 1) {
          json_docs.push_back(std::move(j));
        } else {
          out_ << j.dump(2) << "\n";
        }
      } else {
        if (cfg_.inputs.size() > 1) out_ << "== " << path << "\n";
        for (const auto& found : doc.scan.instances) {
          const auto& inst = found.outcome->instance;
          out_ << "instance at " << found.location.str() << ": " << inst.schema_refs.size() << " schema refs, "
               << inst.linkbase_refs.size() << " linkbase refs, " << inst.contexts.size() << " contexts, "
               << inst.units.size() << " units, " << fact_count(inst) << " facts (" << iter_items(inst).size()
               << " items, " << tuple_count(inst) << " tuples), " << inst.footnote_links.size()
               << " footnote links\n";
        }
        for (const auto& f : notes.findings) {
          out_ << f.location.str() << " " << to_string(f.severity) << " " << f.code << ": " << f.message << "\n";
        }
      }
      return kExitOk;
    });
    if (fmt == "json" && cfg_.inputs.size() > 1) out_ << json_docs.dump(2) << "\n";
    return code;
  }

  const Config& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

void add_common_options(CLI::App* sub, Config& cfg, bool with_inputs) {
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->envname("XBRLCORE_FORMAT");
  if (!with_inputs) return;
  sub->add_option("inputs", cfg.inputs, "Instance documents")->required()->check(CLI::ExistingFile);
  sub->add_option("--taxonomy-root", cfg.taxonomy_root, "Directory that taxonomy URIs are mapped under")
      ->envname("XBRLCORE_TAXONOMY_ROOT");
  sub->add_flag("--allow-network", cfg.allow_network, "Fetch http(s) taxonomy documents")
      ->envname("XBRLCORE_ALLOW_NETWORK");
  sub->add_option("--mode", cfg.mode, "Parse mode")
      ->check(CLI::IsMember({"strict", "lenient"}))
      ->envname("XBRLCORE_MODE");
  sub->add_option("--max-depth", cfg.max_depth, "Taxonomy discovery depth bound")
      ->check(CLI::PositiveNumber)
      ->envname("XBRLCORE_MAX_DEPTH");
  sub->add_option("--max-documents", cfg.max_documents, "Taxonomy discovery document bound")
      ->check(CLI::PositiveNumber)
      ->envname("XBRLCORE_MAX_DOCUMENTS");
  sub->add_option("--max-tuple-depth", cfg.max_tuple_depth, "Tuple nesting bound")
      ->check(CLI::PositiveNumber)
      ->envname("XBRLCORE_MAX_TUPLE_DEPTH");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Parse, validate, and tabulate XBRL instance documents", "xbrlcore"};
  app.footer(kFooter);
  app.require_subcommand(1, 1);
  struct Command {
    const char* name;
    const char* help;
    bool inputs;
  };
  const Command commands[] = {
      {"parse", "Parse instances and summarize their contents", true},
      {"validate", "Run the rule catalog and print a report", true},
      {"facts", "Print one row per item", true},
      {"dts", "List the discoverable taxonomy set", true},
      {"rules", "List the rule catalog", false},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common_options(sub, cfg, c.inputs);
    sub->callback([&cfg, name = std::string(c.name)] { cfg.command = name; });
  }

  std::vector<const char*> argv;
  argv.push_back("xbrlcore");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    return Runner(cfg, out, err).run();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace xbrlcore::cli
