#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "xbrlcore/cli.hpp"
#include "xbrlcore/parser.hpp"
#include "xbrlcore/validation.hpp"

namespace py = pybind11;
using namespace xbrlcore;

namespace {

struct PyInstance {
  ParseOutcome outcome;
};

struct PyDts {
  Dts dts;
};

py::object json_loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

py::dict finding_dict(const Finding& f) {
  py::dict d;
  d["code"] = f.code;
  d["severity"] = std::string(to_string(f.severity));
  d["message"] = f.message;
  d["line"] = f.location.line;
  d["column"] = f.location.column;
  d["subject"] = f.subject;
  return d;
}

py::list finding_list(const std::vector<Finding>& findings) {
  py::list out;
  for (const auto& f : findings) out.append(finding_dict(f));
  return out;
}

ParseOptions options(const std::string& mode, std::size_t max_tuple_depth, const PyDts* dts) {
  ParseOptions o;
  if (mode == "lenient") {
    o.mode = ParseMode::Lenient;
  } else if (mode != "strict") {
    throw py::value_error("mode must be 'strict' or 'lenient'");
  }
  o.max_tuple_depth = max_tuple_depth;
  if (dts) o.registry = &dts->dts.concepts;
  return o;
}

std::vector<std::string> hrefs(const std::vector<TaxonomyRef>& refs) {
  std::vector<std::string> out;
  for (const auto& r : refs) out.push_back(r.href);
  return out;
}

}  // namespace

PYBIND11_MODULE(_xbrlcore, m) {
  m.doc() = "XBRL instance parsing, validation and taxonomy discovery";

  py::register_exception<XmlError>(m, "XmlError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DtsError>(m, "DtsError", PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_LookupError);

  py::class_<PyInstance>(m, "Instance")
      .def_property_readonly("fact_count", [](const PyInstance& p) { return fact_count(p.outcome.instance); })
      .def_property_readonly("tuple_count", [](const PyInstance& p) { return tuple_count(p.outcome.instance); })
      .def_property_readonly("item_count", [](const PyInstance& p) { return iter_items(p.outcome.instance).size(); })
      .def_property_readonly("context_ids",
                             [](const PyInstance& p) {
                               std::vector<std::string> ids;
                               for (const auto& [id, c] : p.outcome.instance.contexts) ids.push_back(id);
                               return ids;
                             })
      .def_property_readonly("unit_ids",
                             [](const PyInstance& p) {
                               std::vector<std::string> ids;
                               for (const auto& [id, u] : p.outcome.instance.units) ids.push_back(id);
                               return ids;
                             })
      .def_property_readonly("schema_refs", [](const PyInstance& p) { return hrefs(p.outcome.instance.schema_refs); })
      .def_property_readonly("linkbase_refs",
                             [](const PyInstance& p) { return hrefs(p.outcome.instance.linkbase_refs); })
      .def_property_readonly("recovered_findings",
                             [](const PyInstance& p) { return finding_list(p.outcome.recovered_findings); })
      .def("facts",
           [](const PyInstance& p) {
             py::list rows;
             for (const auto& r : cli::fact_rows(p.outcome.instance)) {
               py::dict d;
               d["concept"] = r.concept_name;
               d["value"] = r.value;
               d["context_id"] = r.context_id;
               d["entity"] = r.entity;
               d["period"] = r.period;
               d["unit"] = r.unit;
               d["tuple_path"] = r.tuple_path;
               rows.append(d);
             }
             return rows;
           },
           "One dict per item, document order.")
      .def("serialize", [](const PyInstance& p) { return serialize(p.outcome.instance); })
      .def("__eq__", [](const PyInstance& a, const PyInstance& b) { return a.outcome.instance == b.outcome.instance; })
      .def("__repr__", [](const PyInstance& p) {
        return "<Instance facts=" + std::to_string(fact_count(p.outcome.instance)) +
               " contexts=" + std::to_string(p.outcome.instance.contexts.size()) +
               " units=" + std::to_string(p.outcome.instance.units.size()) + ">";
      });

  py::class_<PyDts>(m, "Dts")
      .def_property_readonly("document_count", [](const PyDts& d) { return d.dts.documents.size(); })
      .def_property_readonly("concept_count", [](const PyDts& d) { return d.dts.concepts.size(); })
      .def_property_readonly("limit_exceeded", [](const PyDts& d) { return d.dts.limit_exceeded; })
      .def("to_dict", [](const PyDts& d) { return json_loads(cli::render_dts_json(d.dts)); })
      .def("__repr__", [](const PyDts& d) {
        return "<Dts documents=" + std::to_string(d.dts.documents.size()) +
               " concepts=" + std::to_string(d.dts.concepts.size()) + ">";
      });

  m.def(
      "parse",
      [](const std::string& data, const std::string& mode, std::size_t max_tuple_depth, const PyDts* dts) {
        const auto tree = read_document(data);
        return PyInstance{parse_instance(tree, options(mode, max_tuple_depth, dts))};
      },
      py::arg("data"), py::arg("mode") = "strict", py::arg("max_tuple_depth") = 64, py::arg("dts") = nullptr,
      "Parse a document whose root is xbrl.");

  m.def(
      "find_instances",
      [](const std::string& data, const std::string& mode) {
        const auto scan = find_instances(read_document(data), options(mode, 64, nullptr));
        py::list found;
        for (const auto& e : scan.instances) {
          if (e.error) throw *e.error;
          found.append(PyInstance{*e.outcome});
        }
        return py::make_tuple(found, finding_list(scan.findings));
      },
      py::arg("data"), py::arg("mode") = "strict",
      "Outermost xbrl elements of a document, plus EMB-001 findings for nested ones.");

  m.def(
      "discover",
      [](const PyInstance& inst, const std::string& taxonomy_root, const std::string& base_uri,
         std::size_t max_documents, std::size_t max_depth) {
        FileSystemResolver resolver(taxonomy_root);
        return PyDts{discover(inst.outcome.instance, resolver, base_uri, DtsLimits{max_documents, max_depth})};
      },
      py::arg("instance"), py::arg("taxonomy_root"), py::arg("base_uri") = "file:///instance.xml",
      py::arg("max_documents") = 256, py::arg("max_depth") = 16,
      "Discover the taxonomy set under a local directory.");

  m.def(
      "validate",
      [](const PyInstance& inst, const PyDts* dts, std::size_t max_tuple_depth, const std::optional<std::string>& source) {
        ValidationOptions o;
        o.max_tuple_depth = max_tuple_depth;
        ValidationReport report = validate(inst.outcome, dts ? &dts->dts : nullptr, o);
        if (source) report.input_digest = content_digest(*source);
        return json_loads(cli::render_report_json(report));
      },
      py::arg("instance"), py::arg("dts") = nullptr, py::arg("max_tuple_depth") = 64, py::arg("source") = py::none(),
      "Report as a dict: input_digest, counts, findings, skipped_rules.");

  m.def("rules", [] { return json_loads(cli::render_rules_json()); });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run one command; returns (exit_code, stdout, stderr).");
}
