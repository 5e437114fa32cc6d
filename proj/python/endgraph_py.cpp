#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "endgraph/api.hpp"
#include "endgraph/classify.hpp"
#include "endgraph/parser.hpp"

namespace py = pybind11;
using namespace endgraph;

namespace {

py::object jsonToPy(const nlohmann::json& j) {
  namespace nl = nlohmann;
  switch (j.type()) {
    case nl::json::value_t::null: return py::none();
    case nl::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nl::json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case nl::json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case nl::json::value_t::number_float: return py::float_(j.get<double>());
    case nl::json::value_t::string: return py::str(j.get<std::string>());
    case nl::json::value_t::array: {
      py::list out;
      for (const auto& e : j) out.append(jsonToPy(e));
      return out;
    }
    case nl::json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = jsonToPy(v);
      return out;
    }
    default: return py::none();
  }
}

py::dict runCommand(const std::string& command, const std::vector<std::string>& args,
                    bool trace) {
  return jsonToPy(api::run(command, args, trace));
}

}  // namespace

PYBIND11_MODULE(_endgraph, m) {
  m.doc() = "end-space calculus for locally finite graphs given as signatures";
  m.attr("__version__") = "0.1.0";

  m.def("run", &runCommand, py::arg("command"), py::arg("args"),
        py::arg("trace") = false,
        "Run a query command; returns the same document as the CLI --json output");

  m.def("parse", [](const std::string& text) { return parseSignature(text).str(); },
        "Parse a signature expression and return its canonical text");

  m.def("normalize",
        [](const std::string& text) { return normalizeSig(parseSignature(text)).str(); },
        "Canonical normal form of a signature expression");

  m.def("stable",
        [](const std::string& text) {
          return std::string(stabilityName(isStable(parseSignature(text)).value));
        },
        "Stability verdict: Stable, Unstable or Unknown");

  m.def("self_similar",
        [](const std::string& text) {
          return std::string(triName(isSelfSimilar(parseSignature(text)).answer));
        });

  m.def("classify_maps",
        [](const std::string& text) {
          return jsonToPy(api::run("classify-maps", {text}));
        },
        "Dense conjugacy class verdict for the mapping class group");

  m.def("classify_homeo",
        [](const std::string& text) {
          return jsonToPy(api::run("classify-homeo", {text}));
        },
        "Dense conjugacy class verdict for the end-space homeomorphism group");

  m.def("isomorphic",
        [](const std::string& a, const std::string& b) {
          return std::string(triName(isomorphic(parseSignature(a), parseSignature(b)).answer));
        });

  m.def("leq",
        [](const std::string& a, const std::string& b) {
          return std::string(triName(leq(parseSignature(a), parseSignature(b))));
        },
        "Local structure order: does an end of type a occur in b?");

  py::register_exception<ParseError>(m, "SignatureParseError");
}
