#include "dseq/cli.hpp"
#include "dseq/convergence.hpp"
#include "dseq/diffops.hpp"
#include "dseq/summation.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace dseq;
using E = ExactComplex;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::dict run_result(const cli::RunResult& r) {
  py::dict out;
  out["exit_code"] = r.exit_code;
  out["report"] = r.report.to_jsonl();
  return out;
}

// Exact sequences only; float mode is reached through run_config.
class Sequence {
 public:
  explicit Sequence(DoubleSeq<E> x) : x_(std::move(x)) {}

  static Sequence family(const std::map<std::string, std::string>& fields, std::size_t rows,
                         std::optional<std::size_t> cols) {
    std::ostringstream ini;
    ini << "[sequence.x]\n";
    for (const auto& [k, v] : fields) ini << k << " = " << v << '\n';
    std::istringstream in(ini.str());
    auto cfg = cli::JobConfig::parse(in);
    const auto& def = cfg.sequences.at(0);
    return Sequence(make_family<E>(def.family, rows, cols.value_or(rows)));
  }

  static Sequence from_rows(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty() || rows[0].empty()) throw InvalidArgument("grid needs at least one entry");
    std::vector<E> data;
    for (const auto& r : rows) {
      if (r.size() != rows[0].size()) throw DimensionMismatch("rows have different lengths");
      for (const auto& v : r) data.push_back(parse_exact_complex(v));
    }
    return Sequence(DoubleSeq<E>(rows.size(), rows[0].size(), std::move(data)));
  }

  std::pair<std::size_t, std::size_t> shape() const { return {x_.rows(), x_.cols()}; }

  std::vector<std::vector<std::string>> values() const {
    std::vector<std::vector<std::string>> out(x_.rows());
    for (std::size_t k = 0; k < x_.rows(); ++k) {
      for (std::size_t l = 0; l < x_.cols(); ++l) out[k].push_back(ScalarTraits<E>::format(x_(k, l)));
    }
    return out;
  }

  Sequence forward_difference() const { return Sequence(dseq::forward_difference(x_)); }
  Sequence inverse_difference() const {
    return Sequence(dseq::inverse_difference(x_, BoundaryData<E>::zero(x_.rows() + 1, x_.cols() + 1)));
  }
  Sequence project() const { return Sequence(project_interior(x_)); }
  Sequence partial_sums() const { return Sequence(partial_sum_grid(x_)); }

  py::object membership(const std::string& space, double q) const {
    return to_python(cli::to_json(space_membership(x_, SpaceSpec{parse_space(space), q})));
  }
  py::object delta_membership(const std::string& space, double q) const {
    return to_python(cli::to_json(delta_space_membership(x_, SpaceSpec{parse_space(space), q})));
  }
  std::string delta_norm() const { return format_real(dseq::delta_norm(x_).value); }

 private:
  DoubleSeq<E> x_;
};

}  // namespace

PYBIND11_MODULE(_dseq, m) {
  m.doc() = "Double sequence toolkit";

  py::register_exception<Error>(m, "DseqError", PyExc_ValueError);

  py::class_<Sequence>(m, "Sequence")
      .def_static("family", &Sequence::family, py::arg("fields"), py::arg("rows") = 16, py::arg("cols") = py::none())
      .def_static("from_rows", &Sequence::from_rows, py::arg("rows"))
      .def_property_readonly("shape", &Sequence::shape)
      .def("values", &Sequence::values)
      .def("forward_difference", &Sequence::forward_difference)
      .def("inverse_difference", &Sequence::inverse_difference)
      .def("project", &Sequence::project)
      .def("partial_sums", &Sequence::partial_sums)
      .def("membership", &Sequence::membership, py::arg("space"), py::arg("q") = 1.0)
      .def("delta_membership", &Sequence::delta_membership, py::arg("space"), py::arg("q") = 1.0)
      .def("delta_norm", &Sequence::delta_norm);

  m.def("verify_suites", &cli::verify_suites);
  m.def(
      "verify",
      [](const std::string& suite, std::size_t size, std::uint64_t seed, const std::string& mode, unsigned threads) {
        return run_result(cli::verify(suite, size, seed, parse_mode(mode), threads));
      },
      py::arg("suite") = "all", py::arg("size") = 8, py::arg("seed") = 1, py::arg("mode") = "exact",
      py::arg("threads") = 1);
  m.def(
      "run_config",
      [](const std::string& text) {
        std::istringstream in(text);
        return run_result(cli::run(cli::JobConfig::parse(in)));
      },
      py::arg("text"));
}
