// Copyright 2026 The bingnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "bingnn/analyze.hpp"
#include "bingnn/binarize.hpp"
#include "bingnn/checkpoint.hpp"
#include "bingnn/cli.hpp"
#include "bingnn/config.hpp"
#include "bingnn/data.hpp"
#include "bingnn/model.hpp"
#include "bingnn/train.hpp"

namespace py = pybind11;
using namespace bingnn;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;

DenseTensor to_tensor(const FloatArray& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  const auto rows = static_cast<std::size_t>(a.shape(0)), cols = static_cast<std::size_t>(a.shape(1));
  return DenseTensor(rows, cols, std::vector<float>(a.data(), a.data() + rows * cols));
}

Split parse_split(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "val") return Split::kVal;
  if (name == "test") return Split::kTest;
  throw std::invalid_argument("unknown split '" + name + "'");
}

py::dict size_dict(const SizeReport& r) {
  py::dict d;
  d["param_count"] = r.param_count;
  d["full_params"] = r.full_params;
  d["binary_params"] = r.binary_params;
  d["total_bits"] = r.total_bits;
  d["kilobytes"] = r.kilobytes();
  return d;
}

py::bytes serialize(const BinGnnModel& m) {
  const auto b = serialize_checkpoint(m);
  return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

BinGnnModel deserialize(const py::bytes& data) {
  const std::string s = data;
  return deserialize_checkpoint(std::vector<std::uint8_t>(s.begin(), s.end()));
}

}  // namespace

PYBIND11_MODULE(_bingnn, m) {
  m.doc() = "Binary graph neural networks with meta aggregators";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<CheckpointError>(m, "CheckpointError", PyExc_ValueError);
  py::register_exception<NanLossError>(m, "NanLossError", PyExc_ArithmeticError);

  py::class_<Dataset>(m, "Dataset")
      .def("__len__", &Dataset::size)
      .def("to_gtxt", [](const Dataset& d) { return format_gtxt(d); })
      .def("save", [](const Dataset& d, const std::string& path) { write_gtxt(d, path); }, py::arg("path"))
      .def("split", [](const Dataset& d, const std::string& which, std::uint64_t seed) {
        return split_indices(d, parse_split(which), seed);
      }, py::arg("which"), py::arg("seed"))
      .def("__eq__", [](const Dataset& a, const Dataset& b) { return a == b; });

  m.def("parse_gtxt", [](const std::string& text) { return parse_gtxt(text); }, py::arg("text"));
  m.def("load_gtxt", &load_gtxt, py::arg("path"));
  m.def("gen_regression", &gen_regression, py::arg("seed"), py::arg("n_graphs"));
  m.def("gen_topology_pairs", [](std::size_t num_pairs, std::uint64_t seed, int max_degree, int lo, int hi) {
    TopologyPairOptions o;
    o.num_pairs = num_pairs;
    o.seed = seed;
    o.max_degree = max_degree;
    o.lo = lo;
    o.hi = hi;
    return gen_topology_pairs(o);
  }, py::arg("num_pairs"), py::arg("seed") = 0, py::arg("max_degree") = 4, py::arg("lo") = 1, py::arg("hi") = 4);

  m.def("normalize_config", [](const std::string& text) { return serialize_config(parse_config(text)); },
        py::arg("text"));

  py::class_<BinGnnModel>(m, "Model")
      .def(py::init([](const std::string& config, const Dataset* data) {
        ModelConfig c = parse_config(config);
        if (data != nullptr) c = resolve_dims(c, *data);
        return BinGnnModel(c);
      }), py::arg("config"), py::arg("data") = nullptr)
      .def_property_readonly("config", [](const BinGnnModel& mdl) { return serialize_config(mdl.config()); })
      .def("fit", [](BinGnnModel& mdl, const Dataset& d) {
        const auto tr = split_indices(d, Split::kTrain, mdl.config().seed);
        const auto va = split_indices(d, Split::kVal, mdl.config().seed);
        std::ostringstream log;
        FitOptions opts;
        opts.log = &log;
        FitResult r;
        {
          py::gil_scoped_release release;
          r = fit(mdl, d, tr, va, opts);
        }
        py::dict out;
        out["best_epoch"] = r.best_epoch;
        out["best_train"] = r.best_train;
        out["best_val"] = r.best_val;
        out["log"] = log.str();
        return out;
      }, py::arg("data"))
      .def("evaluate", [](BinGnnModel& mdl, const Dataset& d, const std::string& which) {
        const auto idx = split_indices(d, parse_split(which), mdl.config().seed);
        py::gil_scoped_release release;
        return evaluate(mdl, d, idx);
      }, py::arg("data"), py::arg("split") = "test")
      .def("inspect", [](const BinGnnModel& mdl) { return size_dict(mdl.inspect()); })
      .def("to_bytes", &serialize)
      .def_static("from_bytes", &deserialize, py::arg("data"))
      .def("save", [](const BinGnnModel& mdl, const std::string& path) { save_checkpoint(mdl, path); },
           py::arg("path"))
      .def_static("load", &load_checkpoint, py::arg("path"));

  m.def("xnor_matmul", [](const FloatArray& a, const FloatArray& b_t) {
    const Int32Matrix r = xnor_popcount_matmul(pack(to_tensor(a)), pack(to_tensor(b_t)));
    py::array_t<std::int32_t> out({r.rows, r.cols});
    std::copy(r.values.begin(), r.values.end(), out.mutable_data());
    return out;
  }, py::arg("a"), py::arg("b_t"), "a(m,k) times b_t(n,k) transposed, entries in {-1, +1}");

  m.def("ana_value", &ana_value, py::arg("multiset"), py::arg("beta"));
  m.def("collisions_csv", [](int max_size, int lo, int hi) {
    return format_report_csv(enumerate_collisions(max_size, lo, hi));
  }, py::arg("max_size"), py::arg("lo"), py::arg("hi"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return std::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run a bingnn subcommand; returns (exit_code, stdout, stderr)");
}
