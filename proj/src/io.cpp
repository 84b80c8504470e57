// Copyright 2026 The oscitool Authors.
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

#include "oscitool/io.hpp"

#include <fstream>
#include <sstream>

#include "oscitool/errors.hpp"

namespace osc {
namespace {

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw DomainError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DomainError(path + "." + key + ": missing field");
  return *it;
}

int read_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw DomainError(path + ": expected an integer");
  return j.get<int>();
}

double read_double(const Json& j, const std::string& path) {
  if (!j.is_number()) throw DomainError(path + ": expected a number");
  return j.get<double>();
}

Eigen::VectorXd read_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) throw DomainError(path + ": expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = read_double(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Json vector_json(const Eigen::VectorXd& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

}  // namespace

Json to_json(const HermiteCoeffs& c) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto a = c.alpha(i).entries();
    entries.push_back({{"alpha", std::vector<int>(a.begin(), a.end())}, {"re", c[i].real()}, {"im", c[i].imag()}});
  }
  return {{"dim", c.dim()}, {"trunc", c.trunc()}, {"entries", entries}};
}

HermiteCoeffs coeffs_from_json(const Json& j) {
  const int dim = read_int(field(j, "$", "dim"), "$.dim");
  const int trunc = read_int(field(j, "$", "trunc"), "$.trunc");
  if (dim < 1) throw DomainError("$.dim: must be >= 1");
  if (trunc < 0) throw DomainError("$.trunc: must be >= 0");
  HermiteCoeffs c(dim, trunc);
  const Json& entries = field(j, "$", "entries");
  if (!entries.is_array()) throw DomainError("$.entries: expected an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = "$.entries[" + std::to_string(i) + "]";
    const Json& e = entries[i];
    const Json& alpha = field(e, path, "alpha");
    if (!alpha.is_array() || static_cast<int>(alpha.size()) != dim) {
      throw DomainError(path + ".alpha: expected " + std::to_string(dim) + " nonnegative integers");
    }
    std::vector<int> a;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      int v = read_int(alpha[k], path + ".alpha[" + std::to_string(k) + "]");
      if (v < 0) throw DomainError(path + ".alpha[" + std::to_string(k) + "]: must be nonnegative");
      a.push_back(v);
    }
    MultiIndex m(a);
    if (m.order() > trunc) throw DomainError(path + ".alpha: order exceeds trunc");
    const double re = read_double(field(e, path, "re"), path + ".re");
    const double im = e.contains("im") ? read_double(e["im"], path + ".im") : 0.0;
    c.set(m, {re, im});
  }
  return c;
}

Json to_json(const GridFunction& f) {
  Json axes = Json::array();
  for (const auto& a : f.axes) axes.push_back({{"nodes", vector_json(a.nodes)}, {"weights", vector_json(a.weights)}});
  return {{"dim", f.dim()},
          {"axes", axes},
          {"re", vector_json(f.values.real())},
          {"im", vector_json(f.values.imag())}};
}

GridFunction grid_from_json(const Json& j) {
  GridFunction f;
  const Json& axes = field(j, "$", "axes");
  if (!axes.is_array() || axes.empty()) throw DomainError("$.axes: expected a nonempty array");
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const std::string path = "$.axes[" + std::to_string(k) + "]";
    f.axes.push_back({read_vector(field(axes[k], path, "nodes"), path + ".nodes"),
                      read_vector(field(axes[k], path, "weights"), path + ".weights")});
  }
  if (j.contains("dim") && read_int(j["dim"], "$.dim") != f.dim()) {
    throw DomainError("$.dim: does not match the number of axes");
  }
  Eigen::VectorXd re = read_vector(field(j, "$", "re"), "$.re");
  Eigen::VectorXd im = j.contains("im") ? read_vector(j["im"], "$.im") : Eigen::VectorXd::Zero(re.size());
  if (im.size() != re.size()) throw DomainError("$.im: length differs from $.re");
  f.values = re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
  try {
    f.validate();
  } catch (const DomainError& e) {
    throw DomainError(std::string("$: ") + e.what());
  }
  return f;
}

Json to_json(const StftMatrix& s) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < s.values.rows(); ++r) {
    Eigen::VectorXd rr = s.values.row(r).real().transpose();
    Eigen::VectorXd ii = s.values.row(r).imag().transpose();
    re.push_back(vector_json(rr));
    im.push_back(vector_json(ii));
  }
  return {{"dim", s.lattice.dim},
          {"x_nodes", vector_json(s.lattice.nodes)},
          {"xi_nodes", vector_json(s.lattice.nodes)},
          {"window", s.window},
          {"re", re},
          {"im", im}};
}

StftMatrix stft_from_json(const Json& j) {
  StftMatrix s;
  s.lattice.dim = read_int(field(j, "$", "dim"), "$.dim");
  s.lattice.nodes = read_vector(field(j, "$", "x_nodes"), "$.x_nodes");
  Eigen::VectorXd xi = read_vector(field(j, "$", "xi_nodes"), "$.xi_nodes");
  if (xi.size() != s.lattice.nodes.size() || (xi - s.lattice.nodes).cwiseAbs().maxCoeff() > 0.0) {
    throw DomainError("$.xi_nodes: must equal $.x_nodes");
  }
  if (j.contains("window")) s.window = j["window"].get<std::string>();
  const Json& re = field(j, "$", "re");
  const Json& im = field(j, "$", "im");
  const Eigen::Index side = s.lattice.side();
  if (!re.is_array() || static_cast<Eigen::Index>(re.size()) != side) throw DomainError("$.re: wrong row count");
  if (!im.is_array() || static_cast<Eigen::Index>(im.size()) != side) throw DomainError("$.im: wrong row count");
  s.values.resize(side, side);
  for (Eigen::Index r = 0; r < side; ++r) {
    const std::string row = "[" + std::to_string(r) + "]";
    Eigen::VectorXd a = read_vector(re[static_cast<std::size_t>(r)], "$.re" + row);
    Eigen::VectorXd b = read_vector(im[static_cast<std::size_t>(r)], "$.im" + row);
    if (a.size() != side || b.size() != side) throw DomainError("$.re" + row + ": wrong column count");
    s.values.row(r) = (a.cast<Complex>() + Complex(0.0, 1.0) * b.cast<Complex>()).transpose();
  }
  return s;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace osc
