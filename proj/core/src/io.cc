// Copyright 2026 The meshcomp Authors
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

#include "meshcomp/io.h"

#include <charconv>
#include <fstream>
#include <ostream>
#include <system_error>

namespace meshcomp {

namespace {

template <typename T>
T Get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("field \"") + key + "\": " + e.what());
  }
}

Json CalToJson(const PhaseShifterCal& c) {
  return {{"alpha", c.alpha}, {"beta", c.beta}};
}

PhaseShifterCal CalFromJson(const Json& j) {
  return {Get<double>(j, "alpha"), Get<double>(j, "beta")};
}

std::vector<int> ToOneBased(const Permutation& p) {
  std::vector<int> v = p.mapping();
  for (int& x : v) ++x;
  return v;
}

Permutation FromOneBased(std::vector<int> v) {
  for (int& x : v) --x;
  try {
    return Permutation(std::move(v));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

Json MatrixToJson(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ir = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ir.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"n", m.rows()}, {"re", re}, {"im", im}};
}

ComplexMatrix MatrixFromJson(const Json& j) {
  const int n = Get<int>(j, "n");
  const auto re = Get<std::vector<std::vector<double>>>(j, "re");
  const auto im = Get<std::vector<std::vector<double>>>(j, "im");
  if (n < 1 || static_cast<int>(re.size()) != n ||
      static_cast<int>(im.size()) != n) {
    throw FormatError("matrix needs n >= 1 rows in both re and im");
  }
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(re[i].size()) != n ||
        static_cast<int>(im[i].size()) != n) {
      throw FormatError("matrix row " + std::to_string(i + 1) +
                        " does not have n entries");
    }
    for (int k = 0; k < n; ++k) m(i, k) = Complex(re[i][k], im[i][k]);
  }
  try {
    CheckFinite(m);
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
  return m;
}

UnitaryMatrix UnitaryFromJson(const Json& j, double tolerance) {
  try {
    return UnitaryMatrix(MatrixFromJson(j), tolerance);
  } catch (const std::domain_error& e) {
    throw FormatError(e.what());
  }
}

void WriteMatrixCsv(std::ostream& os, const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (k > 0) os << ',';
      os << FormatDouble(m(i, k).real()) << ',' << FormatDouble(m(i, k).imag());
    }
    os << '\n';
  }
}

Json ChipToJson(const ChipSpec& chip) {
  Json mzis = Json::array();
  for (const MziUnit& u : chip.mzis()) {
    mzis.push_back({{"layer", u.layer + 1},
                    {"top_mode", u.top_mode + 1},
                    {"reflectivity", u.reflectivity},
                    {"internal", CalToJson(u.internal)},
                    {"external", CalToJson(u.external)}});
  }
  Json outs = Json::array();
  for (const PhaseShifterCal& c : chip.output_shifters()) {
    outs.push_back(CalToJson(c));
  }
  return {{"n", chip.n_modes()}, {"mzis", mzis}, {"output_shifters", outs}};
}

ChipSpec ChipFromJson(const Json& j) {
  const int n = Get<int>(j, "n");
  const Json mzis = Get<Json>(j, "mzis");
  const Json outs = Get<Json>(j, "output_shifters");
  if (!mzis.is_array() || !outs.is_array()) {
    throw FormatError("mzis and output_shifters must be arrays");
  }
  std::vector<MziUnit> units;
  for (const Json& m : mzis) {
    MziUnit u;
    u.layer = Get<int>(m, "layer") - 1;
    u.top_mode = Get<int>(m, "top_mode") - 1;
    u.reflectivity = Get<double>(m, "reflectivity");
    u.internal = CalFromJson(Get<Json>(m, "internal"));
    u.external = CalFromJson(Get<Json>(m, "external"));
    units.push_back(u);
  }
  std::vector<PhaseShifterCal> cals;
  for (const Json& o : outs) cals.push_back(CalFromJson(o));
  try {
    return ChipSpec(n, std::move(units), std::move(cals));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("chip: ") + e.what());
  }
}

Json ProgramToJson(const PhaseProgram& p) {
  Json settings = Json::array();
  for (const MziSetting& s : p.settings) {
    settings.push_back(
        {{"mzi", s.mzi + 1}, {"phi_i", s.phi_i}, {"phi_e", s.phi_e}});
  }
  return {{"n", p.n_modes},
          {"settings", settings},
          {"output_phases", p.output_phases}};
}

PhaseProgram ProgramFromJson(const Json& j) {
  PhaseProgram p;
  p.n_modes = Get<int>(j, "n");
  const Json settings = Get<Json>(j, "settings");
  if (!settings.is_array()) throw FormatError("settings must be an array");
  for (const Json& s : settings) {
    p.settings.push_back({Get<int>(s, "mzi") - 1, Get<double>(s, "phi_i"),
                          Get<double>(s, "phi_e")});
  }
  p.output_phases = Get<std::vector<double>>(j, "output_phases");
  try {
    p.Validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("program: ") + e.what());
  }
  return p;
}

Json PowerToJson(const PowerReport& r) {
  return {{"total", r.total}, {"per_shifter", r.per_shifter_v2}};
}

Json AllocationToJson(const Allocation& a) {
  return {{"p_in", ToOneBased(a.p_in)},
          {"q_out", ToOneBased(a.q_out)},
          {"objective", a.objective}};
}

std::pair<Permutation, Permutation> AllocationFromJson(const Json& j) {
  return {FromOneBased(Get<std::vector<int>>(j, "p_in")),
          FromOneBased(Get<std::vector<int>>(j, "q_out"))};
}

Json CalibrationToJson(const CalibrationResult& r) {
  Json j = {{"evaluations", r.evaluations},
            {"residual", r.residual},
            {"warning", r.warning}};
  if (r.per_mzi_theta) {
    j["per_mzi_theta"] = *r.per_mzi_theta;
    std::vector<double> refl;
    for (double t : *r.per_mzi_theta) refl.push_back(ReflectivityFromTheta(t));
    j["per_mzi_reflectivity"] = refl;
  }
  if (r.global_theta) {
    j["global_theta"] = *r.global_theta;
    j["global_reflectivity"] = ReflectivityFromTheta(*r.global_theta);
  }
  if (!r.trace.empty()) {
    Json t = Json::array();
    for (const auto& [x, f] : r.trace) t.push_back({x, f});
    j["trace"] = t;
  }
  return j;
}

void WriteIntensityCsv(std::ostream& os, const std::vector<double>& v) {
  os << "port,intensity\n";
  for (size_t k = 0; k < v.size(); ++k) {
    os << k + 1 << ',' << FormatDouble(v[k]) << '\n';
  }
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void WriteJsonFile(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw FormatError("write failed for " + path.string());
}

}  // namespace meshcomp
