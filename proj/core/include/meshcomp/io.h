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

// File formats. Every port, mode, layer and MZI index in a file is 1-based;
// the in-memory types are 0-based.

#ifndef MESHCOMP_IO_H_
#define MESHCOMP_IO_H_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "meshcomp/calibration.h"
#include "meshcomp/compiler.h"
#include "meshcomp/linalg.h"
#include "meshcomp/mesh.h"
#include "meshcomp/port_alloc.h"
#include "meshcomp/power.h"

namespace meshcomp {

using Json = nlohmann::json;

// Malformed or inconsistent file content.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json MatrixToJson(const ComplexMatrix& m);
ComplexMatrix MatrixFromJson(const Json& j);
UnitaryMatrix UnitaryFromJson(const Json& j,
                              double tolerance = kDefaultUnitaryTolerance);

// One row per matrix row: re_1,im_1,re_2,im_2,...
void WriteMatrixCsv(std::ostream& os, const ComplexMatrix& m);

Json ChipToJson(const ChipSpec& chip);
ChipSpec ChipFromJson(const Json& j);

Json ProgramToJson(const PhaseProgram& p);
PhaseProgram ProgramFromJson(const Json& j);

Json PowerToJson(const PowerReport& r);

Json AllocationToJson(const Allocation& a);
// p_in and q_out only.
std::pair<Permutation, Permutation> AllocationFromJson(const Json& j);

Json CalibrationToJson(const CalibrationResult& r);

// port,intensity rows.
void WriteIntensityCsv(std::ostream& os, const std::vector<double>& v);

// Throws FormatError with the path in the message.
Json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const std::filesystem::path& path, const Json& j);

// Shortest round-trip decimal.
std::string FormatDouble(double v);

}  // namespace meshcomp

#endif  // MESHCOMP_IO_H_
