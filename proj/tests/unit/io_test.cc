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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "meshcomp/io.h"

namespace meshcomp {
namespace {

TEST(MatrixJsonTest, RoundTrip) {
  const UnitaryMatrix u = HaarRandomUnitary(4, 2);
  const Json j = MatrixToJson(u.matrix());
  EXPECT_EQ(j["n"], 4);
  EXPECT_EQ(MatrixFromJson(Json::parse(j.dump())), u.matrix());
  EXPECT_EQ(UnitaryFromJson(j).matrix(), u.matrix());
}

TEST(MatrixJsonTest, Errors) {
  EXPECT_THROW(MatrixFromJson(Json::parse(R"({"n": 2, "re": [[1]], "im": [[0]]})")),
               FormatError);
  EXPECT_THROW(MatrixFromJson(Json::parse(R"({"n": 1})")), FormatError);
  EXPECT_THROW(
      UnitaryFromJson(Json::parse(R"({"n": 1, "re": [[2]], "im": [[0]]})")),
      FormatError);
}

TEST(MatrixCsvTest, InterleavedColumns) {
  ComplexMatrix m(2, 2);
  m << Complex(1, 2), Complex(3, 4), Complex(0.5, -1), Complex(0, 0);
  std::ostringstream os;
  WriteMatrixCsv(os, m);
  EXPECT_EQ(os.str(), "1,2,3,4\n0.5,-1,0,0\n");
}

TEST(ChipJsonTest, RoundTripIsExact) {
  const ChipSpec chip = SampleChip(5, {0.47, 0.005, 0.5, 2.0}, 11);
  const Json j = ChipToJson(chip);
  EXPECT_EQ(j["mzis"][0]["layer"], 1);
  EXPECT_EQ(j["mzis"][0]["top_mode"], 1);
  const ChipSpec back = ChipFromJson(Json::parse(j.dump()));
  EXPECT_EQ(back.reflectivities(), chip.reflectivities());
  for (int k = 0; k < chip.mzi_count(); ++k) {
    EXPECT_EQ(back.mzis()[k].internal.alpha, chip.mzis()[k].internal.alpha);
    EXPECT_EQ(back.mzis()[k].external.beta, chip.mzis()[k].external.beta);
  }
  EXPECT_EQ(ChipToJson(back).dump(), j.dump());
}

TEST(ChipJsonTest, RejectsBrokenTopology) {
  Json j = ChipToJson(ChipSpec::Ideal(3));
  j["mzis"][0]["top_mode"] = 2;
  EXPECT_THROW(ChipFromJson(j), FormatError);
  j.erase("mzis");
  EXPECT_THROW(ChipFromJson(j), FormatError);
}

TEST(ProgramJsonTest, RoundTrip) {
  const PhaseProgram p = DecomposeIdeal(HaarRandomUnitary(4, 1));
  const Json j = ProgramToJson(p);
  EXPECT_EQ(j["settings"][0]["mzi"], 1);
  const PhaseProgram back = ProgramFromJson(Json::parse(j.dump()));
  ASSERT_EQ(back.settings.size(), p.settings.size());
  for (size_t k = 0; k < p.settings.size(); ++k) {
    EXPECT_EQ(back.settings[k].mzi, p.settings[k].mzi);
    EXPECT_EQ(back.settings[k].phi_i, p.settings[k].phi_i);
    EXPECT_EQ(back.settings[k].phi_e, p.settings[k].phi_e);
  }
  EXPECT_EQ(back.output_phases, p.output_phases);
}

TEST(AllocationJsonTest, OneBasedPermutations) {
  const UnitaryMatrix u = HaarRandomUnitary(3, 1);
  const Allocation a{Permutation({2, 0, 1}), Permutation({0, 2, 1}), u, 1.5};
  const Json j = AllocationToJson(a);
  EXPECT_EQ(j["p_in"], (std::vector<int>{3, 1, 2}));
  EXPECT_EQ(j["objective"], 1.5);
  const auto [p, q] = AllocationFromJson(j);
  EXPECT_EQ(p, a.p_in);
  EXPECT_EQ(q, a.q_out);
}

TEST(PowerJsonTest, Fields) {
  const Json j = PowerToJson({{1.0, 2.5}, 3.5});
  EXPECT_EQ(j["total"], 3.5);
  EXPECT_EQ(j["per_shifter"].size(), 2u);
}

TEST(IntensityCsvTest, OneBasedPorts) {
  std::ostringstream os;
  WriteIntensityCsv(os, {0.25, 0.75});
  EXPECT_EQ(os.str(), "port,intensity\n1,0.25\n2,0.75\n");
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(std::stod(FormatDouble(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(ReadJsonFileTest, MissingAndCorrupt) {
  EXPECT_THROW(ReadJsonFile("/nonexistent/x.json"), FormatError);
  const auto path = std::filesystem::temp_directory_path() / "meshcomp_corrupt.json";
  { std::ofstream(path) << "{ not json"; }
  EXPECT_THROW(ReadJsonFile(path), FormatError);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace meshcomp
