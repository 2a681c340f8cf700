// Copyright 2026 The bplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef BPLAB_SERIALIZATION_HPP
#define BPLAB_SERIALIZATION_HPP

#include "bplab/circuit.hpp"
#include "bplab/groundstates.hpp"
#include "bplab/training.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace bplab {

using json = nlohmann::json;

/// %.17g, with "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double value);

/// Comma-separated writer; one header row, then data rows.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& cell(double value);
  CsvWriter& cell(std::int64_t value);
  CsvWriter& cell(std::uint64_t value);
  CsvWriter& cell(int value) { return cell(static_cast<std::int64_t>(value)); }
  CsvWriter& cell(const std::string& value);
  void end_row();

 private:
  std::ostream& out_;
  std::size_t columns_;
  std::size_t current_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);

/// Flat parameter array plus the layout descriptor it belongs to.
struct StoredParams {
  RegisterSpec reg;
  int layers = 0;
  std::string scheme;
  std::uint64_t seed = 0;
  ParamVector values;
};

json params_to_json(const StoredParams& stored);
StoredParams params_from_json(const json& j);

json dataset_to_json(const CompressorDataset& data);
CompressorDataset dataset_from_json(const json& j);

void write_train_csv(std::ostream& out, const TrainReport& report);
std::vector<EpochRecord> read_train_csv(std::istream& in);
json train_config_to_json(const TrainConfig& config);

void write_json_file(const std::filesystem::path& path, const json& j);
json read_json_file(const std::filesystem::path& path);

}  // namespace bplab

#endif  // BPLAB_SERIALIZATION_HPP
