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


#include "bplab/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace bplab {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return std::stod(s);
}

}  // namespace

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& value) {
  if (current_ > 0) out_ << ',';
  if (value.find_first_of(",\"\n") != std::string::npos) {
    out_ << '"';
    for (char c : value) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  } else {
    out_ << value;
  }
  ++current_;
  return *this;
}

CsvWriter& CsvWriter::cell(double value) { return cell(format_double(value)); }
CsvWriter& CsvWriter::cell(std::int64_t value) { return cell(std::to_string(value)); }
CsvWriter& CsvWriter::cell(std::uint64_t value) { return cell(std::to_string(value)); }

void CsvWriter::end_row() {
  if (current_ != columns_) {
    throw ArgumentError("CSV row has " + std::to_string(current_) + " cells, header has " +
                        std::to_string(columns_));
  }
  out_ << '\n';
  current_ = 0;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ArgumentError("CSV has no column '" + name + "'");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("empty CSV");
  table.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != table.header.size()) throw ArgumentError("ragged CSV row");
    table.rows.push_back(std::move(cells));
  }
  return table;
}

json params_to_json(const StoredParams& stored) {
  json j;
  j["layout"] = {{"n", stored.reg.n},
                 {"cost_offset", stored.reg.cost_offset},
                 {"n_cost", stored.reg.n_cost},
                 {"layers", stored.layers},
                 {"scheme", stored.scheme},
                 {"seed", stored.seed}};
  j["params"] = std::vector<double>(stored.values.data(),
                                    stored.values.data() + stored.values.size());
  return j;
}

StoredParams params_from_json(const json& j) {
  StoredParams s;
  const json& layout = j.at("layout");
  s.reg = {layout.at("n").get<int>(), layout.at("cost_offset").get<int>(),
           layout.at("n_cost").get<int>()};
  s.layers = layout.at("layers").get<int>();
  s.scheme = layout.value("scheme", std::string("values"));
  s.seed = layout.value("seed", std::uint64_t{0});
  const auto values = j.at("params").get<std::vector<double>>();
  s.values = Eigen::Map<const ParamVector>(values.data(), static_cast<Eigen::Index>(values.size()));
  const CircuitLayout check(s.reg, s.layers);
  if (check.num_params() != s.values.size()) {
    throw ConfigurationError("stored parameter count does not match its layout");
  }
  return s;
}

json dataset_to_json(const CompressorDataset& data) {
  json j;
  j["metadata"] = {{"n", data.n},
                   {"n_g", data.samples.size()},
                   {"seed", data.seed},
                   {"scale", data.scale},
                   {"distribution", data.distribution},
                   {"label", "mean z magnetization of the ground state"}};
  json samples = json::array();
  for (const auto& s : data.samples) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < s.input.size(); ++i) {
      amps.push_back({s.input(i).real(), s.input(i).imag()});
    }
    samples.push_back({{"label", s.label}, {"amplitudes", std::move(amps)}});
  }
  j["samples"] = std::move(samples);
  return j;
}

CompressorDataset dataset_from_json(const json& j) {
  CompressorDataset data;
  const json& meta = j.at("metadata");
  data.n = meta.at("n").get<int>();
  data.seed = meta.value("seed", std::uint64_t{0});
  data.scale = meta.value("scale", 1.0);
  data.distribution = meta.value("distribution", std::string(kCoefficientDistribution));
  for (const json& s : j.at("samples")) {
    const json& amps = s.at("amplitudes");
    StateVector state(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
      state(static_cast<Eigen::Index>(i)) = {amps[i].at(0).get<double>(), amps[i].at(1).get<double>()};
    }
    if (qubit_count(state) != data.n) throw ConfigurationError("dataset state size mismatch");
    data.samples.push_back({std::move(state), s.at("label").get<double>()});
  }
  if (data.samples.empty()) throw ConfigurationError("dataset has no samples");
  return data;
}

void write_train_csv(std::ostream& out, const TrainReport& report) {
  CsvWriter csv(out, {"epoch", "loss", "S", "mixing", "grad_norm"});
  for (const auto& r : report.epochs) {
    csv.cell(r.epoch).cell(r.loss).cell(r.entropy).cell(r.mixing).cell(r.grad_norm);
    csv.end_row();
  }
}

std::vector<EpochRecord> read_train_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  const std::size_t epoch = table.column("epoch");
  const std::size_t loss = table.column("loss");
  const std::size_t s = table.column("S");
  const std::size_t mixing = table.column("mixing");
  const std::size_t grad = table.column("grad_norm");
  std::vector<EpochRecord> out;
  for (const auto& row : table.rows) {
    out.push_back({std::stoi(row[epoch]), parse_double(row[loss]), parse_double(row[s]),
                   parse_double(row[mixing]), parse_double(row[grad])});
  }
  return out;
}

json train_config_to_json(const TrainConfig& config) {
  json j;
  j["optimizer"] = {{"algorithm", "amsgrad"},
                    {"learning_rate", config.optimizer.learning_rate},
                    {"beta1", config.optimizer.beta1},
                    {"beta2", config.optimizer.beta2},
                    {"epsilon", config.optimizer.epsilon},
                    {"bias_correction", false}};
  j["mode"] = to_string(config.mode);
  j["epochs"] = config.epochs;
  j["target_loss"] = config.target_loss ? json(*config.target_loss) : json(nullptr);
  j["grad_tolerance"] = config.grad_tolerance;
  j["seed"] = config.seed;
  const auto& reg = config.regularization;
  j["regularization"] = {
      {"lambda0", reg.lambda0},
      {"schedule", reg.schedule == RegularizationSchedule::Adaptive
                       ? "adaptive: lambda0*clamp(L/L_ref, floor, 1)"
                       : "constant"},
      {"adaptive_floor", reg.adaptive_floor},
      {"reference_loss", std::isnan(reg.reference_loss) ? json(nullptr) : json(reg.reference_loss)}};
  j["langevin"] = {{"lambda", config.langevin.lambda}, {"subset", config.langevin.subset}};
  return j;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigurationError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigurationError(path.string() + ": " + e.what());
  }
}

}  // namespace bplab
