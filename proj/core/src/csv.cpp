#include "qda/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qda {

namespace {
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& path) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("malformed CSV (bad number) in " + path);
  }
  if (pos != s.size()) throw std::runtime_error("malformed CSV (bad number) in " + path);
  return v;
}
}  // namespace

void write_dataset_csv(const std::string& path, const Dataset& data) {
  data.validate();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  for (Eigen::Index d = 0; d < data.dim(); ++d) f << "f" << d << ",";
  f << "label\n";
  for (Eigen::Index j = 0; j < data.count(); ++j) {
    for (Eigen::Index d = 0; d < data.dim(); ++d)
      f << format_double(data.features(d, j)) << ",";
    if (data.labels) f << (*data.labels)[j];
    f << "\n";
  }
  if (!f) throw std::runtime_error("write failed for " + path);
}

void write_truth_csv(const std::string& path, const Eigen::VectorXi& labels) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "index,label\n";
  for (Eigen::Index j = 0; j < labels.size(); ++j) f << j << "," << labels[j] << "\n";
  if (!f) throw std::runtime_error("write failed for " + path);
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);

  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("malformed CSV (empty file) in " + path);
  const auto header = split_fields(line);
  if (header.size() < 2 || header.back() != "label")
    throw std::runtime_error("malformed CSV (bad header) in " + path);
  const Eigen::Index dim = static_cast<Eigen::Index>(header.size()) - 1;
  for (Eigen::Index d = 0; d < dim; ++d)
    if (header[d] != "f" + std::to_string(d))
      throw std::runtime_error("malformed CSV (bad header) in " + path);

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  bool any_label = false, all_labels = true;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (static_cast<Eigen::Index>(fields.size()) != dim + 1)
      throw std::runtime_error("malformed CSV (field count) in " + path);
    std::vector<double> row(dim);
    for (Eigen::Index d = 0; d < dim; ++d) row[d] = parse_double(fields[d], path);
    rows.push_back(std::move(row));
    if (fields.back().empty()) {
      all_labels = false;
      labels.push_back(-1);
    } else {
      const double lv = parse_double(fields.back(), path);
      if (lv != 0.0 && lv != 1.0)
        throw std::runtime_error("malformed CSV (label not 0/1) in " + path);
      any_label = true;
      labels.push_back(static_cast<int>(lv));
    }
  }
  if (rows.size() < 2) throw std::runtime_error("malformed CSV (needs >= 2 rows) in " + path);
  if (any_label && !all_labels)
    throw std::runtime_error("malformed CSV (mixed labeled/unlabeled rows) in " + path);

  Dataset data;
  data.features.resize(dim, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (Eigen::Index d = 0; d < dim; ++d)
      data.features(d, static_cast<Eigen::Index>(j)) = rows[j][d];
  if (any_label) {
    Eigen::VectorXi y(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t j = 0; j < labels.size(); ++j) y[static_cast<Eigen::Index>(j)] = labels[j];
    data.labels = y;
    data.tag = DomainTag::source;
  } else {
    data.tag = DomainTag::target;
  }
  data.validate();
  return data;
}

Eigen::VectorXi read_truth_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(f, line) || split_fields(line) != std::vector<std::string>{"index", "label"})
    throw std::runtime_error("malformed CSV (bad header) in " + path);
  std::vector<int> labels;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw std::runtime_error("malformed CSV (field count) in " + path);
    const double idx = parse_double(fields[0], path);
    if (idx != double(labels.size()))
      throw std::runtime_error("malformed CSV (index gap) in " + path);
    const double lv = parse_double(fields[1], path);
    if (lv != 0.0 && lv != 1.0) throw std::runtime_error("malformed CSV (label not 0/1) in " + path);
    labels.push_back(static_cast<int>(lv));
  }
  Eigen::VectorXi y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t j = 0; j < labels.size(); ++j) y[static_cast<Eigen::Index>(j)] = labels[j];
  return y;
}

}  // namespace qda
